"""Non-trivial d-wise intersecting families of k-sets.

Families are lists of 1-based sorted member lists over the ground set [n].
Report-producing calls return parsed JSON.
"""

import json

from ._dwise import (
    Error,
    ParseError,
    PreconditionError,
    canonical_form,
    closed_size,
    common_intersection,
    core_degree,
    generate,
    is_d_wise_intersecting,
    is_isomorphic,
    large_core_sets,
    threshold_n0,
)
from . import _dwise

__all__ = [
    "Error",
    "ParseError",
    "PreconditionError",
    "canonical_form",
    "closed_size",
    "common_intersection",
    "conjecture_probe",
    "core_degree",
    "generate",
    "is_d_wise_intersecting",
    "is_isomorphic",
    "large_core_sets",
    "run_lemma_suite",
    "search_max",
    "structure_bound_check",
    "threshold_n0",
    "verify_small_cases",
]


def search_max(n, k, d, *, max_nodes=100_000_000, max_seconds=300.0, threads=1,
               symmetry_breaking=True, include_elapsed=True):
    return json.loads(_dwise.search_max_json(n, k, d, max_nodes, max_seconds, threads,
                                             symmetry_breaking, include_elapsed))


def run_lemma_suite(n, k, sets, d, tau):
    return json.loads(_dwise.run_lemma_suite_json(n, k, sets, d, tau))


def structure_bound_check(n, k, sets, d):
    return json.loads(_dwise.structure_bound_check_json(n, k, sets, d))


def verify_small_cases(n, k, d):
    return json.loads(_dwise.verify_small_cases_json(n, k, d))


def conjecture_probe(n, k, d):
    return json.loads(_dwise.conjecture_probe_json(n, k, d))
