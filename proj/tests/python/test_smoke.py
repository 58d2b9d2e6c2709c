import json
import os
import subprocess

import pytest

BIN = os.environ.get("DWISE_BIN")


def run_cli(*args, stdin=None):
    if not BIN:
        pytest.skip("DWISE_BIN not set")
    return subprocess.run([BIN, *args], input=stdin, capture_output=True, text=True, check=False)


def test_cli_gen_and_check():
    gen = run_cli("gen", "--kind", "A", "--n", "7", "--k", "3", "--d", "2")
    assert gen.returncode == 0
    assert gen.stdout.splitlines()[0] == "n=7 k=3"
    assert len(gen.stdout.splitlines()) == 1 + 13
    chk = run_cli("check", "--d", "2", stdin=gen.stdout)
    assert "non-trivial yes" in chk.stdout


def test_cli_search_json():
    out = run_cli("search", "--n", "7", "--k", "3", "--d", "2", "--json")
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["max_size"] == 13
    assert sorted(c["classification"] for c in report["iso_classes"]) == ["A", "H"]


def test_cli_parse_error_exit_code():
    out = run_cli("check", "--d", "2", stdin="n=4 k=2\n1,2\n1,5\n")
    assert out.returncode == 64
    assert "line 3" in out.stderr


dwise = pytest.importorskip("dwise")


def test_constructions():
    h = dwise.generate("H", 7, 3, 2)
    assert len(h) == dwise.closed_size("H", 7, 3, 2) == 13
    assert dwise.is_d_wise_intersecting(7, 3, h, 2)
    assert dwise.common_intersection(7, 3, h) == []


def test_search_and_canonical():
    report = dwise.search_max(5, 3, 3, include_elapsed=False)
    assert report["max_size"] == 4 and report["exhausted"]
    k4 = dwise.generate("K", 5, 3, 3)
    found = report["iso_classes"][0]["sets"]
    assert dwise.is_isomorphic(5, 3, k4, found)
    assert dwise.canonical_form(5, 3, k4) == dwise.canonical_form(5, 3, found)


def test_core_degree_and_suite():
    h = dwise.generate("H", 12, 4, 2)
    assert dwise.core_degree(12, 4, h, [1, 6]) == 4
    reports = {r["check_id"]: r for r in dwise.run_lemma_suite(12, 4, h, 2, 4)}
    assert reports["large_core_meets_all"]["status"] == "boundary-report"
    assert len(reports["large_core_meets_all"]["witnesses"]) == 7


def test_precondition_error():
    with pytest.raises(dwise.PreconditionError):
        dwise.run_lemma_suite(5, 2, [[1, 2], [1, 3]], 2, 2)
