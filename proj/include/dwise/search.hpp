#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "dwise/canonical.hpp"
#include "dwise/family.hpp"

namespace dwise {

struct SearchOptions {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 300.0;
  /// Worker count; the DWISE_THREADS environment variable overrides it.
  unsigned threads = 1;
  /// Fix the first member to [k] and the second to an orbit representative
  /// under the stabilizer of [k].
  bool symmetry_breaking = true;
  /// Start the incumbent at the largest valid construction size.
  bool seed_with_constructions = true;
};

struct IsoClass {
  Family family;         ///< a member of the class, relabeled canonically
  CanonicalForm form;
  std::string classification;  ///< "H", "A", "B" or "other"
};

struct SearchReport {
  Params params;
  std::size_t max_size = 0;
  std::vector<IsoClass> iso_classes;  ///< sorted by canonical form
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds elapsed{0};
  bool exhausted = false;

  /// {"params":{...},"max_size":..,"iso_classes":[{"classification":..,"sets":[[..]]}],
  ///  "nodes":..,"elapsed_ms":..,"exhausted":..}
  std::string to_json(bool include_elapsed = true) const;
};

/// Exact maximum non-trivial d-wise intersecting family in C([n], k), with
/// every extremal family up to isomorphism. Requires 1 <= k <= n <= 64,
/// d >= 2 and C(n, k) <= 1024. A budget overrun yields a valid lower bound
/// with exhausted = false.
SearchReport search_max(int n, int k, int d, const SearchOptions& options = {});

/// Adds k-sets in lexicographic order whenever the d-wise property survives.
/// Throws PreconditionError when F is not d-wise intersecting.
Family saturate(const Family& f, int d);

/// Effective worker count after applying DWISE_THREADS.
unsigned resolve_threads(unsigned requested);

}  // namespace dwise
