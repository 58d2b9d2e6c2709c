#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwise/family.hpp"

namespace dwise {

/// Encoding of a family that is identical for exactly the families
/// obtained from each other by relabeling the ground set.
struct CanonicalForm {
  std::vector<std::uint8_t> encoding;

  std::string hex() const;
  bool operator==(const CanonicalForm&) const = default;
  auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
  CanonicalForm form;
  /// 0-based: label[e] is the new name of element e.
  std::vector<int> label;
  /// The family relabeled by `label`.
  Family relabeled;
};

/// Individualization-refinement over the ground set with automorphism
/// pruning; the least encoding among the leaves wins. Requires n <= 64.
CanonicalLabeling canonical_labeling(const Family& f);
CanonicalForm canonical_form(const Family& f);

bool is_isomorphic(const Family& a, const Family& b);

/// Applies a 0-based element map.
Family relabel(const Family& f, const std::vector<int>& perm);

/// 0-based map sending every member of `small` into `big`, completed to a
/// permutation of the ground set, or nullopt. Both families must share n
/// and k. `max_nodes` bounds the backtracking; overrun throws Error.
std::optional<std::vector<int>> find_embedding(const Family& small, const Family& big, std::uint64_t max_nodes = 50'000'000);

/// Structural embeddings into the constructions on the same ground set.
/// Each returns a 0-based permutation π with π(F) ⊆ construction, found by
/// locating the defining point sets ([d-1] and [k+1] for H, [d+1] for A,
/// [d-1] and [d, k] for B) inside F.
std::optional<std::vector<int>> embed_into_h(const Family& f, int d);
std::optional<std::vector<int>> embed_into_a(const Family& f, int d);
std::optional<std::vector<int>> embed_into_b(const Family& f, int d);

/// "A", "H" or "B" when F is isomorphic to that construction (tested in that
/// order), "other" otherwise. Constructions undefined for (n, k, d) are skipped.
std::string classify_extremal(const Family& f, int d);

}  // namespace dwise
