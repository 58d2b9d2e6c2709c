#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dwise/family.hpp"

namespace dwise {

/// A sunflower: edges core ∪ petal_i with pairwise disjoint petals.
struct DeltaSystem {
  ElementSet core;
  std::vector<ElementSet> petals;

  std::size_t size() const { return petals.size(); }
  std::vector<ElementSet> edges() const;
  /// Pairwise edge intersections all equal the core, and every edge has k elements.
  bool is_valid(int k) const;
};

/// Largest family of pairwise disjoint members of `sets`, by exact
/// branch and bound. Stops as soon as `cap` members are found.
std::vector<ElementSet> max_disjoint_subfamily(const std::vector<ElementSet>& sets, std::optional<int> cap = std::nullopt);

/// Core degree of X in F: the most edges of a Delta system inside F with
/// core exactly X, i.e. the matching number of the link of X. With a cap
/// the result is min(value, cap). Throws PreconditionError when |X| > k.
int core_degree(const Family& f, const ElementSet& x, std::optional<int> cap = std::nullopt);

/// A Delta system realizing core_degree(f, x, cap).
DeltaSystem max_delta_system(const Family& f, const ElementSet& x, std::optional<int> cap = std::nullopt);

/// d-sets whose core degree reaches a threshold.
struct SdSet {
  int d = 0;
  int tau = 0;
  Family members;  ///< d-uniform, lexicographic
};

/// All d-sets D with core_degree(F, D) >= tau. Requires d <= k and tau >= 1.
/// Only d-sets lying in at least tau members are examined.
SdSet large_core_sets(const Family& f, int d, int tau, unsigned threads = 1);

enum class SdShape { StarType, CompleteType, Both, NotPairwiseIntersecting, Neither };

std::string_view to_string(SdShape shape);

/// Which of the two (d-1)-intersecting shapes a family of d-sets fits in:
///   star:     subfamily of {D ∈ C([k+1], d) : [d-1] ⊂ D} after relabeling
///   complete: subfamily of K_{d+1}^{(d)} after relabeling
/// `Neither` is returned for a (d-1)-intersecting family that fits no shape
/// (only possible when the family reaches beyond k+1 points).
struct SdClassification {
  SdShape shape = SdShape::Neither;
  std::optional<ElementSet> kernel;      ///< star: the common (d-1)-set
  std::optional<ElementSet> window;      ///< star: kernel plus the petal points, within k+1 points
  std::optional<ElementSet> vertex_set;  ///< complete: the d+1 points
  /// 1-based relabeling: relabel[e-1] is the image of element e, 0 when unused.
  /// Star shape maps the kernel to [d-1] and the rest onward from d; the
  /// complete shape maps the vertex set to [d+1]. Star wins when both fit.
  std::vector<int> relabel;
  std::optional<std::pair<ElementSet, ElementSet>> witness;  ///< a pair meeting in fewer than d-1 points
};

/// Throws PreconditionError when s is empty or not d-uniform.
SdClassification classify_intersecting_dsets(const Family& s, int k, int d);

}  // namespace dwise
