#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dwise/element_set.hpp"
#include "dwise/error.hpp"

namespace dwise {

/// Problem parameters: ground set [n], uniformity k, intersection arity d.
struct Params {
  int n = 0;
  int k = 0;
  int d = 2;

  /// Throws PreconditionError unless d >= 2, k >= 1 and n >= k.
  void validate() const;
};

/// A finite collection of distinct k-subsets of the ground set.
///
/// Members are kept in lexicographic order of their element lists, so two
/// families with the same members compare equal and iterate identically.
class Family {
 public:
  Family() = default;
  Family(int n, int k) : n_(n), k_(k) { check_shape(n, k); }

  /// Validates and normalizes. Throws PreconditionError on duplicates,
  /// wrong cardinality, or out-of-range elements.
  static Family from_sets(int n, int k, std::vector<ElementSet> sets);
  /// 1-based element lists, as they appear in files.
  static Family from_lists(int n, int k, const std::vector<std::vector<int>>& lists);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const std::vector<ElementSet>& sets() const { return sets_; }
  const ElementSet& operator[](std::size_t i) const { return sets_[i]; }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }

  bool contains(const ElementSet& s) const;
  /// Union of all members.
  ElementSet support() const;
  /// Members at the given indices.
  Family subfamily(const std::vector<std::size_t>& indices) const;

  /// 1-based element lists in canonical order.
  std::vector<std::vector<int>> to_lists() const;

  bool operator==(const Family&) const = default;

 private:
  static void check_shape(int n, int k);

  int n_ = 0;
  int k_ = 0;
  std::vector<ElementSet> sets_;
};

/// 1-based list of a set's elements.
std::vector<int> to_list(const ElementSet& s);
/// From a 1-based list; throws PreconditionError when an element is outside [1, n].
ElementSet from_list(const std::vector<int>& list, int n);
/// "{1,2,3}"
std::string format_set(const ElementSet& s);

/// True iff every subfamily of at most d members has a common element.
/// Families smaller than d are therefore judged on all of their members.
bool is_d_wise_intersecting(const Family& f, int d);

/// Intersection of all members; the whole ground set for the empty family.
ElementSet common_intersection(const Family& f);

inline bool is_non_trivial(const Family& f) { return !f.empty() && common_intersection(f).empty(); }

struct MinIntersection {
  int size = 0;
  /// Indices into the family, ascending; the lexicographically first minimizer.
  std::vector<std::size_t> witness;
};

/// Minimum common-intersection size over all m-member subfamilies.
/// Throws PreconditionError when m < 2 or m > |F|.
MinIntersection min_m_wise_intersection(const Family& f, int m);

/// {E \ X : X ⊆ E ∈ F} as a (k-|X|)-uniform family on the same ground set.
Family link(const Family& f, const ElementSet& x);

struct MinDegree {
  int element = 0;  ///< 1-based
  int degree = 0;
};

/// Element of [n] lying in the fewest members (smallest on ties).
/// Throws PreconditionError on the empty family.
MinDegree min_degree(const Family& f);

/// Degree of every element, indexed 0-based.
std::vector<int> degrees(const Family& f);

/// For a fixed set A, groups members by their trace E ∩ A and returns the
/// class sizes keyed by the trace.
std::map<std::vector<int>, std::size_t> trace_classes(const Family& f, const ElementSet& a);

/// Visits every k-subset of {0, ..., n-1} in lexicographic order.
template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    ElementSet s;
    for (int e : idx) s.insert(e);
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Exact binomial coefficient; 0 outside 0 <= r <= m. Throws Error on
/// int64 overflow.
std::int64_t binomial(std::int64_t m, std::int64_t r);

}  // namespace dwise
