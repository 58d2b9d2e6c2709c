#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwise/family.hpp"

namespace dwise {

/// Subset of the block indices [1, k], bit i-1 for block i.
using BlockSet = std::uint32_t;

/// k pairwise disjoint nonempty blocks of the ground set, indexed 1..k.
class Partition {
 public:
  Partition() = default;
  /// Throws PreconditionError when blocks overlap or one is empty.
  explicit Partition(int n, std::vector<ElementSet> blocks);

  int k() const { return static_cast<int>(blocks_.size()); }
  const std::vector<ElementSet>& blocks() const { return blocks_; }
  /// 1-based block index of a 0-based element, 0 when unassigned.
  int block_of(int element) const { return owner_[static_cast<std::size_t>(element)]; }
  /// Block indices met by a set.
  BlockSet project(const ElementSet& s) const;
  /// Exactly one element in every block.
  bool is_transversal(const ElementSet& s) const;

  /// "1|2,3,4|5,6,7", 1-based.
  static Partition parse(int n, const std::string& spec);
  std::string to_string() const;

 private:
  std::vector<ElementSet> blocks_;
  std::vector<int> owner_;
};

/// A set of subsets of [k], kept sorted and distinct.
class IntersectionPattern {
 public:
  IntersectionPattern() = default;
  explicit IntersectionPattern(std::vector<BlockSet> members);

  const std::vector<BlockSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(BlockSet b) const;

  /// X, Y ∈ J implies X ∩ Y ∈ J.
  bool is_intersection_closed() const;

  /// "1;1,2;1,3" with "{}" for the empty block set; 1-based.
  static IntersectionPattern parse(const std::string& spec);
  std::string to_string() const;

  bool operator==(const IntersectionPattern&) const = default;
  auto operator<=>(const IntersectionPattern&) const = default;

 private:
  std::vector<BlockSet> members_;
};

std::vector<int> block_list(BlockSet b);

/// {proj(f ∩ e) : f ∈ H, f ≠ e}. The edge's own trace is left out.
/// Throws PreconditionError naming the edge and block when some member of H
/// is not a transversal of P, or when e is not in H.
IntersectionPattern intersection_pattern(const Family& h, const Partition& p, const ElementSet& e);

/// Smallest |e| over subsets e of [k] contained in no member of J; k+1 if
/// there is none.
int rank(const IntersectionPattern& j, int k);

struct HomogeneityReport {
  bool ok = true;
  std::optional<ElementSet> bad_edge;   ///< pattern differs from J
  std::optional<ElementSet> bad_trace;  ///< trace with core degree below s
  int trace_degree = 0;
  std::string message;
};

/// Every edge has pattern J and every trace f ∩ e (f ≠ e) has core degree >= s.
HomogeneityReport check_homogeneous(const Family& h, const Partition& p, const IntersectionPattern& j, int s);

struct Homogenized {
  Family family;
  Partition partition;
  IntersectionPattern pattern;
  int level = 0;  ///< the s' the output is homogeneous at, at most the requested s
};

/// Greedy desk-scale homogenizer: builds a partition from the first edge,
/// keeps the transversal edges, then repeatedly keeps the largest bucket of
/// edges sharing a pattern until every edge agrees.
Homogenized greedy_homogenize(const Family& h, int s);

struct KeyLemmaReport {
  bool levels_ok = false;   ///< every member size in [d, k-1]
  bool unique_d_set = false;  ///< exactly one member of size d
  bool ok = false;
};

KeyLemmaReport key_lemma_check(const IntersectionPattern& j, int k, int d);

}  // namespace dwise
