#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "dwise/family.hpp"

namespace dwise {

/// The extremal and near-extremal constructions, plus K_{k+1}^{(k)}.
enum class FamilyKind { H, A, B, CompleteUniform };

std::string_view to_string(FamilyKind kind);
/// Accepts "H", "A", "B", "K" (CompleteUniform). Throws PreconditionError otherwise.
FamilyKind parse_kind(std::string_view tag);

/// Throws PreconditionError naming the failed requirement.
void check_construction_params(FamilyKind kind, int n, int k, int d);

/// Membership test for a single k-set, straight from the definitions:
///   H: [d-1] ⊂ A and A meets [d, k+1], or A = [k+1] \ {i} with i ∈ [d-1]
///   A: |A ∩ [d+1]| >= d
///   B: |B ∩ [d-1]| = d-2 and [d, k] ⊂ B, or [d-1] ⊂ B and B meets [d, k]
///   CompleteUniform: A ⊆ [k+1]
bool construction_contains(FamilyKind kind, int k, int d, const ElementSet& a);

/// Materializes the construction on [n] in lexicographic order.
Family generate(FamilyKind kind, int n, int k, int d);

/// Closed-form size. B uses
///   (d-1)(n-k) + C(n-d+1, k-d+1) - C(n-k, k-d+1),
/// counted as the sets missing one point of [d-1] plus those containing it.
std::int64_t closed_size(FamilyKind kind, int n, int k, int d);

struct SizeComparison {
  std::int64_t size_h = 0;
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  bool predicate_2d_ge_k_plus_1 = false;
  /// |A| >= |H| exactly when 2d >= k+1.
  bool consistent = false;
};

/// Requires 2 <= d < k and n >= 3k.
SizeComparison compare_extremal_sizes(int n, int k, int d);

using BigInt = boost::multiprecision::cpp_int;

/// ceil(e * (k^2 2^k)^(2^k)) * (k - d) + d, exact. Requires 2 <= d <= k.
BigInt threshold_n0(int k, int d);

}  // namespace dwise
