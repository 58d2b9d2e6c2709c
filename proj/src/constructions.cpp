#include "dwise/constructions.hpp"

namespace dwise {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::H: return "H";
    case FamilyKind::A: return "A";
    case FamilyKind::B: return "B";
    case FamilyKind::CompleteUniform: return "K";
  }
  return "?";
}

FamilyKind parse_kind(std::string_view tag) {
  if (tag == "H") return FamilyKind::H;
  if (tag == "A") return FamilyKind::A;
  if (tag == "B") return FamilyKind::B;
  if (tag == "K" || tag == "CompleteUniform") return FamilyKind::CompleteUniform;
  throw PreconditionError("unknown family kind '" + std::string(tag) + "' (expected H, A, B or K)");
}

void check_construction_params(FamilyKind kind, int n, int k, int d) {
  const std::string name(to_string(kind));
  if (k < 1) throw PreconditionError(name + ": k must be at least 1");
  if (n > kMaxGround) throw PreconditionError(name + ": n exceeds " + std::to_string(kMaxGround));
  if (kind != FamilyKind::CompleteUniform) {
    if (d < 2) throw PreconditionError(name + ": requires d >= 2 (got d=" + std::to_string(d) + ")");
    if (d > k) throw PreconditionError(name + ": requires d <= k (got d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")");
  }
  const int min_n = kind == FamilyKind::B ? k : k + 1;
  if (n < min_n)
    throw PreconditionError(name + ": requires n >= " + std::to_string(min_n) + " (got n=" + std::to_string(n) + ")");
}

bool construction_contains(FamilyKind kind, int k, int d, const ElementSet& a) {
  // 0-based: [m] is {0, ..., m-1}; [a, b] is {a-1, ..., b-1}.
  const auto range = [](int lo, int hi) {
    ElementSet s;
    for (int e = lo - 1; e <= hi - 1; ++e) s.insert(e);
    return s;
  };
  switch (kind) {
    case FamilyKind::H: {
      const ElementSet kernel = range(1, d - 1);
      if (kernel.is_subset_of(a) && a.intersects(range(d, k + 1))) return true;
      const ElementSet top = range(1, k + 1);
      for (int i = 1; i <= d - 1; ++i) {
        ElementSet t = top;
        t.erase(i - 1);
        if (a == t) return true;
      }
      return false;
    }
    case FamilyKind::A:
      return (a & range(1, d + 1)).size() >= d;
    case FamilyKind::B: {
      const ElementSet kernel = range(1, d - 1);
      const ElementSet window = range(d, k);
      const int in_kernel = (a & kernel).size();
      if (in_kernel == d - 2 && window.is_subset_of(a)) return true;
      return in_kernel == d - 1 && a.intersects(window);
    }
    case FamilyKind::CompleteUniform:
      return a.is_subset_of(range(1, k + 1));
  }
  return false;
}

Family generate(FamilyKind kind, int n, int k, int d) {
  check_construction_params(kind, n, k, d);
  if (binomial(n, k) > 50'000'000) throw PreconditionError("C(n, k) too large to materialize");
  std::vector<ElementSet> sets;
  if (kind == FamilyKind::CompleteUniform) {
    for_each_k_subset(k + 1, k, [&](const ElementSet& s) { sets.push_back(s); });
  } else {
    for_each_k_subset(n, k, [&](const ElementSet& s) {
      if (construction_contains(kind, k, d, s)) sets.push_back(s);
    });
  }
  return Family::from_sets(n, k, std::move(sets));
}

std::int64_t closed_size(FamilyKind kind, int n, int k, int d) {
  check_construction_params(kind, n, k, d);
  switch (kind) {
    case FamilyKind::A:
      return (d + 1) * binomial(n - d - 1, k - d) + binomial(n - d - 1, k - d - 1);
    case FamilyKind::H:
      return binomial(n - d + 1, k - d + 1) - binomial(n - k - 1, k - d + 1) + d - 1;
    case FamilyKind::B:
      return static_cast<std::int64_t>(d - 1) * (n - k) + binomial(n - d + 1, k - d + 1) - binomial(n - k, k - d + 1);
    case FamilyKind::CompleteUniform:
      return k + 1;
  }
  return 0;
}

SizeComparison compare_extremal_sizes(int n, int k, int d) {
  if (d < 2 || d >= k) throw PreconditionError("size comparison requires 2 <= d < k");
  if (n < 3 * k) throw PreconditionError("size comparison requires n >= 3k");
  SizeComparison out;
  out.size_h = closed_size(FamilyKind::H, n, k, d);
  out.size_a = closed_size(FamilyKind::A, n, k, d);
  out.size_b = closed_size(FamilyKind::B, n, k, d);
  out.predicate_2d_ge_k_plus_1 = 2 * d >= k + 1;
  out.consistent = (out.size_a >= out.size_h) == out.predicate_2d_ge_k_plus_1;
  return out;
}

BigInt threshold_n0(int k, int d) {
  if (d < 2 || d > k) throw PreconditionError("threshold requires 2 <= d <= k");
  if (k > 12) throw PreconditionError("threshold supported for k <= 12");
  if (k == d) return BigInt(d);

  const BigInt base = BigInt(k) * k * (BigInt(1) << k);
  const BigInt m = boost::multiprecision::pow(base, 1U << k);

  // e lies strictly between S/N! and (S + 1/N)/N! with S = sum_{j<=N} N!/j!.
  // Grow N until both ends give the same floor of e*m; e*m is irrational,
  // so its ceiling is that floor plus one.
  for (unsigned terms = 32;; terms *= 2) {
    BigInt fact = 1;
    BigInt partial = 1;
    // a_j = a_{j-1} * j + 1 with a_0 = 1 gives a_N = sum_{i<=N} N!/i!.
    for (unsigned j = 1; j <= terms; ++j) {
      fact *= j;
      partial = partial * j + 1;
    }
    const BigInt lo = (m * partial) / fact;
    const BigInt hi = (m * (partial * terms + 1)) / (fact * terms);
    if (lo == hi) return (lo + 1) * (k - d) + d;
  }
}

}  // namespace dwise
