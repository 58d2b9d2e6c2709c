#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "dwise/constructions.hpp"
#include "oracles.hpp"

using namespace dwise;

namespace {

using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<400>>;

/// e * (k^2 2^k)^(2^k), rounded up, times (k - d), plus d, in decimal floating point.
BigInt n0_oracle(int k, int d) {
  const Dec e = boost::multiprecision::exp(Dec(1));
  Dec base = Dec(k * k) * boost::multiprecision::pow(Dec(2), k);
  Dec m = boost::multiprecision::pow(base, 1 << k);
  Dec c = boost::multiprecision::ceil(e * m);
  return c.convert_to<BigInt>() * (k - d) + d;
}

}  // namespace

TEST_CASE("generated families match the set-builder definitions") {
  for (int k = 2; k <= 5; ++k)
    for (int d = 2; d <= k; ++d)
      for (int n = k + 1; n <= 10; ++n) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(d);
        CHECK(generate(FamilyKind::A, n, k, d).to_lists() == oracle::family_a(n, k, d));
        CHECK(generate(FamilyKind::H, n, k, d).to_lists() == oracle::family_h(n, k, d));
        CHECK(generate(FamilyKind::B, n, k, d).to_lists() == oracle::family_b(n, k, d));
      }
}

TEST_CASE("closed sizes match enumeration") {
  for (int k = 2; k <= 5; ++k)
    for (int d = 2; d <= k; ++d)
      for (int n = k + 1; n <= 11; ++n)
        for (auto kind : {FamilyKind::H, FamilyKind::A, FamilyKind::B, FamilyKind::CompleteUniform}) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(d);
          CHECK(closed_size(kind, n, k, d) == static_cast<std::int64_t>(generate(kind, n, k, d).size()));
        }
}

TEST_CASE("documented sizes") {
  const Family a = generate(FamilyKind::A, 7, 3, 2);
  CHECK(a.size() == 13);
  CHECK(a.contains(from_list({1, 2, 3}, 7)));
  CHECK(a.contains(from_list({2, 3, 7}, 7)));
  const Family h = generate(FamilyKind::H, 7, 3, 2);
  CHECK(h.size() == 13);
  CHECK(h.contains(from_list({2, 3, 4}, 7)));
  for (int j = 2; j <= 4; ++j)
    for (int x = 2; x <= 7; ++x)
      if (x != j) CHECK(h.contains(from_list(x < j ? std::vector<int>{1, x, j} : std::vector<int>{1, j, x}, 7)));
  CHECK(generate(FamilyKind::CompleteUniform, 4, 3, 3).size() == 4);
  CHECK(closed_size(FamilyKind::A, 7, 3, 2) == 13);
  CHECK(closed_size(FamilyKind::H, 12, 4, 2) == oracle::choose(11, 3) - oracle::choose(7, 3) + 1);
  CHECK(closed_size(FamilyKind::H, 12, 4, 2) == 131);
  CHECK(closed_size(FamilyKind::B, 7, 3, 2) == 13);
}

TEST_CASE("parameter errors name the precondition") {
  CHECK_THROWS_AS(generate(FamilyKind::H, 7, 3, 4), PreconditionError);
  CHECK_THROWS_AS(generate(FamilyKind::H, 7, 3, 1), PreconditionError);
  CHECK_THROWS_AS(generate(FamilyKind::A, 3, 3, 2), PreconditionError);
  CHECK_THROWS_AS(closed_size(FamilyKind::H, 3, 3, 2), PreconditionError);
  CHECK_THROWS_AS(parse_kind("Q"), PreconditionError);
  CHECK(parse_kind("K") == FamilyKind::CompleteUniform);
  CHECK(to_string(FamilyKind::B) == "B");
}

TEST_CASE("size comparison") {
  auto c = compare_extremal_sizes(12, 4, 3);
  CHECK(c.size_a == 33);
  CHECK(c.size_h == 26);
  CHECK(c.predicate_2d_ge_k_plus_1);
  CHECK(c.consistent);
  c = compare_extremal_sizes(12, 4, 2);
  CHECK(c.size_a == 117);
  CHECK(c.size_h == 131);
  CHECK_FALSE(c.predicate_2d_ge_k_plus_1);
  CHECK(c.consistent);
  c = compare_extremal_sizes(9, 3, 2);
  CHECK(c.size_a == 19);
  CHECK(c.size_h == 19);
  CHECK(c.consistent);
  CHECK_THROWS_AS(compare_extremal_sizes(8, 3, 2), PreconditionError);
  CHECK_THROWS_AS(compare_extremal_sizes(12, 4, 4), PreconditionError);
}

TEST_CASE("chain |A| <= |B| <= |H| when 2d < k") {
  for (int k = 5; k <= 6; ++k)
    for (int d = 2; 2 * d < k; ++d)
      for (int n = 3 * k; n <= 3 * k + 4; ++n) {
        const auto a = closed_size(FamilyKind::A, n, k, d);
        const auto b = closed_size(FamilyKind::B, n, k, d);
        const auto h = closed_size(FamilyKind::H, n, k, d);
        CHECK(a <= b);
        CHECK(b <= h);
      }
}

TEST_CASE("threshold n0") {
  CHECK(threshold_n0(3, 3) == 3);
  const BigInt m = BigInt(722204136308736LL);
  CHECK(BigInt(72) * 72 * 72 * 72 * 72 * 72 * 72 * 72 == m);
  CHECK(threshold_n0(3, 2) == n0_oracle(3, 2));
  CHECK(threshold_n0(3, 2) > m * 2);
  CHECK(threshold_n0(4, 2) > threshold_n0(3, 2));
  CHECK(threshold_n0(4, 2) == n0_oracle(4, 2));
  CHECK(threshold_n0(4, 3) == n0_oracle(4, 3));
  CHECK(threshold_n0(5, 2) == n0_oracle(5, 2));
  CHECK(threshold_n0(6, 4) == n0_oracle(6, 4));
}
