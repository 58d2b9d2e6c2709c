#include <random>
#include <set>

#include "doctest.h"
#include "dwise/constructions.hpp"
#include "dwise/delta_systems.hpp"
#include "dwise/error.hpp"
#include "dwise/lemma_lab.hpp"
#include "oracles.hpp"

using namespace dwise;

namespace {

const CheckReport& by_id(const std::vector<CheckReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.check_id == id) return r;
  FAIL("missing check " << id);
  return rs.front();
}

oracle::Fam as_oracle(const Family& f) { return f.to_lists(); }

Family subfamily(const Family& f, std::mt19937_64& rng, std::size_t m) {
  std::vector<ElementSet> sets = f.sets();
  std::shuffle(sets.begin(), sets.end(), rng);
  sets.resize(m);
  return Family::from_sets(f.n(), f.k(), sets);
}

}  // namespace

TEST_CASE("suite on A(5,3), n = 11, passes with empty S_3") {
  const auto f = generate(FamilyKind::A, 11, 5, 3);
  const auto rs = run_lemma_suite(f, 3, 5);
  REQUIRE(rs.size() == 4);
  CHECK(rs[0].check_id == "m_wise_bound");
  CHECK(rs[1].check_id == "core_degree_below_k");
  CHECK(rs[2].check_id == "large_core_meets_all");
  CHECK(rs[3].check_id == "sd_d_minus_1_intersecting");
  for (const auto& r : rs) {
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.severity == Severity::Assert);
  }
  CHECK(exit_code(rs) == 0);
  CHECK(by_id(rs, "sd_d_minus_1_intersecting").message.find("0 members") != std::string::npos);
}

TEST_CASE("suite on H(4,3), n = 10, passes with three-member S_3") {
  const auto f = generate(FamilyKind::H, 10, 4, 3);
  const auto rs = run_lemma_suite(f, 3, 4);
  for (const auto& r : rs) CHECK(r.status == CheckStatus::Pass);
  CHECK(by_id(rs, "sd_d_minus_1_intersecting").message.find("3 members") != std::string::npos);
}

TEST_CASE("H(4,2), n = 12: large-core point pairs miss the hub set") {
  const auto f = generate(FamilyKind::H, 12, 4, 2);
  const auto rs = run_lemma_suite(f, 2, 4);
  const auto& r = by_id(rs, "large_core_meets_all");
  CHECK(r.status == CheckStatus::BoundaryReport);
  CHECK(r.severity == Severity::Report);
  CHECK_FALSE(r.failed());
  CHECK(exit_code(rs) == 0);
  REQUIRE(r.witnesses.size() == 7);
  const auto fam = as_oracle(f);
  std::set<int> seen;
  for (const auto& w : r.witnesses) {
    REQUIRE(w.sets.size() == 2);
    const auto& dset = w.sets[0];
    const auto& member = w.sets[1];
    REQUIRE(dset.size() == 2);
    CHECK(dset[0] == 1);
    seen.insert(dset[1]);
    CHECK(member == oracle::Set{2, 3, 4, 5});
    CHECK(std::find(fam.begin(), fam.end(), member) != fam.end());
    CHECK(oracle::meet(dset, member).empty());
    REQUIRE(w.value);
    CHECK(*w.value == 4);
    CHECK(oracle::core_degree(fam, dset) >= 4);
  }
  CHECK(seen == std::set<int>{6, 7, 8, 9, 10, 11, 12});
}

TEST_CASE("suite witnesses re-verify against the oracle") {
  // Each construction at n = 9, k = 4, d = 3.
  for (auto kind : {FamilyKind::H, FamilyKind::A, FamilyKind::B}) {
    const auto f = generate(kind, 9, 4, 3);
    const auto fam = as_oracle(f);
    const auto rs = run_lemma_suite(f, 3, 4);
    for (const auto& w : by_id(rs, "core_degree_below_k").witnesses) {
      REQUIRE(w.value);
      CHECK(oracle::core_degree(fam, w.sets[0]) == *w.value);
    }
    for (const auto& w : by_id(rs, "large_core_meets_all").witnesses) {
      CHECK(oracle::core_degree(fam, w.sets[0]) >= 4);
      CHECK(static_cast<int>(oracle::meet(w.sets[0], w.sets[1]).size()) < 2);
    }
    for (const auto& w : by_id(rs, "sd_d_minus_1_intersecting").witnesses) {
      REQUIRE(w.value);
      CHECK(static_cast<long long>(oracle::meet(w.sets[0], w.sets[1]).size()) == *w.value);
    }
  }
}

TEST_CASE("suite preconditions") {
  const auto star = Family::from_lists(6, 3, {{1, 2, 3}, {1, 4, 5}, {1, 2, 6}});
  CHECK_THROWS_AS(run_lemma_suite(star, 2, 3), PreconditionError);
  const auto loose = Family::from_lists(6, 3, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}, {1, 2, 6}});
  CHECK_THROWS_AS(run_lemma_suite(loose, 2, 3), PreconditionError);
}

TEST_CASE("small cases") {
  auto r = verify_small_cases(7, 3, 2);
  CHECK(r.status == CheckStatus::Pass);
  REQUIRE(r.search);
  CHECK(r.search->max_size == 13);

  r = verify_small_cases(6, 4, 4);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.message.find("K_5") != std::string::npos);

  r = verify_small_cases(7, 3, 4);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.message == "no family exists");

  SearchOptions tiny;
  tiny.max_nodes = 10;
  tiny.seed_with_constructions = false;
  r = verify_small_cases(8, 3, 2, tiny);
  CHECK(r.status == CheckStatus::Inconclusive);
  CHECK(exit_code({r}) == 3);
}

TEST_CASE("structure check on the constructions") {
  auto r = structure_bound_check(generate(FamilyKind::H, 10, 4, 3), 3);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.message.find("star kernel {1,2}") != std::string::npos);

  // d = k-1: the complete shape contains a two-member star.
  r = structure_bound_check(generate(FamilyKind::A, 7, 4, 3), 3);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.message.find("complete on {1,2,3,4}") != std::string::npos);

  r = structure_bound_check(generate(FamilyKind::A, 11, 5, 3), 3);
  CHECK(r.status == CheckStatus::HypothesesUnmet);
}

TEST_CASE("structure check never flags seeded subfamilies of B") {
  std::mt19937_64 rng(7);
  const auto b = generate(FamilyKind::B, 11, 5, 3);
  int tested = 0;
  for (int trial = 0; tested < 20 && trial < 200; ++trial) {
    const auto f = subfamily(b, rng, 20);
    if (!is_non_trivial(f)) continue;
    ++tested;
    const auto r = structure_bound_check(f, 3);
    CHECK(r.status != CheckStatus::Counterexample);
  }
  CHECK(tested == 20);
}

TEST_CASE("conjecture probe") {
  auto r = conjecture_probe(6, 3, 2);
  CHECK(r.status == CheckStatus::BoundaryReport);
  CHECK(r.severity == Severity::Report);
  REQUIRE(r.search);
  CHECK(r.search->max_size == 10);
  CHECK(r.search->iso_classes.size() == 12);
  CHECK(r.witnesses.size() == 10);
  for (const auto& w : r.witnesses) {
    CHECK(oracle::d_wise(w.sets, 2));
    CHECK(oracle::common(w.sets, 6).empty());
  }
  CHECK(exit_code({r}) == 0);

  r = conjecture_probe(7, 3, 2);
  CHECK(r.status == CheckStatus::Pass);

  CHECK_THROWS_AS(conjecture_probe(5, 3, 2), PreconditionError);
}

TEST_CASE("report json shape") {
  const auto r = verify_small_cases(7, 3, 4);
  const auto j = r.to_json();
  CHECK(j.find("\"check_id\":\"small_cases\"") != std::string::npos);
  CHECK(j.find("\"status\":\"pass\"") != std::string::npos);
  CHECK(to_string(CheckStatus::BoundaryReport) == "boundary-report");
  CHECK(to_string(CheckStatus::HypothesesUnmet) == "hypotheses-unmet");
}
