#include <set>

#include "doctest.h"
#include "dwise/constructions.hpp"
#include "dwise/search.hpp"
#include "oracles.hpp"

using namespace dwise;

namespace {

std::set<std::string> labels(const SearchReport& r) {
  std::set<std::string> out;
  for (const auto& c : r.iso_classes) out.insert(c.classification);
  return out;
}

void check_report_invariants(const SearchReport& r) {
  for (const auto& c : r.iso_classes) {
    CHECK(c.family.size() == r.max_size);
    CHECK(is_d_wise_intersecting(c.family, r.params.d));
    CHECK(is_non_trivial(c.family));
    CHECK(canonical_form(c.family) == c.form);
  }
}

}  // namespace

TEST_CASE("documented search results") {
  auto r = search_max(7, 3, 2);
  CHECK(r.exhausted);
  CHECK(r.max_size == 13);
  CHECK(r.iso_classes.size() == 2);
  CHECK(labels(r) == std::set<std::string>{"A", "H"});
  check_report_invariants(r);

  r = search_max(5, 3, 3);
  CHECK(r.exhausted);
  CHECK(r.max_size == 4);
  REQUIRE(r.iso_classes.size() == 1);
  CHECK(is_isomorphic(r.iso_classes[0].family, generate(FamilyKind::CompleteUniform, 5, 3, 3)));

  r = search_max(6, 2, 3);
  CHECK(r.exhausted);
  CHECK(r.max_size == 0);
  CHECK(r.iso_classes.empty());
}

TEST_CASE("search maximum agrees with plain backtracking") {
  for (auto [n, k, d] : std::vector<std::array<int, 3>>{{4, 2, 2}, {5, 2, 2}, {6, 2, 2}, {5, 3, 2}, {5, 3, 3}, {6, 3, 3}, {5, 3, 4}, {4, 3, 2}, {6, 3, 4}}) {
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(d);
    const auto r = search_max(n, k, d);
    CHECK(r.exhausted);
    CHECK(static_cast<int>(r.max_size) == oracle::max_nontrivial(n, k, d));
    check_report_invariants(r);
  }
}

TEST_CASE("root symmetry breaking loses no class") {
  for (int n = 4; n <= 6; ++n)
    for (int k = 2; k <= 3; ++k)
      for (int d = 2; d <= 4; ++d) {
        if (k > n) continue;
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(d);
        SearchOptions full;
        full.symmetry_breaking = false;
        full.seed_with_constructions = false;
        const auto a = search_max(n, k, d);
        const auto b = search_max(n, k, d, full);
        CHECK(a.max_size == b.max_size);
        REQUIRE(a.iso_classes.size() == b.iso_classes.size());
        for (std::size_t i = 0; i < a.iso_classes.size(); ++i) CHECK(a.iso_classes[i].form == b.iso_classes[i].form);
      }
}

TEST_CASE("seeding the incumbent does not change the result") {
  SearchOptions plain;
  plain.seed_with_constructions = false;
  const auto a = search_max(7, 3, 2);
  const auto b = search_max(7, 3, 2, plain);
  CHECK(a.max_size == b.max_size);
  REQUIRE(a.iso_classes.size() == b.iso_classes.size());
  for (std::size_t i = 0; i < a.iso_classes.size(); ++i) CHECK(a.iso_classes[i].form == b.iso_classes[i].form);
  CHECK(a.nodes_explored <= b.nodes_explored);
}

TEST_CASE("reports are identical across worker counts") {
  SearchOptions one;
  one.threads = 1;
  SearchOptions many;
  many.threads = 4;
  CHECK(search_max(7, 3, 2, one).to_json(false) == search_max(7, 3, 2, many).to_json(false));
  CHECK(search_max(6, 3, 2, one).to_json(false) == search_max(6, 3, 2, many).to_json(false));
}

TEST_CASE("budget overrun gives a flagged lower bound") {
  SearchOptions tiny;
  tiny.max_nodes = 50;
  tiny.seed_with_constructions = false;
  const auto r = search_max(8, 3, 2, tiny);
  CHECK_FALSE(r.exhausted);
  CHECK(r.max_size <= 16);
  check_report_invariants(r);
}

TEST_CASE("search preconditions") {
  CHECK_THROWS_AS(search_max(65, 2, 2), PreconditionError);
  CHECK_THROWS_AS(search_max(20, 4, 2), PreconditionError);
  CHECK_THROWS_AS(search_max(7, 3, 1), PreconditionError);
}

TEST_CASE("json report schema") {
  const auto j = search_max(5, 3, 3).to_json();
  CHECK(j.rfind(R"({"params":{"n":5,"k":3,"d":3},"max_size":4,"iso_classes":[{"classification":"A","sets":)", 0) == 0);
  CHECK(j.find(R"("elapsed_ms":)") != std::string::npos);
  CHECK(j.find(R"("exhausted":true)") != std::string::npos);
  CHECK(search_max(5, 3, 3).to_json(false).find("elapsed_ms") == std::string::npos);
}

TEST_CASE("saturation") {
  const Family k4 = generate(FamilyKind::CompleteUniform, 6, 3, 3);
  CHECK(saturate(k4, 3) == k4);
  const Family two = Family::from_lists(4, 3, {{1, 2, 3}, {1, 2, 4}});
  CHECK(saturate(two, 2) == generate(FamilyKind::CompleteUniform, 4, 3, 3));
  const Family h = generate(FamilyKind::H, 7, 3, 2);
  CHECK(saturate(h, 2) == h);
  CHECK_THROWS_AS(saturate(Family::from_lists(4, 2, {{1, 2}, {3, 4}}), 2), PreconditionError);

  // Output is maximal: no missing k-set can be added.
  const Family seed = Family::from_lists(7, 3, {{1, 2, 3}, {3, 4, 5}});
  const Family s = saturate(seed, 2);
  for (const auto& e : seed) CHECK(s.contains(e));
  CHECK(is_d_wise_intersecting(s, 2));
  for (const auto& c : oracle::subsets(7, 3)) {
    const ElementSet cs = from_list(c, 7);
    if (s.contains(cs)) continue;
    auto lists = s.to_lists();
    lists.push_back(c);
    CHECK_FALSE(oracle::d_wise(lists, 2));
  }
}
