#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "dwise/canonical.hpp"
#include "dwise/constructions.hpp"
#include "dwise/delta_systems.hpp"
#include "dwise/error.hpp"
#include "dwise/family.hpp"
#include "dwise/lemma_lab.hpp"
#include "dwise/search.hpp"

namespace py = pybind11;
using namespace dwise;

namespace {

using Lists = std::vector<std::vector<int>>;

Family fam(int n, int k, const Lists& sets) { return Family::from_lists(n, k, sets); }

std::string reports_json(const std::vector<CheckReport>& rs) {
  std::string out = "[";
  for (std::size_t i = 0; i < rs.size(); ++i) out += (i ? "," : "") + rs[i].to_json();
  return out + "]";
}

SearchOptions options(std::uint64_t max_nodes, double max_seconds, unsigned threads, bool symmetry) {
  SearchOptions o;
  o.max_nodes = max_nodes;
  o.max_seconds = max_seconds;
  o.threads = threads;
  o.symmetry_breaking = symmetry;
  return o;
}

}  // namespace

PYBIND11_MODULE(_dwise, m) {
  m.doc() = "Non-trivial d-wise intersecting families: constructions, search, checks";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("generate", [](const std::string& kind, int n, int k, int d) { return generate(parse_kind(kind), n, k, d).to_lists(); },
        py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("d"));
  m.def("closed_size", [](const std::string& kind, int n, int k, int d) { return closed_size(parse_kind(kind), n, k, d); },
        py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("d"));
  m.def("threshold_n0", [](int k, int d) { return threshold_n0(k, d).str(); }, py::arg("k"), py::arg("d"),
        "Decimal string of the threshold.");

  m.def("is_d_wise_intersecting", [](int n, int k, const Lists& sets, int d) { return is_d_wise_intersecting(fam(n, k, sets), d); },
        py::arg("n"), py::arg("k"), py::arg("sets"), py::arg("d"));
  m.def("common_intersection", [](int n, int k, const Lists& sets) { return to_list(common_intersection(fam(n, k, sets))); },
        py::arg("n"), py::arg("k"), py::arg("sets"));
  m.def(
      "core_degree",
      [](int n, int k, const Lists& sets, const std::vector<int>& x, std::optional<int> cap) {
        return core_degree(fam(n, k, sets), from_list(x, n), cap);
      },
      py::arg("n"), py::arg("k"), py::arg("sets"), py::arg("x"), py::arg("cap") = py::none());
  m.def(
      "large_core_sets",
      [](int n, int k, const Lists& sets, int d, int tau) { return large_core_sets(fam(n, k, sets), d, tau).members.to_lists(); },
      py::arg("n"), py::arg("k"), py::arg("sets"), py::arg("d"), py::arg("tau"));

  m.def("canonical_form", [](int n, int k, const Lists& sets) { return canonical_form(fam(n, k, sets)).hex(); },
        py::arg("n"), py::arg("k"), py::arg("sets"));
  m.def(
      "is_isomorphic", [](int n, int k, const Lists& a, const Lists& b) { return is_isomorphic(fam(n, k, a), fam(n, k, b)); },
      py::arg("n"), py::arg("k"), py::arg("a"), py::arg("b"));

  m.def(
      "search_max_json",
      [](int n, int k, int d, std::uint64_t max_nodes, double max_seconds, unsigned threads, bool symmetry, bool elapsed) {
        SearchReport r;
        {
          py::gil_scoped_release release;
          r = search_max(n, k, d, options(max_nodes, max_seconds, threads, symmetry));
        }
        return r.to_json(elapsed);
      },
      py::arg("n"), py::arg("k"), py::arg("d"), py::arg("max_nodes") = SearchOptions{}.max_nodes,
      py::arg("max_seconds") = SearchOptions{}.max_seconds, py::arg("threads") = 1, py::arg("symmetry_breaking") = true,
      py::arg("include_elapsed") = true);

  m.def(
      "run_lemma_suite_json",
      [](int n, int k, const Lists& sets, int d, int tau) { return reports_json(run_lemma_suite(fam(n, k, sets), d, tau)); },
      py::arg("n"), py::arg("k"), py::arg("sets"), py::arg("d"), py::arg("tau"));
  m.def(
      "structure_bound_check_json", [](int n, int k, const Lists& sets, int d) { return structure_bound_check(fam(n, k, sets), d).to_json(); },
      py::arg("n"), py::arg("k"), py::arg("sets"), py::arg("d"));
  m.def(
      "verify_small_cases_json", [](int n, int k, int d) { return verify_small_cases(n, k, d).to_json(); }, py::arg("n"),
      py::arg("k"), py::arg("d"));
  m.def(
      "conjecture_probe_json", [](int n, int k, int d) { return conjecture_probe(n, k, d).to_json(); }, py::arg("n"),
      py::arg("k"), py::arg("d"));
}
