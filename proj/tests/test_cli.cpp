#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dwise/cli.hpp"
#include "dwise/constructions.hpp"
#include "dwise/family_io.hpp"
#include "oracles.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "dwise");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = dwise::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  int c = 0;
  for (char ch : s) c += ch == '\n';
  return c;
}

}  // namespace

TEST_CASE("gen emits header and members") {
  const auto r = call({"gen", "--kind", "H", "--n", "7", "--k", "3", "--d", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n=7 k=3\n", 0) == 0);
  CHECK(count_lines(r.out) == 1 + 13);
  const auto f = dwise::io::parse_text(r.out);
  CHECK(f.to_lists() == oracle::family_h(7, 3, 2));
}

TEST_CASE("gen round-trips through text and json") {
  for (const char* kind : {"H", "A", "B"}) {
    const auto text = call({"gen", "--kind", kind, "--n", "8", "--k", "4", "--d", "3"});
    const auto json = call({"--json", "gen", "--kind", kind, "--n", "8", "--k", "4", "--d", "3"});
    REQUIRE(text.code == 0);
    REQUIRE(json.code == 0);
    const auto a = dwise::io::parse_text(text.out);
    const auto b = dwise::io::parse_json(json.out);
    CHECK(a == b);
    CHECK(dwise::io::to_text(a) == text.out);
    const auto again = call({"check", "--d", "3"}, text.out);
    CHECK(again.out.find("non-trivial yes") != std::string::npos);
  }
}

TEST_CASE("search json report") {
  const auto r = call({"search", "--n", "5", "--k", "3", "--d", "3", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"max_size\":4") != std::string::npos);
  CHECK(r.out.find("\"exhausted\":true") != std::string::npos);
  CHECK(r.out.rfind("{\"params\":{\"n\":5,\"k\":3,\"d\":3}", 0) == 0);
}

TEST_CASE("search budget overrun exits inconclusive") {
  const auto r = call({"search", "--n", "8", "--k", "3", "--d", "2", "--budget-nodes", "5"});
  CHECK(r.code == dwise::cli::kExitInconclusive);
}

TEST_CASE("verify subcommands") {
  auto r = call({"verify", "--small", "--n", "6", "--k", "2", "--d", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("no family exists") != std::string::npos);

  const auto h = call({"gen", "--kind", "H", "--n", "10", "--k", "4", "--d", "3"});
  r = call({"verify", "--suite", "lemmas", "--d", "3", "--tau", "4"}, h.out);
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) >= 4);

  r = call({"verify", "--structure", "--d", "3"}, h.out);
  CHECK(r.code == 0);
  CHECK(r.out.find("structure_bound: pass") != std::string::npos);
}

TEST_CASE("usage and input errors exit 64") {
  auto r = call({"check", "--d", "2"}, "n=5 k=3\n1,2,3\n1,2,9\n");
  CHECK(r.code == dwise::cli::kExitUsage);
  CHECK(r.err.find("line 3") != std::string::npos);

  r = call({"gen", "--kind", "H", "--n", "7", "--k", "3", "--frobnicate"});
  CHECK(r.code == dwise::cli::kExitUsage);

  r = call({"verify", "--small", "--structure", "--d", "2"});
  CHECK(r.code == dwise::cli::kExitUsage);

  r = call({"gen", "--kind", "Q", "--n", "7", "--k", "3", "--d", "2"});
  CHECK(r.code == dwise::cli::kExitUsage);

  r = call({});
  CHECK(r.code == dwise::cli::kExitUsage);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> sampled = {"--seed", "11", "gen", "--kind", "A", "--n", "9", "--k", "4", "--d", "3", "--sample", "12"};
  const auto a = call(sampled);
  const auto b = call(sampled);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 13);

  auto other = sampled;
  other[1] = "12";
  CHECK(call(other).out != a.out);

  const auto p = call({"probe", "--n", "6", "--k", "3", "--d", "2", "--json"});
  CHECK(p.out == call({"probe", "--n", "6", "--k", "3", "--d", "2", "--json"}).out);
}

TEST_CASE("installed binary matches in-process runs") {
  const char* bin = std::getenv("DWISE_BIN");
  if (!bin) return;
  const std::string cmd = std::string(bin) + " gen --kind B --n 8 --k 4 --d 3";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  CHECK(pclose(pipe) == 0);
  CHECK(out == call({"gen", "--kind", "B", "--n", "8", "--k", "4", "--d", "3"}).out);
}
