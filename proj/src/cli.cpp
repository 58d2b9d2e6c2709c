#include "dwise/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwise/canonical.hpp"
#include "dwise/constructions.hpp"
#include "dwise/delta_systems.hpp"
#include "dwise/family_io.hpp"
#include "dwise/lemma_lab.hpp"
#include "dwise/search.hpp"
#include "dwise/semilattice.hpp"

namespace dwise::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  bool json = false;
  std::string out_path;
  std::uint64_t seed = 0;

  Family read(const std::string& path) const {
    if (path.empty() || path == "-") {
      std::ostringstream ss;
      ss << in.rdbuf();
      return io::parse_any(ss.str());
    }
    return io::read_file(path);
  }

  void emit(const std::string& text) const {
    if (out_path.empty()) {
      out << text;
      if (!text.empty() && text.back() != '\n') out << '\n';
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write " + out_path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }

  void emit_family(const Family& f) const { emit(json ? io::to_json(f) : io::to_text(f)); }
};

ElementSet parse_set(const std::string& spec, int n) {
  std::vector<int> list;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      list.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad set element '" + tok + "'");
    }
  }
  for (int e : list)
    if (e < 1 || e > n) throw UsageError("set element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
  return from_list(list, n);
}

json set_json(const ElementSet& s) { return to_list(s); }

json family_json(const Family& f) { return json::parse(io::to_json(f)); }

std::string lists_text(const Family& f) {
  std::string s;
  for (const auto& e : f) s += format_set(e) + "\n";
  return s;
}

std::string reports_text(const std::vector<CheckReport>& reps) {
  std::ostringstream os;
  for (const auto& r : reps) {
    os << r.check_id << ": " << to_string(r.status) << " [" << to_string(r.severity) << "] " << r.message << "\n";
    for (const auto& w : r.witnesses) {
      os << "  witness";
      for (const auto& s : w.sets) {
        os << " {";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        os << "}";
      }
      if (w.value) os << " value=" << *w.value;
      os << "\n";
    }
  }
  return os.str();
}

std::string reports_json(const std::vector<CheckReport>& reps) {
  json arr = json::array();
  for (const auto& r : reps) arr.push_back(json::parse(r.to_json()));
  return arr.dump();
}

struct Budget {
  std::uint64_t nodes = SearchOptions{}.max_nodes;
  double seconds = SearchOptions{}.max_seconds;
  unsigned threads = 1;
  bool no_symmetry = false;

  void attach(CLI::App* app) {
    app->add_option("--budget-nodes", nodes, "node budget");
    app->add_option("--budget-seconds", seconds, "time budget in seconds");
    app->add_option("--threads", threads, "worker threads (DWISE_THREADS overrides)");
    app->add_flag("--no-symmetry", no_symmetry, "disable root symmetry breaking");
  }
  SearchOptions options() const {
    SearchOptions o;
    o.max_nodes = nodes;
    o.max_seconds = seconds;
    o.threads = threads;
    o.symmetry_breaking = !no_symmetry;
    return o;
  }
};

std::string search_text(const SearchReport& r) {
  std::ostringstream os;
  os << "n=" << r.params.n << " k=" << r.params.k << " d=" << r.params.d << "\n";
  os << "max_size " << r.max_size << (r.exhausted ? "" : " (lower bound, budget exhausted)") << "\n";
  os << "classes " << r.iso_classes.size() << "\n";
  for (std::size_t i = 0; i < r.iso_classes.size(); ++i) {
    os << "# class " << i + 1 << ": " << r.iso_classes[i].classification << "\n";
    os << lists_text(r.iso_classes[i].family);
  }
  os << "nodes " << r.nodes_explored << "\n";
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"d-wise intersecting family toolkit", "dwise"};
  app.require_subcommand(1);
  app.fallthrough();
  Io io{in, out, false, {}, 0};
  app.add_flag("--json", io.json, "JSON output");
  app.add_option("--out", io.out_path, "write output to a file");
  app.add_option("--seed", io.seed, "seed for sampled operations")->default_val(0);

  int n = 0, k = 0, d = 0;
  std::string kind_tag, file, file2, set_spec;
  int cap = -1, tau = -1, s_level = 0, sample = -1;
  bool enumerate = false;
  Budget budget;

  auto* gen = app.add_subcommand("gen", "materialize H, A, B or K");
  gen->add_option("--kind", kind_tag)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--d", d);
  gen->add_option("--sample", sample, "keep a seeded random subfamily of this size");

  auto* size = app.add_subcommand("size", "closed-form size");
  size->add_option("--kind", kind_tag)->required();
  size->add_option("--n", n)->required();
  size->add_option("--k", k)->required();
  size->add_option("--d", d);
  size->add_flag("--enumerate", enumerate, "also count by enumeration");

  auto* n0 = app.add_subcommand("n0", "threshold n0(k, d)");
  n0->add_option("--k", k)->required();
  n0->add_option("--d", d)->required();

  auto* check = app.add_subcommand("check", "d-wise and non-triviality");
  check->add_option("--d", d)->required();
  check->add_option("file", file);

  auto* mindeg = app.add_subcommand("mindeg", "minimum element degree");
  mindeg->add_option("file", file);

  auto* lnk = app.add_subcommand("link", "link of a set");
  lnk->add_option("--set", set_spec)->required();
  lnk->add_option("file", file);

  auto* cdeg = app.add_subcommand("core-degree", "core degree of a set");
  cdeg->add_option("--set", set_spec)->required();
  cdeg->add_option("--cap", cap);
  cdeg->add_option("file", file);

  auto* sd = app.add_subcommand("sd", "d-sets of large core degree");
  sd->add_option("--d", d)->required();
  sd->add_option("--tau", tau);
  sd->add_option("--threads", budget.threads);
  sd->add_option("file", file);

  auto* csd = app.add_subcommand("classify-sd", "shape of a (d-1)-intersecting family of d-sets");
  csd->add_option("--k", k)->required();
  csd->add_option("--d", d)->required();
  csd->add_option("file", file);

  std::string blocks, edge, j_spec;
  auto* pat = app.add_subcommand("pattern", "intersection pattern of an edge");
  pat->add_option("--blocks", blocks)->required();
  pat->add_option("--edge", edge)->required();
  pat->add_option("file", file);

  auto* rk = app.add_subcommand("rank", "rank of a pattern");
  rk->add_option("--j", j_spec)->required();
  rk->add_option("--k", k)->required();

  auto* hom = app.add_subcommand("homogenize", "greedy homogeneous subfamily");
  hom->add_option("--s", s_level)->required();
  hom->add_option("file", file);

  auto* srch = app.add_subcommand("search", "exact extremal search");
  srch->add_option("--n", n)->required();
  srch->add_option("--k", k)->required();
  srch->add_option("--d", d)->required();
  budget.attach(srch);

  auto* canon = app.add_subcommand("canon", "canonical form");
  canon->add_option("file", file);

  auto* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("first", file)->required();
  iso->add_option("second", file2)->required();

  auto* sat = app.add_subcommand("saturate", "lexicographic saturation");
  sat->add_option("--d", d)->required();
  sat->add_option("file", file);

  std::string suite;
  bool small = false, structure = false;
  auto* ver = app.add_subcommand("verify", "lemma checks");
  auto* suite_opt = ver->add_option("--suite", suite, "lemmas");
  auto* small_opt = ver->add_flag("--small", small, "small cases by exhaustive search");
  auto* struct_opt = ver->add_flag("--structure", structure, "structure bound checks");
  suite_opt->excludes(small_opt)->excludes(struct_opt);
  small_opt->excludes(struct_opt);
  ver->add_option("--n", n);
  ver->add_option("--k", k);
  ver->add_option("--d", d)->required();
  ver->add_option("--tau", tau);
  ver->add_option("file", file);
  budget.attach(ver);

  auto* probe = app.add_subcommand("probe", "extremal classes against {H, A}");
  probe->add_option("--n", n)->required();
  probe->add_option("--k", k)->required();
  probe->add_option("--d", d)->required();
  budget.attach(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const auto kind = parse_kind(kind_tag);
      Family f = generate(kind, n, k, kind == FamilyKind::CompleteUniform && d == 0 ? k : d);
      if (sample >= 0) {
        if (static_cast<std::size_t>(sample) > f.size()) throw UsageError("--sample exceeds the family size");
        std::vector<std::size_t> idx(f.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::mt19937_64 rng(io.seed);
        for (std::size_t i = 0; i < static_cast<std::size_t>(sample); ++i) std::swap(idx[i], idx[i + rng() % (idx.size() - i)]);
        idx.resize(static_cast<std::size_t>(sample));
        f = f.subfamily(idx);
      }
      io.emit_family(f);
      return 0;
    }
    if (*size) {
      const auto kind = parse_kind(kind_tag);
      if (kind == FamilyKind::CompleteUniform && d == 0) d = k;
      const auto closed = closed_size(kind, n, k, d);
      std::optional<std::size_t> counted;
      if (enumerate) counted = generate(kind, n, k, d).size();
      if (io.json) {
        json j{{"kind", std::string(to_string(kind))}, {"n", n}, {"k", k}, {"d", d}, {"closed_size", closed}};
        if (counted) j["enumerated"] = *counted;
        io.emit(j.dump());
      } else {
        std::string t = std::string(to_string(kind)) + "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",d=" + std::to_string(d) + ") closed_size " + std::to_string(closed);
        if (counted) t += " enumerated " + std::to_string(*counted);
        io.emit(t);
      }
      return 0;
    }
    if (*n0) {
      const std::string v = threshold_n0(k, d).str();
      io.emit(io.json ? json{{"k", k}, {"d", d}, {"n0", v}}.dump() : v);
      return 0;
    }
    if (*check) {
      const Family f = io.read(file);
      const bool dw = is_d_wise_intersecting(f, d);
      const ElementSet common = common_intersection(f);
      if (io.json) {
        io.emit(json{{"size", f.size()}, {"d_wise", dw}, {"common_intersection", set_json(common)}, {"non_trivial", is_non_trivial(f)}}.dump());
      } else {
        io.emit("size " + std::to_string(f.size()) + "\n" + std::to_string(d) + "-wise intersecting " + (dw ? "yes" : "no") + "\ncommon intersection " + format_set(common) +
                "\nnon-trivial " + (is_non_trivial(f) ? "yes" : "no"));
      }
      return 0;
    }
    if (*mindeg) {
      const auto m = min_degree(io.read(file));
      io.emit(io.json ? json{{"element", m.element}, {"degree", m.degree}}.dump() : std::to_string(m.element) + " " + std::to_string(m.degree));
      return 0;
    }
    if (*lnk) {
      const Family f = io.read(file);
      io.emit_family(link(f, parse_set(set_spec, f.n())));
      return 0;
    }
    if (*cdeg) {
      const Family f = io.read(file);
      const ElementSet x = parse_set(set_spec, f.n());
      const int v = cap >= 0 ? core_degree(f, x, cap) : core_degree(f, x);
      io.emit(io.json ? json{{"set", set_json(x)}, {"core_degree", v}}.dump() : std::to_string(v));
      return 0;
    }
    if (*sd) {
      const Family f = io.read(file);
      const SdSet s = large_core_sets(f, d, tau >= 0 ? tau : f.k(), resolve_threads(budget.threads));
      if (io.json) {
        json j = family_json(s.members);
        j["d"] = s.d;
        j["tau"] = s.tau;
        io.emit(j.dump());
      } else {
        io.emit("# S_" + std::to_string(d) + " at tau " + std::to_string(s.tau) + ": " + std::to_string(s.members.size()) + " sets\n" + lists_text(s.members));
      }
      return 0;
    }
    if (*csd) {
      const Family s = io.read(file);
      const auto c = classify_intersecting_dsets(s, k, d);
      json j{{"shape", std::string(to_string(c.shape))}};
      if (c.kernel) j["kernel"] = set_json(*c.kernel);
      if (c.window) j["window"] = set_json(*c.window);
      if (c.vertex_set) j["vertex_set"] = set_json(*c.vertex_set);
      if (c.witness) j["witness"] = json::array({set_json(c.witness->first), set_json(c.witness->second)});
      if (!c.relabel.empty()) j["relabel"] = c.relabel;
      if (io.json) {
        io.emit(j.dump());
      } else {
        std::string t = std::string(to_string(c.shape));
        if (c.kernel) t += " kernel " + format_set(*c.kernel);
        if (c.window) t += " window " + format_set(*c.window);
        if (c.vertex_set) t += " vertices " + format_set(*c.vertex_set);
        if (c.witness) t += " witness " + format_set(c.witness->first) + " " + format_set(c.witness->second);
        io.emit(t);
      }
      return 0;
    }
    if (*pat) {
      const Family h = io.read(file);
      const Partition p = Partition::parse(h.n(), blocks);
      const auto j = intersection_pattern(h, p, parse_set(edge, h.n()));
      if (io.json) {
        json members = json::array();
        for (auto b : j.members()) members.push_back(block_list(b));
        io.emit(json{{"pattern", members}, {"rank", rank(j, p.k())}, {"intersection_closed", j.is_intersection_closed()}}.dump());
      } else {
        io.emit(j.to_string());
      }
      return 0;
    }
    if (*rk) {
      const int r = rank(IntersectionPattern::parse(j_spec), k);
      io.emit(io.json ? json{{"rank", r}}.dump() : std::to_string(r));
      return 0;
    }
    if (*hom) {
      const auto h = greedy_homogenize(io.read(file), s_level);
      if (io.json) {
        json j = family_json(h.family);
        j["partition"] = h.partition.to_string();
        j["pattern"] = h.pattern.to_string();
        j["level"] = h.level;
        io.emit(j.dump());
      } else {
        io.emit("# partition " + h.partition.to_string() + "\n# pattern " + h.pattern.to_string() + "\n# level " + std::to_string(h.level) + "\n" + io::to_text(h.family));
      }
      return 0;
    }
    if (*srch) {
      const auto r = search_max(n, k, d, budget.options());
      io.emit(io.json ? r.to_json() : search_text(r));
      return r.exhausted ? 0 : kExitInconclusive;
    }
    if (*canon) {
      const auto lab = canonical_labeling(io.read(file));
      if (io.json) {
        json j = family_json(lab.relabeled);
        j["form"] = lab.form.hex();
        io.emit(j.dump());
      } else {
        io.emit("# form " + lab.form.hex() + "\n" + io::to_text(lab.relabeled));
      }
      return 0;
    }
    if (*iso) {
      const Family a = io::read_file(file);
      const Family b = io::read_file(file2);
      const bool same = a.n() == b.n() && a.k() == b.k() && is_isomorphic(a, b);
      io.emit(io.json ? json{{"isomorphic", same}}.dump() : (same ? "isomorphic" : "not isomorphic"));
      return 0;
    }
    if (*sat) {
      io.emit_family(saturate(io.read(file), d));
      return 0;
    }
    if (*ver) {
      const int modes = (!suite.empty()) + small + structure;
      if (modes != 1) throw UsageError("verify needs exactly one of --suite lemmas, --small, --structure");
      std::vector<CheckReport> reps;
      if (!suite.empty()) {
        if (suite != "lemmas") throw UsageError("unknown suite '" + suite + "'");
        const Family f = io.read(file);
        reps = run_lemma_suite(f, d, tau >= 0 ? tau : f.k(), resolve_threads(budget.threads));
      } else if (small) {
        if (n == 0 || k == 0) throw UsageError("verify --small needs --n and --k");
        reps.push_back(verify_small_cases(n, k, d, budget.options()));
      } else {
        reps.push_back(structure_bound_check(io.read(file), d));
      }
      io.emit(io.json ? reports_json(reps) : reports_text(reps));
      return exit_code(reps);
    }
    if (*probe) {
      const auto rep = conjecture_probe(n, k, d, budget.options());
      io.emit(io.json ? reports_json({rep}) : reports_text({rep}));
      return exit_code({rep});
    }
  } catch (const ParseError& e) {
    err << "dwise: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "dwise: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "dwise: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dwise: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace dwise::cli
