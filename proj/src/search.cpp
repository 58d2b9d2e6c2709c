#include "dwise/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "dwise/constructions.hpp"

namespace dwise {
namespace {

using Mask = std::uint64_t;
constexpr int kMaxCandidates = 1024;

/// Bit set over candidate indices.
struct Bits {
  std::array<std::uint64_t, kMaxCandidates / 64> w{};

  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; }
};

struct Trace {
  Mask set;
  int level;  ///< fewest chosen members whose intersection it is
};

/// Read-only tables shared by all workers.
struct Context {
  int n = 0;
  int k = 0;
  int d = 0;
  int words = 0;
  std::vector<Mask> cands;
  std::vector<Bits> meets;  ///< candidates intersecting candidate i (i included)
  std::vector<Bits> avoid;  ///< candidates not containing element x

  int count(const Bits& b) const {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(b.w[static_cast<std::size_t>(i)]);
    return c;
  }
  int count_and(const Bits& a, const Bits& b) const {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(a.w[static_cast<std::size_t>(i)] & b.w[static_cast<std::size_t>(i)]);
    return c;
  }
  bool any(const Bits& b) const {
    for (int i = 0; i < words; ++i)
      if (b.w[static_cast<std::size_t>(i)]) return true;
    return false;
  }
  Bits and_(const Bits& a, const Bits& b) const {
    Bits r;
    for (int i = 0; i < words; ++i) r.w[static_cast<std::size_t>(i)] = a.w[static_cast<std::size_t>(i)] & b.w[static_cast<std::size_t>(i)];
    return r;
  }
  template <typename Fn>
  void for_each(const Bits& b, Fn&& fn) const {
    for (int i = 0; i < words; ++i)
      for (std::uint64_t x = b.w[static_cast<std::size_t>(i)]; x; x &= x - 1) fn(i * 64 + std::countr_zero(x));
  }
  /// Bits strictly above index c.
  Bits above(const Bits& b, int c) const {
    Bits r = b;
    const int wi = c >> 6;
    for (int i = 0; i < wi; ++i) r.w[static_cast<std::size_t>(i)] = 0;
    const int sh = (c & 63) + 1;
    r.w[static_cast<std::size_t>(wi)] &= sh == 64 ? 0 : ~((std::uint64_t{1} << sh) - 1);
    return r;
  }
};

struct Budget {
  std::uint64_t max_nodes;
  std::chrono::steady_clock::time_point deadline;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};

  void tick(std::uint64_t& local) {
    ++local;
    const auto total = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (total > max_nodes) stop = true;
    if ((local & 1023) == 0 && std::chrono::steady_clock::now() > deadline) stop = true;
  }
};

/// Search below one fixed prefix with its own incumbent.
class Unit {
 public:
  Unit(const Context& ctx, Budget& budget, std::size_t floor) : ctx_(ctx), budget_(budget), best_(floor) {}

  void run(std::vector<int> prefix) {
    std::vector<Trace> traces;
    Bits pool;
    for (int i = 0; i < static_cast<int>(ctx_.cands.size()); ++i) pool.set(i);
    Mask common = ~Mask{0};
    std::vector<int> chosen;
    for (int c : prefix) {
      if (!pool.test(c)) return;
      pool = admit(c, pool, traces);
      common &= ctx_.cands[static_cast<std::size_t>(c)];
      chosen.push_back(c);
    }
    dfs(chosen, traces, common, pool);
  }

  std::size_t best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::map<CanonicalForm, Family>& classes() const { return classes_; }

 private:
  /// Candidates that can still join after c; extends the trace list in place.
  Bits admit(int c, const Bits& pool, std::vector<Trace>& traces) const {
    const Mask s = ctx_.cands[static_cast<std::size_t>(c)];
    Bits next = ctx_.and_(ctx_.above(pool, c), ctx_.meets[static_cast<std::size_t>(c)]);
    std::vector<Trace> fresh;
    for (const auto& t : traces)
      if (t.level <= ctx_.d - 2) fresh.push_back({t.set & s, t.level + 1});
    for (const auto& t : fresh) {
      ctx_.for_each(next, [&](int i) {
        if ((ctx_.cands[static_cast<std::size_t>(i)] & t.set) == 0) next.reset(i);
      });
    }
    // Traces at level d-1 only ever filter, which has just happened; keep
    // the ones that can still grow.
    if (ctx_.d - 2 >= 1) fresh.push_back({s, 1});
    for (const auto& t : fresh) {
      if (t.level > ctx_.d - 2) continue;
      auto it = std::find_if(traces.begin(), traces.end(), [&](const Trace& o) { return o.set == t.set; });
      if (it == traces.end()) traces.push_back(t);
      else it->level = std::min(it->level, t.level);
    }
    return next;
  }

  /// Greedy split of the pool into classes of pairwise disjoint sets; an
  /// intersecting family takes at most one set per class.
  int disjoint_class_bound(const Bits& pool) const {
    Mask unions[kMaxCandidates];
    int classes = 0;
    ctx_.for_each(pool, [&](int i) {
      const Mask s = ctx_.cands[static_cast<std::size_t>(i)];
      for (int c = 0; c < classes; ++c)
        if ((unions[c] & s) == 0) {
          unions[c] |= s;
          return;
        }
      unions[classes++] = s;
    });
    return classes;
  }

  void record(const std::vector<int>& chosen) {
    if (chosen.size() < best_) return;
    if (chosen.size() > best_) {
      best_ = chosen.size();
      classes_.clear();
    }
    std::vector<ElementSet> sets;
    sets.reserve(chosen.size());
    for (int c : chosen) sets.push_back(ElementSet::from_word(ctx_.cands[static_cast<std::size_t>(c)]));
    const Family f = Family::from_sets(ctx_.n, ctx_.k, std::move(sets));
    auto lab = canonical_labeling(f);
    classes_.emplace(std::move(lab.form), std::move(lab.relabeled));
  }

  void dfs(std::vector<int>& chosen, const std::vector<Trace>& traces, Mask common, const Bits& pool) {
    if (budget_.stop.load(std::memory_order_relaxed)) return;
    budget_.tick(nodes_);
    const std::size_t size = chosen.size();
    if (common == 0 && size >= 2) record(chosen);
    if (!ctx_.any(pool)) return;

    std::size_t bound = size + static_cast<std::size_t>(disjoint_class_bound(pool));
    if (common != 0) {
      // Every common point must be avoided by some later set Y, and all
      // later sets meet Y.
      std::size_t tightest = bound;
      for (Mask m = common; m; m &= m - 1) {
        const Bits escape = ctx_.and_(pool, ctx_.avoid[static_cast<std::size_t>(std::countr_zero(m))]);
        if (!ctx_.any(escape)) return;
        int widest = 0;
        ctx_.for_each(escape, [&](int y) { widest = std::max(widest, ctx_.count_and(pool, ctx_.meets[static_cast<std::size_t>(y)])); });
        tightest = std::min(tightest, size + static_cast<std::size_t>(widest));
      }
      bound = tightest;
    }
    if (bound < best_ || bound < 2) return;

    int remaining = ctx_.count(pool);
    bool halted = false;
    ctx_.for_each(pool, [&](int c) {
      if (halted) return;
      if (size + static_cast<std::size_t>(remaining) < best_ || budget_.stop.load(std::memory_order_relaxed)) {
        halted = true;
        return;
      }
      --remaining;
      std::vector<Trace> next_traces = traces;
      const Bits next = admit(c, pool, next_traces);
      chosen.push_back(c);
      dfs(chosen, next_traces, common & ctx_.cands[static_cast<std::size_t>(c)], next);
      chosen.pop_back();
    });
  }

  const Context& ctx_;
  Budget& budget_;
  std::size_t best_;
  std::uint64_t nodes_ = 0;
  std::map<CanonicalForm, Family> classes_;
};

int candidate_index(const std::vector<Mask>& cands, Mask m) {
  auto it = std::find(cands.begin(), cands.end(), m);
  return it == cands.end() ? -1 : static_cast<int>(it - cands.begin());
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("DWISE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, requested);
}

SearchReport search_max(int n, int k, int d, const SearchOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (n > 64) throw PreconditionError("search supports n <= 64");
  Params{n, k, d}.validate();
  if (binomial(n, k) > kMaxCandidates)
    throw PreconditionError("search supports at most " + std::to_string(kMaxCandidates) + " candidate sets, C(n,k) = " + std::to_string(binomial(n, k)));

  Context ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.d = d;
  for_each_k_subset(n, k, [&](const ElementSet& s) { ctx.cands.push_back(s.word()); });
  const int m = static_cast<int>(ctx.cands.size());
  ctx.words = (m + 63) / 64;
  ctx.meets.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (ctx.cands[static_cast<std::size_t>(i)] & ctx.cands[static_cast<std::size_t>(j)]) ctx.meets[static_cast<std::size_t>(i)].set(j);
  ctx.avoid.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < m; ++j)
      if (!((ctx.cands[static_cast<std::size_t>(j)] >> x) & 1U)) ctx.avoid[static_cast<std::size_t>(x)].set(j);

  std::size_t floor = 0;
  if (options.seed_with_constructions && d <= k && n >= k + 1) {
    for (auto kind : {FamilyKind::H, FamilyKind::A, FamilyKind::B}) {
      const Family f = generate(kind, n, k, d);
      if (is_non_trivial(f) && is_d_wise_intersecting(f, d)) floor = std::max(floor, f.size());
    }
  }

  // Work units are fixed prefixes of three members, listed in candidate order.
  std::vector<std::vector<int>> prefixes;
  std::vector<std::pair<int, int>> seconds;
  if (options.symmetry_breaking) {
    for (int j = k - 1; j >= 0; --j) {
      if (2 * k - j > n) continue;
      Mask rep = 0;
      for (int e = 0; e < j; ++e) rep |= Mask{1} << e;
      for (int e = k; e < 2 * k - j; ++e) rep |= Mask{1} << e;
      seconds.emplace_back(0, candidate_index(ctx.cands, rep));
    }
  } else {
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) seconds.emplace_back(a, b);
  }
  std::sort(seconds.begin(), seconds.end());
  for (const auto& [a, b] : seconds) {
    const Mask sa = ctx.cands[static_cast<std::size_t>(a)];
    const Mask sb = ctx.cands[static_cast<std::size_t>(b)];
    if ((sa & sb) == 0) continue;
    for (int c = b + 1; c < m; ++c) {
      const Mask sc = ctx.cands[static_cast<std::size_t>(c)];
      if ((sa & sc) && (sb & sc) && (d == 2 || (sa & sb & sc))) prefixes.push_back({a, b, c});
    }
  }

  Budget budget{options.max_nodes, started + std::chrono::milliseconds(static_cast<std::int64_t>(options.max_seconds * 1000.0))};
  std::vector<std::unique_ptr<Unit>> units(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      units[i] = std::make_unique<Unit>(ctx, budget, floor);
      units[i]->run(prefixes[i]);
    }
  };
  const unsigned pool = std::min<unsigned>(resolve_threads(options.threads), std::max<std::size_t>(1, prefixes.size()));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < pool; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }

  SearchReport rep;
  rep.params = {n, k, d};
  std::map<CanonicalForm, Family> merged;
  std::size_t best = 0;
  for (const auto& u : units) {
    if (!u) continue;
    rep.nodes_explored += u->nodes();
    if (u->classes().empty()) continue;
    if (u->best() > best) {
      best = u->best();
      merged.clear();
    }
    if (u->best() == best)
      for (const auto& [form, fam] : u->classes()) merged.emplace(form, fam);
  }
  rep.max_size = merged.empty() ? 0 : best;
  for (auto& [form, fam] : merged) rep.iso_classes.push_back({fam, form, classify_extremal(fam, d)});
  rep.exhausted = !budget.stop.load();
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  return rep;
}

std::string SearchReport::to_json(bool include_elapsed) const {
  nlohmann::ordered_json doc;
  doc["params"] = {{"n", params.n}, {"k", params.k}, {"d", params.d}};
  doc["max_size"] = max_size;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : iso_classes) {
    nlohmann::ordered_json entry;
    entry["classification"] = c.classification;
    entry["sets"] = c.family.to_lists();
    classes.push_back(std::move(entry));
  }
  doc["iso_classes"] = std::move(classes);
  doc["nodes"] = nodes_explored;
  if (include_elapsed) doc["elapsed_ms"] = elapsed.count();
  doc["exhausted"] = exhausted;
  return doc.dump();
}

Family saturate(const Family& f, int d) {
  if (!is_d_wise_intersecting(f, d)) throw PreconditionError("saturate needs a d-wise intersecting family");
  if (binomial(f.n(), f.k()) > 50'000'000) throw PreconditionError("C(n, k) too large to saturate");
  std::unordered_map<ElementSet, int, ElementSetHash> traces;
  auto absorb = [&](const ElementSet& s) {
    std::vector<std::pair<ElementSet, int>> fresh;
    for (const auto& [t, level] : traces)
      if (level + 1 <= d - 1) fresh.emplace_back(t & s, level + 1);
    fresh.emplace_back(s, 1);
    for (const auto& [t, level] : fresh) {
      auto [it, inserted] = traces.emplace(t, level);
      if (!inserted) it->second = std::min(it->second, level);
    }
  };
  for (const auto& s : f) absorb(s);
  std::vector<ElementSet> members(f.sets());
  // Adding sets only adds constraints, so one pass in lexicographic order
  // visits exactly the sets a restart-from-the-top loop would admit.
  for_each_k_subset(f.n(), f.k(), [&](const ElementSet& c) {
    if (f.contains(c)) return;
    for (const auto& [t, level] : traces)
      if (!t.intersects(c)) return;
    members.push_back(c);
    absorb(c);
  });
  return Family::from_sets(f.n(), f.k(), std::move(members));
}

}  // namespace dwise
