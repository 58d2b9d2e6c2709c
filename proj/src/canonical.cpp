#include "dwise/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "dwise/constructions.hpp"

namespace dwise {
namespace {

using Mask = std::uint64_t;

std::vector<std::uint8_t> encode(int n, int k, const std::vector<Mask>& sorted_masks) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + sorted_masks.size() * 8);
  out.push_back(static_cast<std::uint8_t>(n));
  out.push_back(static_cast<std::uint8_t>(k));
  const auto m = static_cast<std::uint32_t>(sorted_masks.size());
  for (int sh = 24; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(m >> sh));
  for (Mask x : sorted_masks)
    for (int sh = 56; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(x >> sh));
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

class Canonizer {
 public:
  explicit Canonizer(const Family& f) : n_(f.n()), k_(f.k()), incidence_(static_cast<std::size_t>(f.n())) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      sets_.push_back(f[i].word());
      f[i].for_each([&](int e) { incidence_[static_cast<std::size_t>(e)].push_back(static_cast<int>(i)); });
    }
    std::map<std::vector<int>, int> twin_ids;
    for (const auto& inc : incidence_) twin_.push_back(twin_ids.emplace(inc, static_cast<int>(twin_ids.size())).first->second);
  }

  void run() {
    std::vector<int> colors(static_cast<std::size_t>(n_), 0);
    path_.assign(static_cast<std::size_t>(n_) + 1, -1);
    explored_.assign(static_cast<std::size_t>(n_) + 1, {});
    dfs(std::move(colors), 0);
  }

  const std::vector<Mask>& best() const { return best_; }
  const std::vector<int>& best_label() const { return best_label_; }

 private:
  void refine(std::vector<int>& colors) const {
    int cells = 1 + *std::max_element(colors.begin(), colors.end());
    std::vector<std::vector<int>> set_sig(sets_.size());
    std::vector<int> set_color(sets_.size());
    std::vector<std::vector<int>> elem_sig(static_cast<std::size_t>(n_));
    while (true) {
      for (std::size_t i = 0; i < sets_.size(); ++i) {
        auto& sig = set_sig[i];
        sig.clear();
        for (Mask w = sets_[i]; w; w &= w - 1) sig.push_back(colors[static_cast<std::size_t>(std::countr_zero(w))]);
        std::sort(sig.begin(), sig.end());
      }
      rank_into(set_sig, set_color);
      for (int e = 0; e < n_; ++e) {
        auto& sig = elem_sig[static_cast<std::size_t>(e)];
        sig.clear();
        sig.push_back(colors[static_cast<std::size_t>(e)]);
        for (int i : incidence_[static_cast<std::size_t>(e)]) sig.push_back(set_color[static_cast<std::size_t>(i)]);
        std::sort(sig.begin() + 1, sig.end());
      }
      const int fresh = rank_into(elem_sig, colors);
      if (fresh == cells) return;
      cells = fresh;
    }
  }

  /// Dense ranks of the signatures in sorted order; returns the number of ranks.
  static int rank_into(const std::vector<std::vector<int>>& sigs, std::vector<int>& out) {
    std::vector<std::size_t> order(sigs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });
    int r = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || sigs[order[i]] != sigs[order[i - 1]]) ++r;
      out[order[i]] = r;
    }
    return r + 1;
  }

  static std::vector<int> individualize(const std::vector<int>& colors, int v) {
    const int c = colors[static_cast<std::size_t>(v)];
    std::vector<int> out(colors);
    for (std::size_t e = 0; e < out.size(); ++e)
      if (colors[e] > c || (colors[e] == c && static_cast<int>(e) != v)) ++out[e];
    return out;
  }

  bool fixes_prefix(const std::vector<int>& g, int depth) const {
    for (int i = 0; i < depth; ++i) {
      const int v = path_[static_cast<std::size_t>(i)];
      if (g[static_cast<std::size_t>(v)] != v) return false;
    }
    return true;
  }

  /// True when v is equivalent to an earlier child at this depth.
  bool prunable(int v, int depth, bool include_last) {
    const auto& seen = explored_[static_cast<std::size_t>(depth)];
    const std::size_t upto = include_last ? seen.size() : seen.size() - 1;
    for (std::size_t i = 0; i < upto; ++i)
      if (twin_[static_cast<std::size_t>(seen[i])] == twin_[static_cast<std::size_t>(v)] && seen[i] != v) return true;
    UnionFind uf(n_);
    bool any = false;
    for (const auto& g : generators_) {
      if (!fixes_prefix(g, depth)) continue;
      any = true;
      for (int e = 0; e < n_; ++e) uf.unite(e, g[static_cast<std::size_t>(e)]);
    }
    if (!any) return false;
    for (std::size_t i = 0; i < upto; ++i)
      if (seen[i] != v && uf.find(seen[i]) == uf.find(v)) return true;
    return false;
  }

  /// Returns -1 to continue normally, or the depth whose current child
  /// turned out to be redundant.
  int dfs(std::vector<int> colors, int depth) {
    refine(colors);
    std::vector<int> count(static_cast<std::size_t>(n_), 0);
    for (int c : colors) ++count[static_cast<std::size_t>(c)];
    int target = -1;
    for (int c = 0; c < n_; ++c)
      if (count[static_cast<std::size_t>(c)] > 1) {
        target = c;
        break;
      }
    if (target < 0) return leaf(colors, depth);

    auto& seen = explored_[static_cast<std::size_t>(depth)];
    seen.clear();
    for (int v = 0; v < n_; ++v) {
      if (colors[static_cast<std::size_t>(v)] != target) continue;
      if (!seen.empty() && prunable(v, depth, true)) continue;
      seen.push_back(v);
      path_[static_cast<std::size_t>(depth)] = v;
      const int jump = dfs(individualize(colors, v), depth + 1);
      if (jump >= 0 && jump < depth) return jump;
    }
    return -1;
  }

  int leaf(const std::vector<int>& label, int depth) {
    std::vector<Mask> enc;
    enc.reserve(sets_.size());
    for (Mask s : sets_) {
      Mask r = 0;
      for (Mask w = s; w; w &= w - 1) r |= Mask{1} << label[static_cast<std::size_t>(std::countr_zero(w))];
      enc.push_back(r);
    }
    std::sort(enc.begin(), enc.end());
    if (best_label_.empty() || enc < best_) {
      best_ = std::move(enc);
      best_label_ = label;
      return -1;
    }
    if (enc != best_) return -1;

    // Same encoding: best^-1 ∘ label is an automorphism.
    std::vector<int> inv(static_cast<std::size_t>(n_));
    for (int e = 0; e < n_; ++e) inv[static_cast<std::size_t>(best_label_[static_cast<std::size_t>(e)])] = e;
    std::vector<int> g(static_cast<std::size_t>(n_));
    bool identity = true;
    for (int e = 0; e < n_; ++e) {
      g[static_cast<std::size_t>(e)] = inv[static_cast<std::size_t>(label[static_cast<std::size_t>(e)])];
      identity &= g[static_cast<std::size_t>(e)] == e;
    }
    if (identity) return -1;
    generators_.push_back(std::move(g));
    for (int i = 0; i < depth; ++i)
      if (prunable(path_[static_cast<std::size_t>(i)], i, false)) return i;
    return -1;
  }

  int n_;
  int k_;
  std::vector<Mask> sets_;
  std::vector<std::vector<int>> incidence_;
  std::vector<int> twin_;
  std::vector<int> path_;
  std::vector<std::vector<int>> explored_;
  std::vector<std::vector<int>> generators_;
  std::vector<Mask> best_;
  std::vector<int> best_label_;
};

}  // namespace

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(encoding.size() * 2);
  for (auto b : encoding) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

Family relabel(const Family& f, const std::vector<int>& perm) {
  std::vector<ElementSet> out;
  out.reserve(f.size());
  for (const auto& s : f) {
    ElementSet r;
    s.for_each([&](int e) { r.insert(perm[static_cast<std::size_t>(e)]); });
    out.push_back(r);
  }
  return Family::from_sets(f.n(), f.k(), std::move(out));
}

CanonicalLabeling canonical_labeling(const Family& f) {
  if (f.n() > 64) throw PreconditionError("canonical forms support n <= 64");
  if (f.n() == 0) return {{encode(0, f.k(), {})}, {}, f};
  Canonizer c(f);
  c.run();
  CanonicalLabeling out;
  out.form.encoding = encode(f.n(), f.k(), c.best());
  out.label = c.best_label();
  out.relabeled = relabel(f, out.label);
  return out;
}

CanonicalForm canonical_form(const Family& f) { return canonical_labeling(f).form; }

bool is_isomorphic(const Family& a, const Family& b) {
  if (a.n() != b.n() || a.k() != b.k() || a.size() != b.size()) return false;
  auto da = degrees(a);
  auto db = degrees(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a) == canonical_form(b);
}

namespace {

std::vector<int> complete_permutation(int n, const std::vector<int>& partial) {
  std::vector<int> perm(partial);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int v : perm)
    if (v >= 0) used[static_cast<std::size_t>(v)] = 1;
  int next = 0;
  for (auto& v : perm) {
    if (v >= 0) continue;
    while (used[static_cast<std::size_t>(next)]) ++next;
    v = next;
    used[static_cast<std::size_t>(next)] = 1;
  }
  return perm;
}

class Embedder {
 public:
  Embedder(const Family& small, const Family& big, std::uint64_t max_nodes)
      : n_(small.n()), small_(small), max_nodes_(max_nodes), assign_(static_cast<std::size_t>(small.n()), -1), used_(static_cast<std::size_t>(small.n()), 0) {
    for (const auto& s : big) big_sets_.insert(s.word());
    deg_small_ = degrees(small);
    deg_big_ = degrees(big);
    pair_small_ = pair_counts(small);
    pair_big_ = pair_counts(big);
    std::vector<char> placed(static_cast<std::size_t>(n_), 0);
    for (const auto& s : small) {
      s.for_each([&](int e) {
        if (!placed[static_cast<std::size_t>(e)]) {
          placed[static_cast<std::size_t>(e)] = 1;
          order_.push_back(e);
        }
      });
    }
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (std::size_t p = 0; p < order_.size(); ++p) pos[static_cast<std::size_t>(order_[p])] = static_cast<int>(p);
    closing_.resize(order_.size());
    for (const auto& s : small) {
      int last = -1;
      s.for_each([&](int e) { last = std::max(last, pos[static_cast<std::size_t>(e)]); });
      if (last >= 0) closing_[static_cast<std::size_t>(last)].push_back(s.word());
    }
  }

  std::optional<std::vector<int>> run() {
    if (dfs(0)) return complete_permutation(n_, assign_);
    return std::nullopt;
  }

 private:
  std::vector<int> pair_counts(const Family& f) const {
    std::vector<int> pc(static_cast<std::size_t>(n_ * n_), 0);
    for (const auto& s : f) {
      const auto el = s.elements();
      for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = 0; j < el.size(); ++j)
          if (i != j) ++pc[static_cast<std::size_t>(el[i] * n_ + el[j])];
    }
    return pc;
  }

  bool consistent(int x, int img, std::size_t p) const {
    if (deg_big_[static_cast<std::size_t>(img)] < deg_small_[static_cast<std::size_t>(x)]) return false;
    for (std::size_t q = 0; q < p; ++q) {
      const int y = order_[q];
      const int need = pair_small_[static_cast<std::size_t>(x * n_ + y)];
      if (need > 0 && pair_big_[static_cast<std::size_t>(img * n_ + assign_[static_cast<std::size_t>(y)])] < need) return false;
    }
    return true;
  }

  bool dfs(std::size_t p) {
    if (p == order_.size()) return true;
    if (++nodes_ > max_nodes_) throw Error("embedding search exceeded its node budget");
    const int x = order_[p];
    for (int step = -1; step < n_; ++step) {
      const int img = step < 0 ? x : step;
      if (step >= 0 && step == x) continue;
      if (used_[static_cast<std::size_t>(img)] || !consistent(x, img, p)) continue;
      assign_[static_cast<std::size_t>(x)] = img;
      used_[static_cast<std::size_t>(img)] = 1;
      bool ok = true;
      for (Mask s : closing_[p]) {
        Mask r = 0;
        for (Mask w = s; w; w &= w - 1) r |= Mask{1} << assign_[static_cast<std::size_t>(std::countr_zero(w))];
        if (!big_sets_.count(r)) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(p + 1)) return true;
      assign_[static_cast<std::size_t>(x)] = -1;
      used_[static_cast<std::size_t>(img)] = 0;
    }
    return false;
  }

  int n_;
  const Family& small_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::unordered_set<Mask> big_sets_;
  std::vector<int> deg_small_, deg_big_, pair_small_, pair_big_;
  std::vector<int> order_;
  std::vector<std::vector<Mask>> closing_;
  std::vector<int> assign_;
  std::vector<char> used_;
};

/// Permutation sending the listed groups, in order, onto 0, 1, 2, ...
std::vector<int> stack_groups(int n, std::initializer_list<ElementSet> groups) {
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  int next = 0;
  ElementSet placed;
  for (const auto& g : groups)
    g.for_each([&](int e) {
      if (!placed.contains(e)) {
        perm[static_cast<std::size_t>(e)] = next++;
        placed.insert(e);
      }
    });
  for (int e = 0; e < n; ++e)
    if (!placed.contains(e)) perm[static_cast<std::size_t>(e)] = next++;
  return perm;
}

/// First size-r subset of `pool` meeting every residual, or nullopt.
std::optional<ElementSet> hitting_subset(const ElementSet& pool, int r, const std::vector<ElementSet>& residuals) {
  const auto elems = pool.elements();
  if (static_cast<int>(elems.size()) < r) return std::nullopt;
  std::optional<ElementSet> found;
  for_each_k_subset(static_cast<int>(elems.size()), r, [&](const ElementSet& pick) {
    if (found) return;
    ElementSet t;
    pick.for_each([&](int i) { t.insert(elems[static_cast<std::size_t>(i)]); });
    for (const auto& res : residuals)
      if (!res.intersects(t)) return;
    found = t;
  });
  return found;
}

}  // namespace

std::optional<std::vector<int>> find_embedding(const Family& small, const Family& big, std::uint64_t max_nodes) {
  if (small.n() != big.n() || small.k() != big.k()) throw PreconditionError("embedding needs families on the same (n, k)");
  if (small.n() > 64) throw PreconditionError("embedding supports n <= 64");
  if (small.size() > big.size()) return std::nullopt;
  Embedder emb(small, big, max_nodes);
  return emb.run();
}

std::optional<std::vector<int>> embed_into_a(const Family& f, int d) {
  const int n = f.n();
  if (d + 1 > n) return std::nullopt;
  std::optional<std::vector<int>> out;
  for_each_k_subset(n, d + 1, [&](const ElementSet& t) {
    if (out) return;
    for (const auto& a : f)
      if ((a & t).size() < d) return;
    out = stack_groups(n, {t});
  });
  return out;
}

std::optional<std::vector<int>> embed_into_h(const Family& f, int d) {
  const int n = f.n();
  const int k = f.k();
  if (d < 2 || d > k || n < k + 1) return std::nullopt;
  const ElementSet ground = ElementSet::prefix(n);
  std::optional<std::vector<int>> out;
  for_each_k_subset(n, d - 1, [&](const ElementSet& kernel) {
    if (out) return;
    std::vector<ElementSet> inside;
    std::vector<ElementSet> outside;
    for (const auto& a : f) (kernel.is_subset_of(a) ? inside : outside).push_back(a - kernel);
    if (!outside.empty()) {
      // Each such set is W \ {i} for a kernel point i, which pins W down.
      ElementSet w;
      bool ok = true;
      for (const auto& a : f) {
        if (kernel.is_subset_of(a)) continue;
        const ElementSet missing = kernel - a;
        if (missing.size() != 1) {
          ok = false;
          break;
        }
        const ElementSet cand = a | missing;
        if (w.empty()) w = cand;
        else if (w != cand) {
          ok = false;
          break;
        }
      }
      if (!ok || w.size() != k + 1) return;
      const ElementSet rim = w - kernel;
      for (const auto& res : inside)
        if (!res.intersects(rim)) return;
      out = stack_groups(n, {kernel, rim});
      return;
    }
    auto rim = hitting_subset(ground - kernel, k - d + 2, inside);
    if (rim) out = stack_groups(n, {kernel, *rim});
  });
  return out;
}

std::optional<std::vector<int>> embed_into_b(const Family& f, int d) {
  const int n = f.n();
  const int k = f.k();
  if (d < 2 || d > k || n < k) return std::nullopt;
  const ElementSet ground = ElementSet::prefix(n);
  std::optional<std::vector<int>> out;
  for_each_k_subset(n, d - 1, [&](const ElementSet& kernel) {
    if (out) return;
    std::vector<ElementSet> inside;
    ElementSet pool = ground - kernel;
    bool ok = true;
    for (const auto& a : f) {
      if (kernel.is_subset_of(a)) {
        inside.push_back(a - kernel);
      } else if ((a & kernel).size() == d - 2) {
        pool &= a;
      } else {
        ok = false;
        break;
      }
    }
    if (!ok) return;
    auto window = hitting_subset(pool, k - d + 1, inside);
    if (window) out = stack_groups(n, {kernel, *window});
  });
  return out;
}

std::string classify_extremal(const Family& f, int d) {
  const int n = f.n();
  const int k = f.k();
  const std::pair<FamilyKind, std::optional<std::vector<int>> (*)(const Family&, int)> kinds[] = {
      {FamilyKind::A, &embed_into_a}, {FamilyKind::H, &embed_into_h}, {FamilyKind::B, &embed_into_b}};
  for (const auto& [kind, embed] : kinds) {
    try {
      check_construction_params(kind, n, k, d);
    } catch (const PreconditionError&) {
      continue;
    }
    if (closed_size(kind, n, k, d) != static_cast<std::int64_t>(f.size())) continue;
    if (embed(f, d)) return std::string(to_string(kind));
  }
  return "other";
}

}  // namespace dwise
