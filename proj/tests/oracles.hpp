#pragma once

// Reference implementations for tests. They use plain sorted vectors and
// direct enumeration so that they share no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<int>;  // 1-based, ascending
using Fam = std::vector<Set>;

inline Set meet(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool has(const Set& a, int x) { return std::binary_search(a.begin(), a.end(), x); }

inline std::vector<Set> subsets(int n, int k) {
  std::vector<Set> out;
  Set cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = from; x <= n; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

inline int count_in(const Set& a, int lo, int hi) {
  int c = 0;
  for (int x : a) c += (x >= lo && x <= hi);
  return c;
}

/// Set-builder definitions of the three constructions, read literally.
inline Fam family_a(int n, int k, int d) {
  Fam out;
  for (auto& s : subsets(n, k))
    if (count_in(s, 1, d + 1) >= d) out.push_back(s);
  return out;
}

inline Fam family_h(int n, int k, int d) {
  std::set<Set> out;
  for (auto& s : subsets(n, k))
    if (count_in(s, 1, d - 1) == d - 1 && count_in(s, d, k + 1) > 0) out.insert(s);
  for (int i = 1; i <= d - 1; ++i) {
    Set s;
    for (int x = 1; x <= k + 1; ++x)
      if (x != i) s.push_back(x);
    out.insert(s);
  }
  return {out.begin(), out.end()};
}

inline Fam family_b(int n, int k, int d) {
  Fam out;
  for (auto& s : subsets(n, k)) {
    const bool first = count_in(s, 1, d - 1) == d - 2 && count_in(s, d, k) == k - d + 1;
    const bool second = count_in(s, 1, d - 1) == d - 1 && count_in(s, d, k) > 0;
    if (first || second) out.push_back(s);
  }
  return out;
}

/// Every subfamily of at most d members has a common point.
inline bool d_wise(const Fam& f, int d) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, Set)> rec = [&](std::size_t from, Set common) {
    if (common.empty() && !pick.empty()) return false;
    if (static_cast<int>(pick.size()) == d) return true;
    for (std::size_t i = from; i < f.size(); ++i) {
      pick.push_back(i);
      const bool ok = rec(i + 1, pick.size() == 1 ? f[i] : meet(common, f[i]));
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0, {});
}

inline Set common(const Fam& f, int n) {
  Set c;
  for (int x = 1; x <= n; ++x) c.push_back(x);
  for (auto& s : f) c = meet(c, s);
  return c;
}

/// Maximum number of pairwise disjoint members, by plain include/exclude.
inline int max_packing(const Fam& sets) {
  int best = 0;
  std::vector<int> used;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int taken) {
    best = std::max(best, taken);
    if (i == sets.size() || taken + static_cast<int>(sets.size() - i) <= best) return;
    bool free = true;
    for (int x : sets[i])
      if (std::find(used.begin(), used.end(), x) != used.end()) free = false;
    if (free) {
      used.insert(used.end(), sets[i].begin(), sets[i].end());
      rec(i + 1, taken + 1);
      used.resize(used.size() - sets[i].size());
    }
    rec(i + 1, taken);
  };
  rec(0, 0);
  return best;
}

/// Petal packing number of X: matching number of the link.
inline int core_degree(const Fam& f, const Set& x) {
  Fam petals;
  for (auto& s : f)
    if (std::includes(s.begin(), s.end(), x.begin(), x.end())) {
      Set p;
      std::set_difference(s.begin(), s.end(), x.begin(), x.end(), std::back_inserter(p));
      petals.push_back(p);
    }
  return max_packing(petals);
}

inline std::int64_t choose(std::int64_t m, std::int64_t r) {
  if (r < 0 || m < 0 || r > m) return 0;
  std::int64_t v = 1;
  for (std::int64_t i = 1; i <= r; ++i) v = v * (m - r + i) / i;
  return v;
}

/// Fam with random distinct k-sets.
inline Fam random_family(std::mt19937_64& rng, int n, int k, int m) {
  std::set<Set> out;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  const auto total = choose(n, k);
  while (static_cast<std::int64_t>(out.size()) < std::min<std::int64_t>(m, total)) {
    for (int i = 0; i < k; ++i) std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i + static_cast<int>(rng() % static_cast<std::uint64_t>(n - i)))]);
    Set s(pool.begin(), pool.begin() + k);
    std::sort(s.begin(), s.end());
    out.insert(s);
  }
  return {out.begin(), out.end()};
}

/// Exhaustive maximum size of a non-trivial d-wise family, by plain
/// backtracking over candidates in order. Only for tiny parameters.
inline int max_nontrivial(int n, int k, int d) {
  const auto cands = subsets(n, k);
  int best = 0;
  Fam cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) > best && common(cur, n).empty()) best = static_cast<int>(cur.size());
    if (static_cast<int>(cur.size() + cands.size() - from) <= best) return;
    for (std::size_t i = from; i < cands.size(); ++i) {
      cur.push_back(cands[i]);
      if (d_wise(cur, d)) rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace oracle
