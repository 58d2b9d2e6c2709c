#include "dwise/family.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace dwise {

void Params::validate() const {
  if (d < 2) throw PreconditionError("d must be at least 2 (got " + std::to_string(d) + ")");
  if (k < 1) throw PreconditionError("k must be at least 1 (got " + std::to_string(k) + ")");
  if (n < k) throw PreconditionError("n must be at least k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  if (n > kMaxGround) throw PreconditionError("n exceeds the supported ground set size " + std::to_string(kMaxGround));
}

void Family::check_shape(int n, int k) {
  if (n < 0 || n > kMaxGround) throw PreconditionError("ground set size out of range: " + std::to_string(n));
  if (k < 0 || k > n) throw PreconditionError("uniformity out of range: k=" + std::to_string(k));
}

Family Family::from_sets(int n, int k, std::vector<ElementSet> sets) {
  Family f(n, k);
  const ElementSet ground = ElementSet::prefix(n);
  for (const auto& s : sets) {
    if (!s.is_subset_of(ground)) throw PreconditionError("set " + format_set(s) + " leaves the ground set [1, " + std::to_string(n) + "]");
    if (s.size() != k) throw PreconditionError("set " + format_set(s) + " does not have " + std::to_string(k) + " elements");
  }
  std::sort(sets.begin(), sets.end(), LexLess{});
  auto dup = std::adjacent_find(sets.begin(), sets.end());
  if (dup != sets.end()) throw PreconditionError("duplicate set " + format_set(*dup));
  f.sets_ = std::move(sets);
  return f;
}

Family Family::from_lists(int n, int k, const std::vector<std::vector<int>>& lists) {
  std::vector<ElementSet> sets;
  sets.reserve(lists.size());
  for (const auto& l : lists) sets.push_back(from_list(l, n));
  return from_sets(n, k, std::move(sets));
}

bool Family::contains(const ElementSet& s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s, LexLess{});
}

ElementSet Family::support() const {
  ElementSet u;
  for (const auto& s : sets_) u |= s;
  return u;
}

Family Family::subfamily(const std::vector<std::size_t>& indices) const {
  std::vector<ElementSet> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(sets_.at(i));
  return from_sets(n_, k_, std::move(picked));
}

std::vector<std::vector<int>> Family::to_lists() const {
  std::vector<std::vector<int>> out;
  out.reserve(sets_.size());
  for (const auto& s : sets_) out.push_back(to_list(s));
  return out;
}

std::vector<int> to_list(const ElementSet& s) {
  std::vector<int> out;
  s.for_each([&](int e) { out.push_back(e + 1); });
  return out;
}

ElementSet from_list(const std::vector<int>& list, int n) {
  ElementSet s;
  for (int e : list) {
    if (e < 1 || e > n) throw PreconditionError("element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
    s.insert(e - 1);
  }
  return s;
}

std::string format_set(const ElementSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  s.for_each([&](int e) {
    if (!first) os << ',';
    os << e + 1;
    first = false;
  });
  os << '}';
  return os.str();
}

bool is_d_wise_intersecting(const Family& f, int d) {
  if (d < 2) throw PreconditionError("d must be at least 2");
  // Every distinct intersection of at most d-1 members seen so far, mapped to
  // the fewest members producing it. A new member is admissible iff it meets
  // all of them.
  std::unordered_map<ElementSet, int, ElementSetHash> traces;
  std::vector<std::pair<ElementSet, int>> fresh;
  for (const auto& s : f) {
    if (s.empty()) return false;
    fresh.clear();
    for (const auto& [t, level] : traces) {
      const ElementSet meet = s & t;
      if (meet.empty()) return false;
      if (level + 1 <= d - 1) fresh.emplace_back(meet, level + 1);
    }
    fresh.emplace_back(s, 1);
    for (const auto& [t, level] : fresh) {
      auto [it, inserted] = traces.emplace(t, level);
      if (!inserted && level < it->second) it->second = level;
    }
  }
  return true;
}

ElementSet common_intersection(const Family& f) {
  ElementSet acc = ElementSet::prefix(f.n());
  for (const auto& s : f) acc &= s;
  return acc;
}

namespace {

struct MinSearch {
  const std::vector<ElementSet>& sets;
  int m;
  int best = std::numeric_limits<int>::max();
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best_witness;

  void run(std::size_t start, const ElementSet& running) {
    if (best == 0) return;
    if (static_cast<int>(chosen.size()) == m) {
      const int sz = running.size();
      if (sz < best) {
        best = sz;
        best_witness = chosen;
      }
      return;
    }
    const std::size_t need = static_cast<std::size_t>(m) - chosen.size();
    for (std::size_t i = start; i + need <= sets.size(); ++i) {
      chosen.push_back(i);
      run(i + 1, running & sets[i]);
      chosen.pop_back();
      if (best == 0) return;
    }
  }
};

}  // namespace

MinIntersection min_m_wise_intersection(const Family& f, int m) {
  if (m < 2) throw PreconditionError("subfamily size must be at least 2");
  if (static_cast<std::size_t>(m) > f.size()) throw PreconditionError("subfamily size exceeds family");
  MinSearch search{f.sets(), m, std::numeric_limits<int>::max(), {}, {}};
  search.run(0, ElementSet::prefix(f.n()));
  return {search.best, search.best_witness};
}

Family link(const Family& f, const ElementSet& x) {
  const int xs = x.size();
  if (!x.is_subset_of(ElementSet::prefix(f.n()))) throw PreconditionError("link set leaves the ground set");
  std::vector<ElementSet> out;
  for (const auto& s : f)
    if (x.is_subset_of(s)) out.push_back(s - x);
  return Family::from_sets(f.n(), std::max(0, f.k() - xs), std::move(out));
}

std::vector<int> degrees(const Family& f) {
  std::vector<int> deg(static_cast<std::size_t>(f.n()), 0);
  for (const auto& s : f) s.for_each([&](int e) { ++deg[static_cast<std::size_t>(e)]; });
  return deg;
}

MinDegree min_degree(const Family& f) {
  if (f.empty()) throw PreconditionError("minimum degree of the empty family is undefined");
  const auto deg = degrees(f);
  const auto it = std::min_element(deg.begin(), deg.end());
  return {static_cast<int>(it - deg.begin()) + 1, *it};
}

std::map<std::vector<int>, std::size_t> trace_classes(const Family& f, const ElementSet& a) {
  std::map<std::vector<int>, std::size_t> out;
  for (const auto& s : f) ++out[to_list(s & a)];
  return out;
}

std::int64_t binomial(std::int64_t m, std::int64_t r) {
  if (r < 0 || m < 0 || r > m) return 0;
  r = std::min(r, m - r);
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    acc = acc * (m - r + i) / i;
    if (acc > std::numeric_limits<std::int64_t>::max()) throw Error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace dwise
