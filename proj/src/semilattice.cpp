#include "dwise/semilattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "dwise/delta_systems.hpp"

namespace dwise {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty() || tok == "{}") continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw PreconditionError("expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

Partition::Partition(int n, std::vector<ElementSet> blocks) : blocks_(std::move(blocks)), owner_(static_cast<std::size_t>(n), 0) {
  if (blocks_.size() > 32) throw PreconditionError("at most 32 blocks are supported");
  const ElementSet ground = ElementSet::prefix(n);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    if (b.empty()) throw PreconditionError("block " + std::to_string(i + 1) + " is empty");
    if (!b.is_subset_of(ground)) throw PreconditionError("block " + std::to_string(i + 1) + " leaves the ground set");
    b.for_each([&](int e) {
      auto& o = owner_[static_cast<std::size_t>(e)];
      if (o != 0) throw PreconditionError("element " + std::to_string(e + 1) + " lies in blocks " + std::to_string(o) + " and " + std::to_string(i + 1));
      o = static_cast<int>(i) + 1;
    });
  }
}

BlockSet Partition::project(const ElementSet& s) const {
  BlockSet out = 0;
  s.for_each([&](int e) {
    const int b = owner_[static_cast<std::size_t>(e)];
    if (b > 0) out |= BlockSet{1} << (b - 1);
  });
  return out;
}

bool Partition::is_transversal(const ElementSet& s) const {
  if (s.size() != k()) return false;
  for (const auto& b : blocks_)
    if ((s & b).size() != 1) return false;
  return true;
}

Partition Partition::parse(int n, const std::string& spec) {
  std::vector<ElementSet> blocks;
  for (const auto& part : split(spec, '|')) {
    ElementSet b;
    for (int e : parse_ints(part)) {
      if (e < 1 || e > n) throw PreconditionError("block element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
      b.insert(e - 1);
    }
    blocks.push_back(b);
  }
  return Partition(n, std::move(blocks));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << '|';
    const auto l = to_list(blocks_[i]);
    for (std::size_t j = 0; j < l.size(); ++j) os << (j ? "," : "") << l[j];
  }
  return os.str();
}

IntersectionPattern::IntersectionPattern(std::vector<BlockSet> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool IntersectionPattern::contains(BlockSet b) const { return std::binary_search(members_.begin(), members_.end(), b); }

bool IntersectionPattern::is_intersection_closed() const {
  for (auto x : members_)
    for (auto y : members_)
      if (!contains(x & y)) return false;
  return true;
}

IntersectionPattern IntersectionPattern::parse(const std::string& spec) {
  std::vector<BlockSet> members;
  if (spec.empty()) return IntersectionPattern{};
  for (const auto& part : split(spec, ';')) {
    BlockSet b = 0;
    for (int i : parse_ints(part)) {
      if (i < 1 || i > 32) throw PreconditionError("block index " + std::to_string(i) + " outside [1, 32]");
      b |= BlockSet{1} << (i - 1);
    }
    members.push_back(b);
  }
  return IntersectionPattern(std::move(members));
}

std::vector<int> block_list(BlockSet b) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1U) out.push_back(i + 1);
  return out;
}

std::string IntersectionPattern::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ';';
    const auto l = block_list(members_[i]);
    if (l.empty()) os << "{}";
    for (std::size_t j = 0; j < l.size(); ++j) os << (j ? "," : "") << l[j];
  }
  return os.str();
}

namespace {

void require_transversal(const Family& h, const Partition& p) {
  for (const auto& e : h) {
    if (p.is_transversal(e)) continue;
    std::string where = "outside every block";
    for (int b = 0; b < p.k(); ++b) {
      const int hits = (e & p.blocks()[static_cast<std::size_t>(b)]).size();
      if (hits != 1) {
        where = "block " + std::to_string(b + 1) + " met " + std::to_string(hits) + " times";
        break;
      }
    }
    throw PreconditionError("edge " + format_set(e) + " is not a transversal: " + where);
  }
}

IntersectionPattern pattern_unchecked(const Family& h, const Partition& p, const ElementSet& e) {
  std::vector<BlockSet> projs;
  for (const auto& f : h)
    if (f != e) projs.push_back(p.project(f & e));
  return IntersectionPattern(std::move(projs));
}

}  // namespace

IntersectionPattern intersection_pattern(const Family& h, const Partition& p, const ElementSet& e) {
  require_transversal(h, p);
  if (!h.contains(e)) throw PreconditionError("edge " + format_set(e) + " is not in the family");
  return pattern_unchecked(h, p, e);
}

int rank(const IntersectionPattern& j, int k) {
  if (k < 0 || k > 20) throw PreconditionError("rank supports k <= 20");
  for (int size = 0; size <= k; ++size) {
    bool found = false;
    for_each_k_subset(k, size, [&](const ElementSet& pick) {
      if (found) return;
      const auto e = static_cast<BlockSet>(pick.word());
      const bool covered = std::any_of(j.members().begin(), j.members().end(), [&](BlockSet x) { return (e & ~x) == 0; });
      if (!covered) found = true;
    });
    if (found) return size;
  }
  return k + 1;
}

HomogeneityReport check_homogeneous(const Family& h, const Partition& p, const IntersectionPattern& j, int s) {
  require_transversal(h, p);
  HomogeneityReport rep;
  std::map<std::vector<int>, int> degree_cache;
  for (const auto& e : h) {
    const auto pat = pattern_unchecked(h, p, e);
    if (pat != j) {
      rep.ok = false;
      rep.bad_edge = e;
      rep.message = "edge " + format_set(e) + " has pattern " + pat.to_string() + ", expected " + j.to_string();
      return rep;
    }
  }
  for (const auto& e : h) {
    for (const auto& f : h) {
      if (f == e) continue;
      const ElementSet t = f & e;
      const auto key = to_list(t);
      auto it = degree_cache.find(key);
      if (it == degree_cache.end()) it = degree_cache.emplace(key, core_degree(h, t, s)).first;
      if (it->second < s) {
        rep.ok = false;
        rep.bad_trace = t;
        rep.trace_degree = it->second;
        rep.message = "trace " + format_set(t) + " has core degree " + std::to_string(it->second) + " < " + std::to_string(s);
        return rep;
      }
    }
  }
  return rep;
}

Homogenized greedy_homogenize(const Family& h, int s) {
  if (h.empty()) throw PreconditionError("cannot homogenize the empty family");
  if (h.k() < 1 || h.k() > 32) throw PreconditionError("homogenizer supports 1 <= k <= 32");
  const int k = h.k();
  const int n = h.n();

  // Blocks start as the points of the first edge; later edges either fit as
  // transversals (placing new points into their missing blocks, in block
  // order) or are dropped.
  std::vector<int> owner(static_cast<std::size_t>(n), 0);
  {
    int b = 1;
    h[0].for_each([&](int e) { owner[static_cast<std::size_t>(e)] = b++; });
  }
  std::vector<ElementSet> kept;
  for (const auto& e : h) {
    std::vector<int> tentative = owner;
    std::uint32_t seen = 0;
    bool fits = true;
    std::vector<int> fresh;
    e.for_each([&](int x) {
      const int b = tentative[static_cast<std::size_t>(x)];
      if (b == 0) {
        fresh.push_back(x);
      } else if ((seen >> (b - 1)) & 1U) {
        fits = false;
      } else {
        seen |= 1U << (b - 1);
      }
    });
    if (!fits) continue;
    int b = 1;
    for (int x : fresh) {
      while ((seen >> (b - 1)) & 1U) ++b;
      tentative[static_cast<std::size_t>(x)] = b;
      seen |= 1U << (b - 1);
    }
    owner = std::move(tentative);
    kept.push_back(e);
  }
  std::vector<ElementSet> blocks(static_cast<std::size_t>(k));
  for (int x = 0; x < n; ++x)
    if (owner[static_cast<std::size_t>(x)] > 0) blocks[static_cast<std::size_t>(owner[static_cast<std::size_t>(x)] - 1)].insert(x);
  Partition part(n, std::move(blocks));
  Family cur = Family::from_sets(n, k, std::move(kept));

  IntersectionPattern pattern;
  while (true) {
    std::map<IntersectionPattern, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < cur.size(); ++i) buckets[pattern_unchecked(cur, part, cur[i])].push_back(i);
    auto best = buckets.begin();
    for (auto it = buckets.begin(); it != buckets.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    if (buckets.size() == 1) {
      pattern = best->first;
      break;
    }
    cur = cur.subfamily(best->second);
  }

  int level = s;
  for (const auto& e : cur)
    for (const auto& f : cur)
      if (f != e) level = std::min(level, core_degree(cur, f & e, s));
  return {std::move(cur), std::move(part), std::move(pattern), level};
}

KeyLemmaReport key_lemma_check(const IntersectionPattern& j, int k, int d) {
  KeyLemmaReport rep;
  rep.levels_ok = std::all_of(j.members().begin(), j.members().end(), [&](BlockSet x) {
    const int c = std::popcount(x);
    return c >= d && c <= k - 1;
  });
  rep.unique_d_set = std::count_if(j.members().begin(), j.members().end(), [&](BlockSet x) { return std::popcount(x) == d; }) == 1;
  rep.ok = rep.levels_ok && rep.unique_d_set;
  return rep;
}

}  // namespace dwise
