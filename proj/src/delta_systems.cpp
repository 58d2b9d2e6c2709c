#include "dwise/delta_systems.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

namespace dwise {

std::vector<ElementSet> DeltaSystem::edges() const {
  std::vector<ElementSet> out;
  out.reserve(petals.size());
  for (const auto& p : petals) out.push_back(core | p);
  return out;
}

bool DeltaSystem::is_valid(int k) const {
  const auto es = edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].size() != k || petals[i].intersects(core)) return false;
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if ((es[i] & es[j]) != core) return false;
  }
  return true;
}

namespace {

class Packer {
 public:
  Packer(const std::vector<ElementSet>& sets, int cap) : sets_(sets), cap_(cap) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      // An empty member is disjoint from everything, itself included once.
      if (sets_[i].empty()) chosen_.push_back(i);
      else cands.push_back(i);
    }
    best_ = chosen_;
    search(cands);
    return best_;
  }

 private:
  bool done() const { return static_cast<int>(best_.size()) >= cap_; }

  void search(const std::vector<std::size_t>& cands) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (done() || cands.empty()) return;

    ElementSet uni;
    int smallest = kMaxGround;
    for (auto i : cands) {
      uni |= sets_[i];
      smallest = std::min(smallest, sets_[i].size());
    }
    const std::size_t by_points = static_cast<std::size_t>(uni.size() / smallest);
    if (chosen_.size() + std::min(cands.size(), by_points) <= best_.size()) return;

    // Every packing either uses exactly one member through the smallest
    // uncovered point or avoids that point altogether.
    const int pivot = uni.first();
    std::vector<std::size_t> without_pivot;
    std::vector<std::size_t> through_pivot;
    for (auto i : cands) (sets_[i].contains(pivot) ? through_pivot : without_pivot).push_back(i);

    std::vector<std::size_t> next;
    for (auto t : through_pivot) {
      next.clear();
      for (auto i : without_pivot)
        if (!sets_[i].intersects(sets_[t])) next.push_back(i);
      chosen_.push_back(t);
      search(next);
      chosen_.pop_back();
      if (done()) return;
    }
    search(without_pivot);
  }

  const std::vector<ElementSet>& sets_;
  int cap_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<ElementSet> max_disjoint_subfamily(const std::vector<ElementSet>& sets, std::optional<int> cap) {
  Packer packer(sets, cap.value_or(static_cast<int>(sets.size()) + 1));
  std::vector<ElementSet> out;
  for (auto i : packer.run()) out.push_back(sets[i]);
  std::sort(out.begin(), out.end(), LexLess{});
  if (cap && static_cast<int>(out.size()) > *cap) out.resize(static_cast<std::size_t>(*cap));
  return out;
}

DeltaSystem max_delta_system(const Family& f, const ElementSet& x, std::optional<int> cap) {
  if (x.size() > f.k()) throw PreconditionError("core larger than the uniformity");
  const Family petals = link(f, x);
  return {x, max_disjoint_subfamily(petals.sets(), cap)};
}

int core_degree(const Family& f, const ElementSet& x, std::optional<int> cap) {
  return static_cast<int>(max_delta_system(f, x, cap).size());
}

SdSet large_core_sets(const Family& f, int d, int tau, unsigned threads) {
  if (d < 1 || d > f.k()) throw PreconditionError("large_core_sets requires 1 <= d <= k");
  if (tau < 1) throw PreconditionError("threshold must be at least 1");

  std::unordered_map<ElementSet, int, ElementSetHash> containing;
  for (const auto& s : f) {
    const auto elems = s.elements();
    for_each_k_subset(f.k(), d, [&](const ElementSet& pick) {
      ElementSet sub;
      pick.for_each([&](int i) { sub.insert(elems[static_cast<std::size_t>(i)]); });
      ++containing[sub];
    });
  }
  std::vector<ElementSet> cands;
  for (const auto& [sub, count] : containing)
    if (count >= tau) cands.push_back(sub);
  std::sort(cands.begin(), cands.end(), LexLess{});

  std::vector<char> keep(cands.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cands.size(); i = next++)
      keep[i] = core_degree(f, cands[i], tau) >= tau;
  };
  const unsigned pool = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(cands.size())));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < pool; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }

  std::vector<ElementSet> members;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (keep[i]) members.push_back(cands[i]);
  return {d, tau, Family::from_sets(f.n(), d, std::move(members))};
}

std::string_view to_string(SdShape shape) {
  switch (shape) {
    case SdShape::StarType: return "StarType";
    case SdShape::CompleteType: return "CompleteType";
    case SdShape::Both: return "Both";
    case SdShape::NotPairwiseIntersecting: return "NotPairwiseIntersecting";
    case SdShape::Neither: return "Neither";
  }
  return "?";
}

SdClassification classify_intersecting_dsets(const Family& s, int k, int d) {
  if (s.empty()) throw PreconditionError("classification needs at least one d-set");
  if (s.k() != d) throw PreconditionError("members must be " + std::to_string(d) + "-sets");

  SdClassification out;
  const auto& ms = s.sets();
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if ((ms[i] & ms[j]).size() < d - 1) {
        out.shape = SdShape::NotPairwiseIntersecting;
        out.witness = std::make_pair(ms[i], ms[j]);
        return out;
      }

  const ElementSet uni = s.support();
  ElementSet common = common_intersection(s);
  // A single set: keep its first d-1 points as the kernel.
  while (common.size() > d - 1) common.erase(common.last());
  const bool star = common.size() == d - 1 && uni.size() <= k + 1;
  const bool complete = uni.size() <= d + 1;

  std::vector<int> relabel(static_cast<std::size_t>(s.n()), 0);
  if (star) {
    out.kernel = common;
    out.window = uni;
    int next = 1;
    common.for_each([&](int e) { relabel[static_cast<std::size_t>(e)] = next++; });
    (uni - common).for_each([&](int e) { relabel[static_cast<std::size_t>(e)] = next++; });
  }
  if (complete) {
    ElementSet vs = uni;
    for (int e = 0; e < s.n() && vs.size() < d + 1; ++e) vs.insert(e);
    out.vertex_set = vs;
    if (!star) {
      int next = 1;
      vs.for_each([&](int e) { relabel[static_cast<std::size_t>(e)] = next++; });
    }
  }
  out.relabel = std::move(relabel);
  out.shape = star && complete ? SdShape::Both : star ? SdShape::StarType : complete ? SdShape::CompleteType : SdShape::Neither;
  return out;
}

}  // namespace dwise
