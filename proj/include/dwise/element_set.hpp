#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace dwise {

/// Largest ground set the library types can hold.
inline constexpr int kMaxGround = 256;

/// Fixed-width bit vector over the ground set. Elements are 0-based here;
/// everything facing users (I/O, CLI, Python) is 1-based.
class ElementSet {
 public:
  static constexpr int kWords = kMaxGround / 64;

  constexpr ElementSet() = default;
  ElementSet(std::initializer_list<int> elems) {
    for (int e : elems) insert(e);
  }

  static ElementSet from_word(std::uint64_t w) {
    ElementSet s;
    s.words_[0] = w;
    return s;
  }
  /// {0, ..., count-1}
  static ElementSet prefix(int count) {
    ElementSet s;
    for (int e = 0; e < count; ++e) s.insert(e);
    return s;
  }
  static ElementSet from_elements(const std::vector<int>& elems) {
    ElementSet s;
    for (int e : elems) s.insert(e);
    return s;
  }

  void insert(int e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(int e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  bool contains(int e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }

  int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  /// Smallest element, or -1 when empty.
  int first() const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
    return -1;
  }
  /// Largest element, or -1 when empty.
  int last() const {
    for (int i = kWords - 1; i >= 0; --i)
      if (words_[i]) return i * 64 + 63 - std::countl_zero(words_[i]);
    return -1;
  }

  bool intersects(const ElementSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const ElementSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ElementSet& operator&=(const ElementSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int e) { out.push_back(e); });
    return out;
  }

  /// Low word; exact whenever every element is below 64.
  std::uint64_t word() const { return words_[0]; }
  bool fits_word() const {
    for (int i = 1; i < kWords; ++i)
      if (words_[i]) return false;
    return true;
  }

  bool operator==(const ElementSet&) const = default;

  /// Lexicographic order of the ascending element lists; a proper prefix
  /// sorts first.
  friend bool lex_less(const ElementSet& a, const ElementSet& b) {
    ElementSet diff;
    for (int i = 0; i < kWords; ++i) diff.words_[i] = a.words_[i] ^ b.words_[i];
    const int e = diff.first();
    if (e < 0) return false;
    // Both lists agree below e. The side holding e is smaller unless the
    // other side has already run out.
    if (a.contains(e)) return b.last() > e;
    return a.last() < e;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL;
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

struct LexLess {
  bool operator()(const ElementSet& a, const ElementSet& b) const { return lex_less(a, b); }
};

}  // namespace dwise
