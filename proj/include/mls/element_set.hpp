#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mls/error.hpp"

namespace mls {

inline constexpr int kMaxUniverse = 64;

/// A subset of a universe {0, ..., n-1} with n <= 64, stored as one word.
/// Bit i is element i. The universe size is not stored; callers that build
/// sets from untrusted indices check them with UniverseInfo::within.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ElementSet full(int n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr ElementSet singleton(int e) { return ElementSet(std::uint64_t{1} << e); }
  static ElementSet of(std::initializer_list<int> elems) {
    ElementSet s;
    for (int e : elems) s.insert(e);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1U; }
  constexpr int lowest() const { return std::countr_zero(bits_); }
  // Highest set bit plus one; 0 for the empty set.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  constexpr void insert(int e) { bits_ |= std::uint64_t{1} << e; }
  constexpr void erase(int e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr bool subset_of(ElementSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(ElementSet o) const { return (bits_ & o.bits_) == 0; }
  constexpr bool intersects(ElementSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  constexpr ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  constexpr ElementSet operator-(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  constexpr ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
  constexpr ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }
  constexpr ElementSet& operator-=(ElementSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr auto operator<=>(const ElementSet&) const = default;

  std::vector<int> elements() const;

  /// Maps bit i of `positions` to the i-th smallest element of this set.
  /// Used to lift families built over {0..m-1} onto an arbitrary pool.
  ElementSet deposit(ElementSet positions) const;

  std::string to_hex() const;
  static ElementSet from_hex(const std::string& text);

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Size-then-value ordering; the canonical order for printed set lists.
inline bool size_then_value(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() < b.bits();
}

/// Next mask with the same popcount (Gosper's hack). Returns 0 past the end
/// of a 64-bit word.
constexpr std::uint64_t next_same_popcount(std::uint64_t x) {
  std::uint64_t c = x & (~x + 1);
  std::uint64_t r = x + c;
  if (r == 0) return 0;
  return (((r ^ x) >> 2) / c) | r;
}

/// Calls f(ElementSet) for every size-k subset of [0, n) in increasing mask
/// order. Returning false from f stops the walk; the function then returns false.
template <typename F>
bool for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return true;
  if (k == 0) return static_cast<bool>(f(ElementSet{}));
  const std::uint64_t limit_bit = n >= 64 ? 0 : (std::uint64_t{1} << n);
  std::uint64_t x = k >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  while (true) {
    if (!f(ElementSet(x))) return false;
    std::uint64_t nx = next_same_popcount(x);
    if (nx == 0 || (n < 64 && nx >= limit_bit) || nx <= x) break;
    x = nx;
  }
  return true;
}

struct UniverseInfo {
  int n = 0;
  std::vector<std::string> element_names;  // empty: 1-based indices are used

  UniverseInfo() = default;
  explicit UniverseInfo(int size);

  ElementSet all() const { return ElementSet::full(n); }
  bool within(ElementSet s) const { return s.subset_of(all()); }
  std::string name(int e) const;
};

}  // namespace mls

template <>
struct std::hash<mls::ElementSet> {
  std::size_t operator()(mls::ElementSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
