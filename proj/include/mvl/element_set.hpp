#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "error.hpp"

namespace mvl {

// Subset of the ground set {0,...,n-1}, one bit per element.
// Public I/O is 1-based; everything in memory is 0-based.
struct ElementSet {
  std::uint32_t bits = 0;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint32_t b) : bits(b) {}

  static ElementSet of(std::initializer_list<int> elems) {
    ElementSet s;
    for (int e : elems) s.bits |= 1u << e;
    return s;
  }
  static constexpr ElementSet full(int n) {
    return ElementSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }
  static constexpr ElementSet single(int e) { return ElementSet(1u << e); }

  constexpr bool contains(int e) const { return (bits >> e) & 1u; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool subset_of(ElementSet o) const { return (bits & ~o.bits) == 0; }

  constexpr ElementSet with(int e) const { return ElementSet(bits | (1u << e)); }
  constexpr ElementSet without(int e) const { return ElementSet(bits & ~(1u << e)); }
  constexpr ElementSet complement(int n) const { return ElementSet(~bits & full(n).bits); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits | b.bits); }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits & b.bits); }
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.bits & ~b.bits); }
  friend constexpr bool operator==(ElementSet a, ElementSet b) { return a.bits == b.bits; }
  friend constexpr bool operator<(ElementSet a, ElementSet b) { return a.bits < b.bits; }
  ElementSet& operator|=(ElementSet o) { bits |= o.bits; return *this; }
  ElementSet& operator&=(ElementSet o) { bits &= o.bits; return *this; }
};

// Iterate the elements of a set, lowest first.
template <class F>
inline void for_each_element(ElementSet s, F&& f) {
  for (std::uint32_t b = s.bits; b; b &= b - 1) f(std::countr_zero(b));
}

inline std::string to_string(ElementSet s) {
  std::string out = "{";
  bool first = true;
  for_each_element(s, [&](int e) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  });
  return out + "}";
}

// Hard ceiling imposed by the 32-bit set words and the 2^n rank table.
inline constexpr int kHardCap = 26;

// Ground-set cap. MVL_CAP overrides the default of 24.
inline int ground_set_cap() {
  static const int cap = [] {
    if (const char* v = std::getenv("MVL_CAP")) {
      int c = std::atoi(v);
      if (c > 0 && c <= kHardCap) return c;
    }
    return 24;
  }();
  return cap;
}

inline void check_cap(int n, const char* what) {
  if (n < 0) fail(ErrorKind::BadParameter, std::string(what) + ": negative ground-set size");
  if (n > ground_set_cap())
    fail(ErrorKind::CapExceeded, std::string(what) + ": n = " + std::to_string(n) +
                                     " exceeds cap " + std::to_string(ground_set_cap()));
}

}  // namespace mvl
