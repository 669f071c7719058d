#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "families.hpp"
#include "matroid.hpp"

namespace mvl {

struct CyclicFlatLattice {
  int n = 0;
  int r = 0;
  // Sorted by (size, rank, set): a linear extension of inclusion.
  std::vector<RankedFlat> members;
  std::size_t bottom = 0;
  std::size_t top = 0;

  bool below(std::size_t i, std::size_t j) const {
    return i != j && members[i].set.subset_of(members[j].set);
  }
};

inline CyclicFlatLattice cyclic_flats(const Matroid& m) {
  CyclicFlatLattice z;
  z.n = m.size();
  z.r = m.rank();
  z.members = cyclic_flat_list(m);
  z.bottom = 0;
  z.top = z.members.size() - 1;
  return z;
}

// Member indices in increasing order, always holding bottom and top.
using Chain = std::vector<std::uint32_t>;

struct ChainLattice {
  CyclicFlatLattice lattice;
  std::vector<Chain> chains;
  // upper_covers[i]: chains with exactly one more member than chains[i].
  // Chains with no such cover are covered by the adjoined top only.
  std::vector<std::vector<std::size_t>> upper_covers;
  std::map<Chain, std::size_t> index;
};

inline constexpr std::size_t kDefaultChainLimit = 10'000'000;

inline ChainLattice chain_lattice(const Matroid& m, std::size_t limit = kDefaultChainLimit) {
  ChainLattice out;
  out.lattice = cyclic_flats(m);
  const auto& z = out.lattice;
  const std::uint32_t bot = static_cast<std::uint32_t>(z.bottom);
  const std::uint32_t top = static_cast<std::uint32_t>(z.top);

  Chain cur{bot};
  auto rec = [&](auto&& self, std::uint32_t last) -> void {
    Chain c = cur;
    if (top != bot) c.push_back(top);
    if (out.chains.size() >= limit)
      fail(ErrorKind::ChainExplosion, "more than " + std::to_string(limit) + " chains");
    out.chains.push_back(std::move(c));
    for (std::uint32_t j = last + 1; j < top; ++j) {
      if (!z.below(last, j)) continue;
      cur.push_back(j);
      self(self, j);
      cur.pop_back();
    }
  };
  rec(rec, bot);

  for (std::size_t i = 0; i < out.chains.size(); ++i) out.index.emplace(out.chains[i], i);
  out.upper_covers.resize(out.chains.size());
  for (std::size_t i = 0; i < out.chains.size(); ++i) {
    const Chain& c = out.chains[i];
    for (std::uint32_t j = bot + 1; j < top; ++j) {
      if (std::binary_search(c.begin(), c.end(), j)) continue;
      bool comparable = true;
      for (auto x : c) comparable = comparable && (z.below(x, j) || z.below(j, x));
      if (!comparable) continue;
      Chain d = c;
      d.insert(std::upper_bound(d.begin(), d.end(), j), j);
      out.upper_covers[i].push_back(out.index.at(d));
    }
  }
  return out;
}

// μ(C, 1̂) for every chain, aligned with cl.chains. Longest chains first: each
// value is -1 (the term μ(1̂,1̂)) minus the values of all chains above it.
inline std::vector<std::int64_t> mobius_to_top(const ChainLattice& cl) {
  const std::size_t k = cl.chains.size();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cl.chains[a].size() > cl.chains[b].size();
  });
  std::vector<std::int64_t> above(k, 0), mu(k, 0);
  const bool trivial = cl.lattice.bottom == cl.lattice.top;
  for (std::size_t i : order) {
    mu[i] = -1 - above[i];
    const Chain& c = cl.chains[i];
    if (trivial) continue;
    // interior members sit between the fixed first and last entries
    const std::size_t inner = c.size() - 2;
    for (std::uint32_t keep = 0; keep + 1 < (1u << inner); ++keep) {
      Chain d{c.front()};
      for (std::size_t b = 0; b < inner; ++b)
        if ((keep >> b) & 1u) d.push_back(c[1 + b]);
      d.push_back(c.back());
      above[cl.index.at(d)] += mu[i];
    }
  }
  return mu;
}

// N sorts before E.
struct NestedKeyLess {
  bool operator()(const std::string& a, const std::string& b) const {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i)
      if (a[i] != b[i]) return a[i] == 'N';
    return a.size() < b.size();
  }
};

using NestedKey = std::string;

// (size, rank) pairs from bottom to top.
inline NestedKey chain_to_nested_key(const std::vector<std::pair<int, int>>& chain, int n) {
  if (chain.empty()) fail(ErrorKind::MalformedChain, "empty chain");
  if (chain.front().second != 0) fail(ErrorKind::MalformedChain, "bottom of chain must have rank 0");
  if (chain.front().first < 0) fail(ErrorKind::MalformedChain, "negative size");
  NestedKey key(chain.front().first, 'E');
  for (std::size_t j = 1; j < chain.size(); ++j) {
    const int ds = chain[j].first - chain[j - 1].first;
    const int dr = chain[j].second - chain[j - 1].second;
    if (ds <= 0) fail(ErrorKind::MalformedChain, "chain sizes must increase strictly");
    if (dr < 0 || ds - dr < 0) fail(ErrorKind::MalformedChain, "block with negative step count");
    key.append(dr, 'N');
    key.append(ds - dr, 'E');
  }
  const int tail = n - chain.back().first;
  if (tail < 0) fail(ErrorKind::MalformedChain, "chain exceeds ground set");
  key.append(tail, 'N');
  return key;
}

// Reverse the path and swap N with E: the key of the dual nested matroid.
inline NestedKey dual_key(const NestedKey& k) {
  NestedKey out(k.rbegin(), k.rend());
  for (char& c : out) c = c == 'N' ? 'E' : 'N';
  return out;
}

struct OmegaPoint {
  int r = 0;
  int n = 0;
  std::map<NestedKey, std::int64_t, NestedKeyLess> coeffs;

  friend bool operator==(const OmegaPoint& a, const OmegaPoint& b) {
    return a.r == b.r && a.n == b.n && a.coeffs == b.coeffs;
  }
};

inline NestedKey chain_key(const ChainLattice& cl, const Chain& c) {
  std::vector<std::pair<int, int>> sr;
  for (auto i : c) sr.push_back({cl.lattice.members[i].set.size(), cl.lattice.members[i].rank});
  return chain_to_nested_key(sr, cl.lattice.n);
}

// Coefficients -μ(C,1̂) per chain, merged by nested key; zeros dropped.
inline OmegaPoint nested_decomposition(const Matroid& m, std::size_t limit = kDefaultChainLimit) {
  const ChainLattice cl = chain_lattice(m, limit);
  const auto mu = mobius_to_top(cl);
  OmegaPoint p;
  p.r = m.rank();
  p.n = m.size();
  for (std::size_t i = 0; i < cl.chains.size(); ++i) {
    if (mu[i] == 0) continue;
    p.coeffs[chain_key(cl, cl.chains[i])] -= mu[i];
  }
  for (auto it = p.coeffs.begin(); it != p.coeffs.end();)
    it = it->second == 0 ? p.coeffs.erase(it) : std::next(it);
  return p;
}

inline bool same_omega_point(const Matroid& a, const Matroid& b) {
  if (a.rank() != b.rank() || a.size() != b.size())
    fail(ErrorKind::RankSizeMismatch, "matroids differ in rank or size");
  return nested_decomposition(a) == nested_decomposition(b);
}

}  // namespace mvl
