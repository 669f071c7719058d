#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matroid.hpp"

namespace mvl {

// Coefficients t[i][j] of x^i y^j, i <= r, j <= n - r.
struct TuttePoly {
  std::vector<std::vector<std::int64_t>> t;

  std::int64_t coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(t.size()) || j >= static_cast<int>(t[i].size())) return 0;
    return t[i][j];
  }
  std::int64_t eval(std::int64_t x, std::int64_t y) const {
    std::int64_t total = 0, xp = 1;
    for (const auto& row : t) {
      std::int64_t yp = 1;
      for (auto c : row) {
        total += c * xp * yp;
        yp *= y;
      }
      xp *= x;
    }
    return total;
  }
  friend bool operator==(const TuttePoly& a, const TuttePoly& b) {
    const std::size_t rows = std::max(a.t.size(), b.t.size());
    std::size_t cols = 0;
    for (auto& r : a.t) cols = std::max(cols, r.size());
    for (auto& r : b.t) cols = std::max(cols, r.size());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (a.coeff(int(i), int(j)) != b.coeff(int(i), int(j))) return false;
    return true;
  }
};

inline TuttePoly operator*(const TuttePoly& a, const TuttePoly& b) {
  TuttePoly p;
  const int ra = static_cast<int>(a.t.size()), rb = static_cast<int>(b.t.size());
  const int ca = ra ? static_cast<int>(a.t[0].size()) : 0, cb = rb ? static_cast<int>(b.t[0].size()) : 0;
  p.t.assign(ra + rb - 1, std::vector<std::int64_t>(ca + cb - 1, 0));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j)
      for (int k = 0; k < rb; ++k)
        for (int l = 0; l < cb; ++l) p.t[i + k][j + l] += a.t[i][j] * b.t[k][l];
  return p;
}

inline TuttePoly operator+(const TuttePoly& a, const TuttePoly& b) {
  TuttePoly p;
  const std::size_t rows = std::max(a.t.size(), b.t.size());
  std::size_t cols = 0;
  for (auto& r : a.t) cols = std::max(cols, r.size());
  for (auto& r : b.t) cols = std::max(cols, r.size());
  p.t.assign(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) p.t[i][j] = a.coeff(int(i), int(j)) + b.coeff(int(i), int(j));
  return p;
}

inline TuttePoly scaled(const TuttePoly& a, std::int64_t c) {
  TuttePoly p = a;
  for (auto& row : p.t)
    for (auto& v : row) v *= c;
  return p;
}

inline constexpr int kTutteLimit = 20;

inline std::vector<std::vector<std::int64_t>> binomials(int n) {
  std::vector<std::vector<std::int64_t>> c(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

// Corank-nullity sum over all 2^n subsets, expanded from powers of (x-1), (y-1).
inline TuttePoly tutte(const Matroid& m, int limit = kTutteLimit) {
  const int n = m.size(), r = m.rank();
  if (n > limit) fail(ErrorKind::CapExceeded, "Tutte polynomial limited to n <= " + std::to_string(limit));
  std::vector<std::vector<std::int64_t>> cnt(r + 1, std::vector<std::int64_t>(n - r + 1, 0));
  const std::size_t N = std::size_t{1} << n;
  for (std::size_t s = 0; s < N; ++s) {
    const int rs = m.rank_table()[s];
    ++cnt[r - rs][std::popcount(std::uint32_t(s)) - rs];
  }
  const auto C = binomials(n);
  TuttePoly p;
  p.t.assign(r + 1, std::vector<std::int64_t>(n - r + 1, 0));
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= n - r; ++b) {
      if (!cnt[a][b]) continue;
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
          const std::int64_t sign = ((a - i) + (b - j)) % 2 ? -1 : 1;
          p.t[i][j] += sign * C[a][i] * C[b][j] * cnt[a][b];
        }
    }
  return p;
}

// Rank sequence as a string of '0'/'1' of length n.
using RankSequence = std::string;
using GInvariant = std::map<RankSequence, std::int64_t>;

inline constexpr int kGInvariantLimit = 16;
inline constexpr std::size_t kGStateLimit = 50'000'000;

// Counts orderings of the ground set by rank-increment string. States are
// (prefix set, increment string so far); one layer of prefix sizes is live.
inline GInvariant g_invariant(const Matroid& m, int limit = kGInvariantLimit,
                              std::size_t state_limit = kGStateLimit) {
  const int n = m.size();
  if (n > limit) fail(ErrorKind::CapExceeded, "G-invariant limited to n <= " + std::to_string(limit));
  const std::size_t N = std::size_t{1} << n;
  const auto& rank = m.rank_table();
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> states(N);
  states[0].push_back({0u, 1});
  for (int k = 0; k < n; ++k) {
    for_each_subset_of_size(n, k, [&](ElementSet s) {
      auto& from = states[s.bits];
      for (int e = 0; e < n; ++e) {
        if (s.contains(e)) continue;
        const std::uint32_t t = s.bits | (1u << e);
        const std::uint32_t bit = static_cast<std::uint32_t>(rank[t] - rank[s.bits]) << k;
        for (auto [str, c] : from) states[t].push_back({str | bit, c});
      }
      std::vector<std::pair<std::uint32_t, std::int64_t>>().swap(from);
    });
    std::size_t live = 0;
    for_each_subset_of_size(n, k + 1, [&](ElementSet s) {
      auto& v = states[s.bits];
      std::sort(v.begin(), v.end());
      std::size_t w = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (w > 0 && v[w - 1].first == v[i].first) v[w - 1].second += v[i].second;
        else v[w++] = v[i];
      }
      v.resize(w);
      live += w;
    });
    if (live > state_limit) fail(ErrorKind::CapExceeded, "G-invariant live states exceed the limit");
  }
  GInvariant g;
  for (auto [str, c] : states[N - 1]) {
    RankSequence seq(n, '0');
    for (int i = 0; i < n; ++i)
      if ((str >> i) & 1u) seq[i] = '1';
    g[seq] += c;
  }
  return g;
}

inline RankSequence dualize_rank_sequence(const RankSequence& s) {
  RankSequence out(s.rbegin(), s.rend());
  for (char& c : out) c = c == '1' ? '0' : '1';
  return out;
}

inline std::int64_t flat_count(const Matroid& m, int k, int s, std::optional<int> c = std::nullopt) {
  if (k < 0 || k > m.rank()) fail(ErrorKind::BadParameter, "flat rank out of range");
  std::int64_t count = 0;
  for (auto f : flats_of_rank(m, k)) {
    if (f.size() != s) continue;
    if (c && m.coloops_of_restriction(f).size() != *c) continue;
    ++count;
  }
  return count;
}

// Flags F_h ⊂ ... ⊂ F_k with rank(F_i) = i and |F_i| = sizes[i-h].
inline std::int64_t flag_count(const Matroid& m, int h, int k, const std::vector<int>& sizes) {
  if (h < 0 || h > k || k > m.rank()) fail(ErrorKind::BadParameter, "flag ranks out of range");
  if (static_cast<int>(sizes.size()) != k - h + 1) fail(ErrorKind::BadParameter, "flag needs one size per rank");
  std::map<std::uint32_t, std::int64_t> cur;
  for (auto f : flats_of_rank(m, h))
    if (f.size() == sizes[0]) cur[f.bits] = 1;
  for (int i = h + 1; i <= k && !cur.empty(); ++i) {
    std::map<std::uint32_t, std::int64_t> next;
    for (auto [f, c] : cur)
      for (auto g : covers_of(m, ElementSet(f)))
        if (g.size() == sizes[i - h]) next[g.bits] += c;
    cur = std::move(next);
  }
  std::int64_t total = 0;
  for (auto& kv : cur) total += kv.second;
  return total;
}

struct CircuitStats {
  std::map<int, std::int64_t> by_size;
  std::int64_t circuit_hyperplanes = 0;
};

inline CircuitStats circuit_stats(const Matroid& m, int limit = kTutteLimit) {
  const int n = m.size();
  if (n > limit) fail(ErrorKind::CapExceeded, "circuit enumeration limited to n <= " + std::to_string(limit));
  CircuitStats out;
  const std::size_t N = std::size_t{1} << n;
  for (std::size_t s = 1; s < N; ++s) {
    const ElementSet S(static_cast<std::uint32_t>(s));
    const int sz = S.size();
    if (m.rank_of(S) != sz - 1) continue;
    bool minimal = true;
    for_each_element(S, [&](int e) { minimal = minimal && m.rank_of(S.without(e)) == sz - 1; });
    if (!minimal) continue;
    ++out.by_size[sz];
    if (sz == m.rank() && m.is_flat(S)) ++out.circuit_hyperplanes;
  }
  return out;
}

struct CountingEvaluations {
  std::int64_t bases = 0;
  std::int64_t independents = 0;
};

// Direct counts, checked against T(1,1) and T(2,1) when the Tutte polynomial
// is within reach.
inline CountingEvaluations counting_evaluations(const Matroid& m) {
  CountingEvaluations out;
  out.bases = static_cast<std::int64_t>(m.bases().size());
  const std::size_t N = std::size_t{1} << m.size();
  for (std::size_t s = 0; s < N; ++s)
    out.independents += m.rank_table()[s] == std::popcount(std::uint32_t(s));
  if (m.size() <= kTutteLimit) {
    const TuttePoly t = tutte(m);
    if (t.eval(1, 1) != out.bases || t.eval(2, 1) != out.independents)
      fail(ErrorKind::Internal, "Tutte evaluations disagree with direct counts");
  }
  return out;
}

}  // namespace mvl
