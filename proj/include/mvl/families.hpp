#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "field.hpp"
#include "matroid.hpp"

namespace mvl {

// Trusted: bases must already satisfy the exchange axiom.
inline Matroid from_bases_unchecked(int n, const std::vector<ElementSet>& bases) {
  check_cap(n, "from_bases");
  return Matroid::from_rank_table_unchecked(n, detail::rank_table_from_bases(n, bases));
}

inline Matroid uniform(int r, int n) {
  if (r < 0 || r > n) fail(ErrorKind::BadParameter, "uniform needs 0 <= r <= n");
  check_cap(n, "uniform");
  return from_rank_oracle_unchecked(n, [r](ElementSet s) { return std::min(s.size(), r); });
}

inline bool is_lattice_path(const std::string& p) {
  return std::all_of(p.begin(), p.end(), [](char c) { return c == 'N' || c == 'E'; });
}

// Each N adds a coloop, each E a free extension (a loop while the rank is 0).
inline Matroid nested_from_path(const std::string& path) {
  if (!is_lattice_path(path)) fail(ErrorKind::BadParameter, "lattice path must use only N and E: " + path);
  check_cap(static_cast<int>(path.size()), "nested_from_path");
  Matroid m;
  for (char c : path) {
    if (c == 'N') m = direct_sum(m, uniform(1, 1));
    else if (m.rank() == 0) m = direct_sum(m, uniform(0, 1));
    else m = free_extension(m);
  }
  return m;
}

// M(K_{r+1}); edge (i,j), i<j, listed in lexicographic order.
inline Matroid cycle_matroid_complete(int r) {
  if (r < 1) fail(ErrorKind::BadParameter, "complete graph rank must be at least 1");
  const int v = r + 1;
  const int n = v * r / 2;
  check_cap(n, "cycle_matroid_complete");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) edges.push_back({i, j});
  std::vector<ElementSet> trees;
  for_each_subset_of_size(n, r, [&](ElementSet s) {
    std::vector<int> parent(v);
    for (int i = 0; i < v; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    for_each_element(s, [&](int e) {
      const int a = find(edges[e].first), b = find(edges[e].second);
      if (a == b) acyclic = false;
      parent[a] = b;
    });
    if (acyclic) trees.push_back(s);
  });
  return from_bases_unchecked(n, trees);
}

// Column matroid of the given vectors.
inline Matroid vector_matroid(const FieldSpec& f, const std::vector<std::vector<int>>& vecs, int r) {
  const int n = static_cast<int>(vecs.size());
  check_cap(n, "vector_matroid");
  std::vector<ElementSet> bases;
  for_each_subset_of_size(n, r, [&](ElementSet s) {
    std::vector<std::vector<int>> rows;
    for_each_element(s, [&](int e) { rows.push_back(vecs[e]); });
    if (vector_rank(f, rows) == r) bases.push_back(s);
  });
  return from_bases_unchecked(n, bases);
}

// Nonzero vectors of GF(q)^r whose first nonzero coordinate is 1.
inline std::vector<std::vector<int>> projective_points(const FieldSpec& f, int r) {
  std::vector<std::vector<int>> pts;
  std::vector<int> v(r, 0);
  for (;;) {
    int lead = 0;
    while (lead < r && v[lead] == 0) ++lead;
    if (lead < r && v[lead] == 1) pts.push_back(v);
    int i = r - 1;
    while (i >= 0 && v[i] == f.q - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return pts;
}

inline long long projective_size(int r, int q) {
  long long s = 0, p = 1;
  for (int i = 0; i < r; ++i, p *= q) s += p;
  return s;
}

inline Matroid projective_geometry(int r, int q) {
  if (r < 2) fail(ErrorKind::BadParameter, "projective geometry needs rank at least 2");
  const FieldSpec f = field(q);
  if (projective_size(r, q) > ground_set_cap())
    fail(ErrorKind::CapExceeded, "PG(" + std::to_string(r - 1) + "," + std::to_string(q) + ") exceeds the cap");
  return vector_matroid(f, projective_points(f, r), r);
}

inline Matroid affine_geometry(int r, int q) {
  if (r < 2) fail(ErrorKind::BadParameter, "affine geometry needs rank at least 2");
  const FieldSpec f = field(q);
  long long n = 1;
  for (int i = 0; i < r - 1; ++i) n *= q;
  if (n > ground_set_cap())
    fail(ErrorKind::CapExceeded, "AG(" + std::to_string(r - 1) + "," + std::to_string(q) + ") exceeds the cap");
  std::vector<std::vector<int>> pts;
  std::vector<int> v(r, 0);
  v[0] = 1;
  for (;;) {
    pts.push_back(v);
    int i = r - 1;
    while (i >= 1 && v[i] == q - 1) v[i--] = 0;
    if (i < 1) break;
    ++v[i];
  }
  return vector_matroid(f, pts, r);
}

// PG(r-1,q) minus the rank-k flat spanned by the first k coordinate vectors.
inline Matroid bose_burton(int r, int q, int k) {
  if (r < 2 || k < 1 || k > r - 1) fail(ErrorKind::BadParameter, "Bose-Burton needs 1 <= k <= r-1");
  const FieldSpec f = field(q);
  if (projective_size(r, q) - projective_size(k, q) > ground_set_cap())
    fail(ErrorKind::CapExceeded, "Bose-Burton geometry exceeds the cap");
  std::vector<std::vector<int>> pts;
  for (auto& v : projective_points(f, r)) {
    bool inside = true;
    for (int i = k; i < r; ++i) inside = inside && v[i] == 0;
    if (!inside) pts.push_back(v);
  }
  return vector_matroid(f, pts, r);
}

// Element numbering of Q_r(G): joints b_1..b_r first, then a_(i,j) for each
// pair i<j in lexicographic order, with a running over the g labels.
inline int dowling_joint(int i) { return i; }
inline int dowling_point(int r, int g, int i, int j, int a) {
  int pair = 0;
  for (int x = 0; x < i; ++x) pair += r - 1 - x;
  pair += j - i - 1;
  return r + pair * g + a;
}

inline Matroid dowling(int r, const CayleyTable& G) {
  if (r < 2) fail(ErrorKind::BadParameter, "Dowling geometry needs rank at least 2");
  if (!G.is_latin()) fail(ErrorKind::BadParameter, "Cayley table is not a quasigroup");
  const int g = G.order;
  if (r == 2) return uniform(2, g + 2);
  if (r >= 4 && !G.is_group()) fail(ErrorKind::NotAGroup, "rank at least 4 requires a group");
  const long long n = r + static_cast<long long>(g) * r * (r - 1) / 2;
  if (n > ground_set_cap()) fail(ErrorKind::CapExceeded, "Dowling geometry exceeds the cap");

  struct Part {
    std::uint32_t support;
    ElementSet set;
    int rank;
    bool large;
  };
  std::vector<Part> parts;
  for (std::uint32_t I = 0; I < (1u << r); ++I) {
    if (std::popcount(I) < 2) continue;
    ElementSet s;
    for (int i = 0; i < r; ++i) {
      if (!((I >> i) & 1u)) continue;
      s = s.with(dowling_joint(i));
      for (int j = i + 1; j < r; ++j)
        if ((I >> j) & 1u)
          for (int a = 0; a < g; ++a) s = s.with(dowling_point(r, g, i, j, a));
    }
    parts.push_back({I, s, std::popcount(I), true});
  }
  if (r == 3) {
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b) {
        ElementSet s = ElementSet::single(dowling_point(r, g, 0, 1, a))
                           .with(dowling_point(r, g, 1, 2, b))
                           .with(dowling_point(r, g, 0, 2, G.op(a, b)));
        parts.push_back({7u, s, 2, false});
      }
  } else {
    for (std::uint32_t J = 0; J < (1u << r); ++J) {
      const int t = std::popcount(J);
      if (t < 3) continue;
      std::vector<int> idx;
      for (int i = 0; i < r; ++i)
        if ((J >> i) & 1u) idx.push_back(i);
      std::vector<int> lab(t, 0);  // lab[0] unused; lab[h] = a_h
      for (;;) {
        ElementSet s;
        for (int h = 1; h < t; ++h) s = s.with(dowling_point(r, g, idx[0], idx[h], lab[h]));
        for (int h = 1; h < t; ++h)
          for (int i = h + 1; i < t; ++i)
            s = s.with(dowling_point(r, g, idx[h], idx[i], G.op(G.inverse(lab[h]), lab[i])));
        parts.push_back({J, s, t - 1, false});
        int h = t - 1;
        while (h >= 1 && lab[h] == g - 1) lab[h--] = 0;
        if (h < 1) break;
        ++lab[h];
      }
    }
  }

  std::vector<RankedFlat> z;
  std::vector<std::size_t> stack;
  auto rec = [&](auto&& self, std::size_t from, std::uint32_t used, bool has_large, ElementSet set, int rank) -> void {
    z.push_back({set, rank});
    for (std::size_t i = from; i < parts.size(); ++i) {
      const Part& p = parts[i];
      if (p.support & used) continue;
      if (p.large && has_large) continue;
      self(self, i + 1, used | p.support, has_large || p.large, set | p.set, rank + p.rank);
    }
  };
  rec(rec, 0, 0, false, ElementSet{}, 0);
  return from_cyclic_flats(static_cast<int>(n), std::move(z));
}

// Tip 0; leg i holds elements 1+i*t .. t+i*t. Parallel connection of the s
// lines at the tip, truncated to rank r.
inline Matroid spike_free(int r, int s, int t) {
  if (r < 3 || s < r - 1 || t < 2) fail(ErrorKind::BadParameter, "free spike needs r >= 3, s >= r-1, t >= 2");
  const long long n = static_cast<long long>(s) * t + 1;
  if (n > ground_set_cap()) fail(ErrorKind::CapExceeded, "free spike exceeds the cap");
  std::vector<ElementSet> legs(s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j) legs[i] = legs[i].with(1 + i * t + j);
  return from_rank_oracle_unchecked(static_cast<int>(n), [&](ElementSet x) {
    int touched = 0;
    bool wide = x.contains(0);
    for (auto leg : legs) {
      const int k = (x & leg).size();
      touched += k > 0;
      wide = wide || k >= 2;
    }
    const int rp = wide ? 1 + touched : x.size();
    return std::min(rp, r);
  });
}

// Tip a = e_r; r-circuit C = {e_1..e_{r-1}, e_1+...+e_{r-1}} in the hyperplane
// x_r = 0. Element 0 is a; leg i is c_i (element 2i+1) and a+c_i (2i+2).
inline Matroid spike_binary(int r) {
  if (r < 3) fail(ErrorKind::BadParameter, "binary spike needs r >= 3");
  check_cap(2 * r + 1, "spike_binary");
  std::vector<std::uint32_t> vec;
  const std::uint32_t a = 1u << (r - 1);
  vec.push_back(a);
  for (int i = 0; i < r; ++i) {
    const std::uint32_t c = i < r - 1 ? (1u << i) : ((1u << (r - 1)) - 1);
    vec.push_back(c);
    vec.push_back(c ^ a);
  }
  const FieldSpec f2 = field(2);
  std::vector<std::vector<int>> rows;
  for (auto v : vec) {
    std::vector<int> row(r);
    for (int i = 0; i < r; ++i) row[i] = (v >> i) & 1u;
    rows.push_back(row);
  }
  return vector_matroid(f2, rows, r);
}

}  // namespace mvl
