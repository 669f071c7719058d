#pragma once

#include <string>
#include <vector>

#include "error.hpp"

namespace mvl {

// GF(q) by explicit tables. Elements are 0..q-1 with 0 and 1 the identities.
// Prime fields use residues; GF(4), GF(8) and GF(9) are polynomial quotients
// over the prime field by the fixed moduli below, with an element stored as
// its coefficient vector read in base p.
struct FieldSpec {
  int q = 0;
  int p = 0;
  std::vector<std::vector<int>> add, mul;
  std::vector<int> neg, inv;

  int plus(int a, int b) const { return add[a][b]; }
  int times(int a, int b) const { return mul[a][b]; }
};

namespace detail {

inline FieldSpec extension_field(int p, int d, std::vector<int> modulus_low) {
  // modulus: x^d + sum modulus_low[i] x^i
  int q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  auto digits = [&](int a) {
    std::vector<int> v(d);
    for (int i = 0; i < d; ++i) { v[i] = a % p; a /= p; }
    return v;
  };
  auto number = [&](const std::vector<int>& v) {
    int a = 0;
    for (int i = d - 1; i >= 0; --i) a = a * p + v[i];
    return a;
  };
  FieldSpec f;
  f.q = q;
  f.p = p;
  f.add.assign(q, std::vector<int>(q));
  f.mul.assign(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto va = digits(a), vb = digits(b);
      std::vector<int> s(d);
      for (int i = 0; i < d; ++i) s[i] = (va[i] + vb[i]) % p;
      f.add[a][b] = number(s);
      std::vector<int> prod(2 * d - 1, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p;
      for (int k = 2 * d - 2; k >= d; --k) {
        const int c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (int i = 0; i < d; ++i)
          prod[k - d + i] = ((prod[k - d + i] - c * modulus_low[i]) % p + p) % p;
      }
      prod.resize(d);
      f.mul[a][b] = number(prod);
    }
  return f;
}

inline void fill_inverses(FieldSpec& f) {
  f.neg.assign(f.q, 0);
  f.inv.assign(f.q, 0);
  for (int a = 0; a < f.q; ++a)
    for (int b = 0; b < f.q; ++b) {
      if (f.add[a][b] == 0) f.neg[a] = b;
      if (f.mul[a][b] == 1) f.inv[a] = b;
    }
}

}  // namespace detail

inline FieldSpec field(int q) {
  FieldSpec f;
  switch (q) {
    case 2: case 3: case 5: case 7: case 11: case 13:
      f.q = f.p = q;
      f.add.assign(q, std::vector<int>(q));
      f.mul.assign(q, std::vector<int>(q));
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          f.add[a][b] = (a + b) % q;
          f.mul[a][b] = (a * b) % q;
        }
      break;
    case 4: f = detail::extension_field(2, 2, {1, 1}); break;     // x^2 + x + 1
    case 8: f = detail::extension_field(2, 3, {1, 1, 0}); break;  // x^3 + x + 1
    case 9: f = detail::extension_field(3, 2, {1, 0}); break;     // x^2 + 1
    default: fail(ErrorKind::UnsupportedField, "GF(" + std::to_string(q) + ") is not available");
  }
  detail::fill_inverses(f);
  return f;
}

// Rank of a list of vectors over f by row reduction.
inline int vector_rank(const FieldSpec& f, std::vector<std::vector<int>> rows) {
  if (rows.empty()) return 0;
  const int dim = static_cast<int>(rows.front().size());
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col]) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const int iv = f.inv[rows[rank][col]];
    for (int& x : rows[rank]) x = f.times(x, iv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || !rows[i][col]) continue;
      const int c = f.neg[rows[i][col]];
      for (int j = 0; j < dim; ++j) rows[i][j] = f.plus(rows[i][j], f.times(c, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace mvl
