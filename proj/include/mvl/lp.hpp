#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mvl {

using Rational = boost::multiprecision::cpp_rational;

// Decides whether A x = b has a solution with x >= 0, by phase-one simplex
// over exact rationals with Bland's rule. A is given row-major.
inline bool lp_feasible(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t m = A.size();
  if (m == 0) return true;
  const std::size_t k = A[0].size();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }
  // Columns 0..k-1 original, k..k+m-1 artificial, last column right-hand side.
  const std::size_t cols = k + m;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) T[i][j] = A[i][j];
    T[i][k + i] = 1;
    T[i][cols] = b[i];
    basis[i] = k + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> d(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    if (j >= k && j < cols) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += T[i][j];
    d[j] = -s;
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (d[j] < 0) { enter = j; break; }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][cols] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    const Rational piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const Rational f = T[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
    }
    const Rational f = d[enter];
    for (std::size_t j = 0; j <= cols; ++j) d[j] -= f * T[leave][j];
    basis[leave] = enter;
  }
  // d[cols] holds minus the objective value.
  return d[cols] == 0;
}

}  // namespace mvl
