#pragma once

#include <string>
#include <vector>

#include "error.hpp"

namespace mvl {

// Multiplication table on {0,...,g-1}: table[a][b] = a·b.
struct CayleyTable {
  int order = 0;
  std::vector<std::vector<int>> table;

  int op(int a, int b) const { return table[a][b]; }

  bool is_latin() const {
    if (order < 1 || static_cast<int>(table.size()) != order) return false;
    for (int i = 0; i < order; ++i) {
      if (static_cast<int>(table[i].size()) != order) return false;
      std::vector<bool> row(order), col(order);
      for (int j = 0; j < order; ++j) {
        const int a = table[i][j], b = table[j][i];
        if (a < 0 || a >= order || b < 0 || b >= order) return false;
        if (row[a] || col[b]) return false;
        row[a] = col[b] = true;
      }
    }
    return true;
  }

  int identity() const {
    for (int e = 0; e < order; ++e) {
      bool ok = true;
      for (int a = 0; a < order && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
      if (ok) return e;
    }
    return -1;
  }

  bool is_group() const {
    if (!is_latin() || identity() < 0) return false;
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (op(op(a, b), c) != op(a, op(b, c))) return false;
    return true;
  }

  int inverse(int a) const {
    const int e = identity();
    for (int b = 0; b < order; ++b)
      if (table[a][b] == e) return b;
    fail(ErrorKind::NotAGroup, "element without inverse");
  }
};

inline CayleyTable cyclic_group(int g) {
  if (g < 1) fail(ErrorKind::BadParameter, "group order must be positive");
  CayleyTable t{g, std::vector<std::vector<int>>(g, std::vector<int>(g))};
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) t.table[a][b] = (a + b) % g;
  return t;
}

inline CayleyTable klein_four_group() {
  CayleyTable t{4, std::vector<std::vector<int>>(4, std::vector<int>(4))};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t.table[a][b] = a ^ b;
  return t;
}

}  // namespace mvl
