#pragma once

#include <vector>

#include "mvl/matroid.hpp"
#include "oracle/brute.hpp"
#include "oracle/flat_layers.hpp"

namespace testing_support {

inline oracle::Bases to_oracle(const mvl::Matroid& m) {
  oracle::Bases b;
  for (auto s : m.bases()) b.push_back(s.bits);
  return b;
}

inline mvl::Matroid from_oracle(const oracle::Bases& b, int n) {
  std::vector<mvl::ElementSet> v;
  for (auto x : b) v.push_back(mvl::ElementSet(x));
  return mvl::from_bases(n, v);
}

// Every labeled matroid on n elements, from the independent oracle.
inline std::vector<mvl::Matroid> labeled_library(int n) {
  std::vector<mvl::Matroid> out;
  for (const auto& lm : oracle::labeled_matroids(n)) out.push_back(from_oracle(oracle::bases_of(lm, n), n));
  return out;
}

}  // namespace testing_support
