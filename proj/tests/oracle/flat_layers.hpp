#pragma once
// Independent enumerator of labeled matroids, built from the flat axioms:
// the loops form the rank-0 flat, and the flats covering a flat F partition
// E - F. Layers are grown one rank at a time; every finished family is then
// checked against the rank axioms. Unlabeled counts come from Burnside's
// lemma over one permutation per cycle type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "brute.hpp"

namespace oracle {

struct LabeledMatroid {
  int rank;
  std::vector<Mask> flats;  // sorted
  std::vector<int> rk;      // rank table
};

class FlatLayerEnumerator {
 public:
  explicit FlatLayerEnumerator(int n) : n_(n), full_((Mask{1} << n) - 1) {}

  template <class Emit>
  void run(Emit&& emit) {
    for (Mask loops = 0; loops <= full_; ++loops) {
      std::vector<std::vector<Mask>> layers{{loops}};
      grow(layers, emit);
    }
  }

 private:
  template <class Emit>
  void grow(std::vector<std::vector<Mask>>& layers, Emit& emit) {
    const auto& top = layers.back();
    if (top.size() == 1 && top[0] == full_) {
      finish(layers, emit);
      return;
    }
    std::set<Mask> lower;
    for (const auto& l : layers) lower.insert(l.begin(), l.end());
    std::vector<Mask> chosen;
    next_flat(layers, lower, 0, chosen, emit);
  }

  // Choose the covers of top[i], consistent with covers already chosen.
  template <class Emit>
  void next_flat(std::vector<std::vector<Mask>>& layers, const std::set<Mask>& lower, std::size_t i,
                 std::vector<Mask>& chosen, Emit& emit) {
    const auto& top = layers.back();
    if (i == top.size()) {
      std::vector<Mask> layer = chosen;
      std::sort(layer.begin(), layer.end());
      layers.push_back(std::move(layer));
      grow(layers, emit);
      layers.pop_back();
      return;
    }
    const Mask f = top[i];
    Mask covered = 0;
    for (Mask g : chosen) {
      if ((g & f) != f) continue;
      const Mask block = g & ~f;
      if (covered & block) return;  // forced blocks overlap
      covered |= block;
    }
    const std::size_t mark = chosen.size();
    partition(layers, lower, i, f, full_ & ~f & ~covered, chosen, mark, emit);
  }

  template <class Emit>
  void partition(std::vector<std::vector<Mask>>& layers, const std::set<Mask>& lower, std::size_t i, Mask f,
                 Mask rest, std::vector<Mask>& chosen, std::size_t mark, Emit& emit) {
    if (!rest) {
      next_flat(layers, lower, i + 1, chosen, emit);
      return;
    }
    const Mask low = rest & (~rest + 1);
    const Mask others = rest & ~low;
    // every subset of the remaining elements, joined with the lowest one
    for (Mask sub = others;; sub = (sub - 1) & others) {
      const Mask g = f | low | sub;
      if (admissible(layers.back(), lower, i, g, chosen)) {
        chosen.push_back(g);
        partition(layers, lower, i, f, rest & ~(low | sub), chosen, mark, emit);
        chosen.pop_back();
      }
      if (!sub) break;
    }
  }

  bool admissible(const std::vector<Mask>& top, const std::set<Mask>& lower, std::size_t i, Mask g,
                  const std::vector<Mask>& chosen) const {
    // a new cover may not contain an earlier flat of the top layer: that flat
    // would already have produced it
    for (std::size_t j = 0; j < i; ++j)
      if ((top[j] & g) == top[j]) return false;
    for (Mask h : chosen)
      if (!lower.count(h & g)) return false;
    return true;
  }

  template <class Emit>
  void finish(const std::vector<std::vector<Mask>>& layers, Emit& emit) {
    LabeledMatroid m;
    m.rank = static_cast<int>(layers.size()) - 1;
    std::vector<int> rank_of_flat;
    for (int k = 0; k <= m.rank; ++k)
      for (Mask f : layers[k]) {
        m.flats.push_back(f);
        rank_of_flat.push_back(k);
      }
    m.rk.assign(std::size_t{1} << n_, m.rank);
    for (Mask s = 0; s <= full_; ++s)
      for (std::size_t j = 0; j < m.flats.size(); ++j)
        if ((s & m.flats[j]) == s) m.rk[s] = std::min(m.rk[s], rank_of_flat[j]);
    if (!is_matroid_rank(m.rk, n_)) return;
    // the family must be exactly the flats of its rank function
    std::vector<Mask> cl;
    for (Mask s = 0; s <= full_; ++s)
      if (closure(m.rk, n_, s) == s) cl.push_back(s);
    std::sort(m.flats.begin(), m.flats.end());
    if (cl != m.flats) return;
    emit(m);
  }

  int n_;
  Mask full_;
};

inline std::vector<LabeledMatroid> labeled_matroids(int n) {
  std::vector<LabeledMatroid> out;
  FlatLayerEnumerator(n).run([&](const LabeledMatroid& m) { out.push_back(m); });
  return out;
}

inline Bases bases_of(const LabeledMatroid& m, int n) {
  Bases b;
  for (Mask s = 0; s < m.rk.size(); ++s)
    if (pc(s) == m.rank && m.rk[s] == m.rank) b.push_back(s);
  return b;
}

// Number of unlabeled matroids of each rank, via Burnside.
inline std::vector<std::int64_t> unlabeled_counts(int n, const std::vector<LabeledMatroid>& all) {
  // partitions of n as cycle types
  std::vector<std::vector<int>> types;
  std::function<void(int, int, std::vector<int>&)> parts = [&](int left, int maxp, std::vector<int>& cur) {
    if (!left) {
      types.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      parts(left - p, p, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  parts(n, n, cur);
  std::int64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;

  std::vector<std::int64_t> weighted(n + 1, 0);
  for (const auto& type : types) {
    std::vector<int> perm(n);
    int at = 0;
    for (int len : type) {
      for (int j = 0; j < len; ++j) perm[at + j] = at + (j + 1) % len;
      at += len;
    }
    // z = prod k^{m_k} m_k!
    std::int64_t z = 1;
    std::map<int, int> mult;
    for (int len : type) ++mult[len];
    for (auto [k, m] : mult)
      for (int j = 1; j <= m; ++j) z *= static_cast<std::int64_t>(k) * j;
    for (const auto& m : all) {
      bool fixed = true;
      for (Mask f : m.flats) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if (f >> e & 1) img |= Mask{1} << perm[e];
        if (!std::binary_search(m.flats.begin(), m.flats.end(), img)) {
          fixed = false;
          break;
        }
      }
      if (fixed) weighted[m.rank] += fact / z;
    }
  }
  for (auto& w : weighted) w /= fact;
  return weighted;
}

}  // namespace oracle
