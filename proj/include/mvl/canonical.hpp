#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "matroid.hpp"

namespace mvl {

// Isomorphism-invariant element colors: start from flat memberships keyed by
// (rank, size) and refine by the colors inside each flat until stable.
// Colors are numbered in sorted order of their signatures.
inline std::vector<int> element_colors(const Matroid& m) {
  const int n = m.size();
  const auto flats = all_flats(m);
  std::vector<int> color(n, 0);
  int ncolors = n == 0 ? 0 : 1;
  for (;;) {
    std::vector<std::vector<int>> fsig(flats.size());
    for (std::size_t i = 0; i < flats.size(); ++i) {
      auto& s = fsig[i];
      s.push_back(flats[i].rank);
      s.push_back(flats[i].set.size());
      std::vector<int> inner;
      for_each_element(flats[i].set, [&](int e) { inner.push_back(color[e]); });
      std::sort(inner.begin(), inner.end());
      s.insert(s.end(), inner.begin(), inner.end());
    }
    std::vector<std::vector<int>> distinct = fsig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> fclass(flats.size());
    for (std::size_t i = 0; i < flats.size(); ++i)
      fclass[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), fsig[i]) - distinct.begin());

    std::vector<std::vector<int>> esig(n);
    for (int e = 0; e < n; ++e) esig[e].push_back(color[e]);
    for (std::size_t i = 0; i < flats.size(); ++i)
      for_each_element(flats[i].set, [&](int e) { esig[e].push_back(fclass[i]); });
    for (auto& s : esig) std::sort(s.begin() + 1, s.end());
    auto order = esig;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    std::vector<int> next(n);
    for (int e = 0; e < n; ++e)
      next[e] = static_cast<int>(std::lower_bound(order.begin(), order.end(), esig[e]) - order.begin());
    const int nnext = static_cast<int>(order.size());
    color = std::move(next);
    if (nnext == ncolors) break;
    ncolors = nnext;
  }
  return color;
}

struct CanonicalLabeling {
  std::string form;
  std::vector<int> perm;  // perm[old] = new
};

namespace detail {

// Searches the color-respecting orderings of the ground set for the one whose
// rank-table code (ranks listed over position subsets in numeric order) is
// lexicographically least. Subtrees are cut when their code prefix is larger
// than the best, and by automorphisms found from repeated leaf codes.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Matroid& m) : m_(m), n_(m.size()), rank_(m.rank_table()) {
    const auto colors = element_colors(m);
    std::vector<int> elems(n_);
    std::iota(elems.begin(), elems.end(), 0);
    std::stable_sort(elems.begin(), elems.end(), [&](int a, int b) { return colors[a] < colors[b]; });
    pos_color_.resize(n_);
    for (int p = 0; p < n_; ++p) pos_color_[p] = colors[elems[p]];
    color_ = colors;
    img_.assign(std::size_t{1} << n_, 0);
    best_code_.assign(std::size_t{1} << n_, 0);
    cur_.assign(n_, -1);
  }

  std::vector<int> run() {
    dfs(0, true);
    return best_;
  }

 private:
  int dfs(int k, bool less) {
    if (k == n_) return leaf(less);
    const std::size_t lo = std::size_t{1} << k;
    std::vector<int> explored;
    for (int x = 0; x < n_; ++x) {
      if ((used_ >> x) & 1u) continue;
      if (color_[x] != pos_color_[k]) continue;
      if (same_orbit_as_explored(k, x, explored)) continue;

      cur_[k] = x;
      for (std::size_t m = 0; m < lo; ++m) img_[lo + m] = img_[m] | (1u << x);
      bool child_less = less || !have_best_;
      if (!child_less) {
        int cmp = 0;
        for (std::size_t m = lo; m < 2 * lo && cmp == 0; ++m) {
          const int a = rank_[img_[m]], b = best_code_[m];
          if (a != b) cmp = a < b ? -1 : 1;
        }
        if (cmp > 0) continue;
        child_less = cmp < 0;
      }
      const unsigned long version = version_;
      used_ |= 1u << x;
      const int jump = dfs(k + 1, child_less);
      used_ &= ~(1u << x);
      explored.push_back(x);
      if (version_ != version) less = false;
      if (jump >= 0 && jump < k) return jump;
    }
    return -1;
  }

  int leaf(bool less) {
    const std::size_t N = std::size_t{1} << n_;
    if (less || !have_best_) {
      for (std::size_t m = 0; m < N; ++m) best_code_[m] = rank_[img_[m]];
      best_ = cur_;
      have_best_ = true;
      ++version_;
      return -1;
    }
    std::vector<int> gamma(n_);
    bool identity = true;
    for (int p = 0; p < n_; ++p) {
      gamma[best_[p]] = cur_[p];
      identity = identity && best_[p] == cur_[p];
    }
    if (identity) return -1;
    autos_.push_back(gamma);
    int d = 0;
    while (best_[d] == cur_[d]) ++d;
    return d;
  }

  bool same_orbit_as_explored(int k, int x, const std::vector<int>& explored) {
    if (explored.empty() || autos_.empty()) return false;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& g : autos_) {
      bool fixes = true;
      for (int p = 0; p < k && fixes; ++p) fixes = g[cur_[p]] == cur_[p];
      if (!fixes) continue;
      for (int e = 0; e < n_; ++e) parent[find(e)] = find(g[e]);
    }
    for (int y : explored)
      if (find(y) == find(x)) return true;
    return false;
  }

  const Matroid& m_;
  int n_;
  const RankTable& rank_;
  std::vector<int> color_, pos_color_;
  std::vector<std::uint32_t> img_;
  std::vector<std::uint8_t> best_code_;
  std::vector<int> cur_, best_;
  std::vector<std::vector<int>> autos_;
  std::uint32_t used_ = 0;
  bool have_best_ = false;
  unsigned long version_ = 0;
};

}  // namespace detail

// Canonical relabeling plus a string that is equal for two matroids exactly
// when they are isomorphic: "n:r:" followed by the basis indicator over the
// r-subsets of the relabeled ground set, in hex.
inline CanonicalLabeling canonical_labeling(const Matroid& m) {
  const int n = m.size();
  std::vector<int> order = detail::CanonicalSearch(m).run();
  CanonicalLabeling out;
  out.perm.assign(n, 0);
  for (int p = 0; p < n; ++p) out.perm[order[p]] = p;
  const Matroid c = relabel(m, out.perm);
  std::string bits;
  int acc = 0, count = 0;
  static const char* hex = "0123456789abcdef";
  for_each_subset_of_size(n, c.rank(), [&](ElementSet s) {
    acc = (acc << 1) | (c.rank_of(s) == c.rank() ? 1 : 0);
    if (++count == 4) {
      bits.push_back(hex[acc]);
      acc = count = 0;
    }
  });
  if (count) bits.push_back(hex[acc << (4 - count)]);
  out.form = std::to_string(n) + ":" + std::to_string(m.rank()) + ":" + bits;
  return out;
}

inline std::string canonical_form(const Matroid& m) { return canonical_labeling(m).form; }

inline Matroid canonical_representative(const Matroid& m) {
  return relabel(m, canonical_labeling(m).perm);
}

inline bool isomorphic(const Matroid& a, const Matroid& b) {
  return a.size() == b.size() && a.rank() == b.rank() && canonical_form(a) == canonical_form(b);
}

}  // namespace mvl
