#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "element_set.hpp"
#include "error.hpp"

namespace mvl {

using RankTable = std::vector<std::uint8_t>;

struct RankedFlat {
  ElementSet set;
  int rank = 0;
  friend bool operator==(const RankedFlat& a, const RankedFlat& b) {
    return a.set == b.set && a.rank == b.rank;
  }
  friend bool operator<(const RankedFlat& a, const RankedFlat& b) {
    if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.set < b.set;
  }
};

// Calls f(S) for every r-subset S of [n] in increasing numeric order.
template <class F>
inline void for_each_subset_of_size(int n, int r, F&& f) {
  if (r < 0 || r > n) return;
  if (r == 0) {
    f(ElementSet(0));
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << r) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (s < limit) {
    f(ElementSet(static_cast<std::uint32_t>(s)));
    std::uint64_t c = s & (~s + 1);
    std::uint64_t t = s + c;
    s = (((t ^ s) >> 2) / c) | t;
  }
}

// A matroid on [n] given by its bases. The rank of every subset is tabulated
// once at construction; the table and the basis list are shared, immutable.
class Matroid {
 public:
  Matroid() : Matroid(0, RankTable{0}) {}

  int size() const { return n_; }
  int rank() const { return r_; }
  ElementSet ground() const { return ElementSet::full(n_); }
  const std::vector<ElementSet>& bases() const { return *bases_; }
  const RankTable& rank_table() const { return *table_; }

  int rank_of(ElementSet a) const { return (*table_)[a.bits]; }
  bool independent(ElementSet a) const { return rank_of(a) == a.size(); }

  ElementSet closure(ElementSet a) const {
    const int ra = rank_of(a);
    ElementSet out = a;
    for (int e = 0; e < n_; ++e)
      if (!a.contains(e) && rank_of(a.with(e)) == ra) out = out.with(e);
    return out;
  }
  bool is_flat(ElementSet a) const {
    const int ra = rank_of(a);
    for (int e = 0; e < n_; ++e)
      if (!a.contains(e) && rank_of(a.with(e)) == ra) return false;
    return true;
  }
  // Coloops of the restriction M|X.
  ElementSet coloops_of_restriction(ElementSet x) const {
    const int rx = rank_of(x);
    ElementSet out;
    for_each_element(x, [&](int e) {
      if (rank_of(x.without(e)) < rx) out = out.with(e);
    });
    return out;
  }
  ElementSet loops() const { return closure(ElementSet{}); }
  ElementSet coloops() const { return coloops_of_restriction(ground()); }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && *a.bases_ == *b.bases_;
  }

  // Trusted constructor: the table must already be a matroid rank function.
  static Matroid from_rank_table_unchecked(int n, RankTable table) {
    return Matroid(n, std::move(table));
  }

 private:
  Matroid(int n, RankTable table) : n_(n) {
    r_ = table.back();
    auto bases = std::make_shared<std::vector<ElementSet>>();
    for_each_subset_of_size(n, r_, [&](ElementSet s) {
      if (table[s.bits] == r_) bases->push_back(s);
    });
    table_ = std::make_shared<const RankTable>(std::move(table));
    bases_ = std::move(bases);
  }

  int n_ = 0;
  int r_ = 0;
  std::shared_ptr<const RankTable> table_;
  std::shared_ptr<const std::vector<ElementSet>> bases_;
};

namespace detail {

// Rank table of the family max_B |S ∩ B| for equal-size sets B.
inline RankTable rank_table_from_bases(int n, const std::vector<ElementSet>& bases) {
  const std::size_t N = std::size_t{1} << n;
  std::vector<std::uint8_t> indep(N, 0);
  for (auto b : bases) indep[b.bits] = 1;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::size_t m = 0; m < N; ++m)
      if ((m & bit) && indep[m]) indep[m ^ bit] = 1;
  }
  RankTable t(N, 0);
  for (std::size_t m = 1; m < N; ++m) {
    const int sz = std::popcount(static_cast<std::uint32_t>(m));
    if (indep[m]) {
      t[m] = static_cast<std::uint8_t>(sz);
      continue;
    }
    int best = 0;
    for (std::uint32_t b = static_cast<std::uint32_t>(m); b; b &= b - 1) {
      best = std::max<int>(best, t[m & ~(b & (~b + 1))]);
      if (best == sz - 1) break;
    }
    t[m] = static_cast<std::uint8_t>(best);
  }
  return t;
}

// Empty string when the table is a matroid rank function; otherwise a
// description of the first violated axiom.
inline std::string rank_table_defect(int n, const RankTable& t) {
  const std::size_t N = std::size_t{1} << n;
  if (t.size() != N) return "table size";
  if (t[0] != 0) return "rank of empty set is nonzero";
  for (std::size_t m = 0; m < N; ++m) {
    for (int e = 0; e < n; ++e) {
      if (m & (1u << e)) continue;
      const int d = int(t[m | (1u << e)]) - int(t[m]);
      if (d < 0 || d > 1)
        return "unit increase fails at " + to_string(ElementSet(std::uint32_t(m))) + " + " +
               std::to_string(e + 1);
      for (int f = e + 1; f < n; ++f) {
        if (m & (1u << f)) continue;
        if (int(t[m | (1u << e)]) + int(t[m | (1u << f)]) <
            int(t[m]) + int(t[m | (1u << e) | (1u << f)]))
          return "submodularity fails at " + to_string(ElementSet(std::uint32_t(m))) +
                 " with " + std::to_string(e + 1) + "," + std::to_string(f + 1);
      }
    }
  }
  return {};
}

// Table for the subsets of [n'] where bit j stands for original element pos[j].
template <class F>
inline RankTable remap_table(int n_new, const std::vector<int>& pos, F&& value_of_original) {
  const std::size_t N = std::size_t{1} << n_new;
  std::vector<std::uint32_t> orig(N, 0);
  RankTable t(N, 0);
  for (std::size_t m = 1; m < N; ++m) {
    const int low = std::countr_zero(static_cast<std::uint32_t>(m));
    orig[m] = orig[m & (m - 1)] | (1u << pos[low]);
  }
  for (std::size_t m = 0; m < N; ++m) t[m] = static_cast<std::uint8_t>(value_of_original(ElementSet(orig[m])));
  return t;
}

}  // namespace detail

// Validated construction from a basis family. Sets are 0-based here.
inline Matroid from_bases(int n, std::vector<ElementSet> bases) {
  check_cap(n, "from_bases");
  if (bases.empty()) fail(ErrorKind::EmptyBases, "no bases given");
  const ElementSet ground = ElementSet::full(n);
  const int r = bases.front().size();
  for (auto b : bases) {
    if (!b.subset_of(ground)) fail(ErrorKind::BadParameter, "basis " + to_string(b) + " not inside [n]");
    if (b.size() != r)
      fail(ErrorKind::MixedCardinality,
           "bases " + to_string(bases.front()) + " and " + to_string(b) + " differ in size");
  }
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  RankTable t = detail::rank_table_from_bases(n, bases);
  std::size_t count = 0;
  for_each_subset_of_size(n, r, [&](ElementSet s) { count += (t[s.bits] == r); });
  if (count == bases.size() && detail::rank_table_defect(n, t).empty())
    return Matroid::from_rank_table_unchecked(n, std::move(t));

  // Locate a concrete failing pair for the report.
  auto is_basis = [&](ElementSet s) { return std::binary_search(bases.begin(), bases.end(), s); };
  for (auto b1 : bases)
    for (auto b2 : bases) {
      if (b1 == b2) continue;
      for (int x : (b1 - b2).elements()) {
        bool ok = false;
        for (int y : (b2 - b1).elements())
          if (is_basis(b1.without(x).with(y))) { ok = true; break; }
        if (!ok)
          fail(ErrorKind::ExchangeViolation, "bases " + to_string(b1) + " and " + to_string(b2) +
                                                 " fail exchange at element " + std::to_string(x + 1));
      }
    }
  fail(ErrorKind::ExchangeViolation, "basis family is not a matroid");
}

// Validated construction from a full rank table.
inline Matroid from_rank_table(int n, RankTable t) {
  check_cap(n, "from_rank_table");
  std::string defect = detail::rank_table_defect(n, t);
  if (!defect.empty()) fail(ErrorKind::BadParameter, "not a matroid rank function: " + defect);
  return Matroid::from_rank_table_unchecked(n, std::move(t));
}

// Builds the table by calling rank(S) on every subset. The caller vouches for
// the matroid axioms.
template <class F>
inline Matroid from_rank_oracle_unchecked(int n, F&& rank) {
  check_cap(n, "from_rank_oracle");
  const std::size_t N = std::size_t{1} << n;
  RankTable t(N);
  for (std::size_t m = 0; m < N; ++m) t[m] = static_cast<std::uint8_t>(rank(ElementSet(std::uint32_t(m))));
  return Matroid::from_rank_table_unchecked(n, std::move(t));
}

inline int rank_of(const Matroid& m, ElementSet a) { return m.rank_of(a); }
inline ElementSet closure_of(const Matroid& m, ElementSet a) { return m.closure(a); }

// Flats grouped by rank 0..kmax, each level sorted. Built from cl(∅) upward by
// closing F ∪ {e} for every flat F of the previous level.
inline std::vector<std::vector<ElementSet>> flat_levels(const Matroid& m, int kmax) {
  kmax = std::min(kmax, m.rank());
  std::vector<std::vector<ElementSet>> levels;
  levels.push_back({m.loops()});
  for (int k = 1; k <= kmax; ++k) {
    std::vector<ElementSet> next;
    for (auto f : levels.back()) {
      ElementSet seen = f;
      for (int e = 0; e < m.size(); ++e) {
        if (seen.contains(e)) continue;
        ElementSet g = m.closure(f.with(e));
        seen |= g;
        next.push_back(g);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    levels.push_back(std::move(next));
  }
  return levels;
}

inline std::vector<ElementSet> flats_of_rank(const Matroid& m, int k) {
  if (k < 0 || k > m.rank()) fail(ErrorKind::BadParameter, "flat rank " + std::to_string(k) + " out of range");
  return flat_levels(m, k)[k];
}

// Flats covering f, i.e. cl(f ∪ e) for e outside f, deduplicated.
inline std::vector<ElementSet> covers_of(const Matroid& m, ElementSet f) {
  std::vector<ElementSet> out;
  ElementSet seen = f;
  for (int e = 0; e < m.size(); ++e) {
    if (seen.contains(e)) continue;
    ElementSet g = m.closure(f.with(e));
    seen |= g;
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Matroid minor(const Matroid& m, ElementSet del, ElementSet con, bool require_nonempty = false) {
  if (!(del & con).empty()) fail(ErrorKind::BadParameter, "deletion and contraction sets overlap");
  if (!(del | con).subset_of(m.ground())) fail(ErrorKind::BadParameter, "minor sets not inside [n]");
  const ElementSet keep = m.ground() - del - con;
  if (require_nonempty && keep.empty()) fail(ErrorKind::FullDeletion, "minor removes every element");
  const std::vector<int> pos = keep.elements();
  const int rc = m.rank_of(con);
  return Matroid::from_rank_table_unchecked(
      static_cast<int>(pos.size()),
      detail::remap_table(static_cast<int>(pos.size()), pos,
                          [&](ElementSet s) { return m.rank_of(s | con) - rc; }));
}

inline Matroid deletion(const Matroid& m, ElementSet del) { return minor(m, del, {}); }
inline Matroid contraction(const Matroid& m, ElementSet con) { return minor(m, {}, con); }
inline Matroid restriction(const Matroid& m, ElementSet keep) { return minor(m, m.ground() - keep, {}); }

inline Matroid dual(const Matroid& m) {
  const std::size_t N = std::size_t{1} << m.size();
  const std::uint32_t full = m.ground().bits;
  RankTable t(N);
  for (std::size_t s = 0; s < N; ++s)
    t[s] = static_cast<std::uint8_t>(std::popcount(std::uint32_t(s)) - m.rank() +
                                     m.rank_of(ElementSet(full & ~std::uint32_t(s))));
  return Matroid::from_rank_table_unchecked(m.size(), std::move(t));
}

inline Matroid truncate(const Matroid& m, int i) {
  if (i < 0 || i > m.rank()) fail(ErrorKind::BadParameter, "truncation depth out of range");
  RankTable t = m.rank_table();
  const auto cap = static_cast<std::uint8_t>(m.rank() - i);
  for (auto& v : t) v = std::min(v, cap);
  return Matroid::from_rank_table_unchecked(m.size(), std::move(t));
}

inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  const int n = a.size() + b.size();
  check_cap(n, "direct_sum");
  const std::size_t N = std::size_t{1} << n;
  const std::uint32_t low = a.ground().bits;
  RankTable t(N);
  for (std::size_t s = 0; s < N; ++s)
    t[s] = static_cast<std::uint8_t>(a.rank_of(ElementSet(std::uint32_t(s) & low)) +
                                     b.rank_of(ElementSet(std::uint32_t(s) >> a.size())));
  return Matroid::from_rank_table_unchecked(n, std::move(t));
}

// Adds element n. in_cut(F) decides, for each flat F of m, whether the new
// element lies in cl(F) of the extension.
template <class InCut>
inline Matroid extension_by(const Matroid& m, InCut&& in_cut) {
  check_cap(m.size() + 1, "extension");
  const std::size_t N = std::size_t{1} << m.size();
  RankTable t(2 * N);
  for (std::size_t s = 0; s < N; ++s) {
    const ElementSet S(static_cast<std::uint32_t>(s));
    t[s] = static_cast<std::uint8_t>(m.rank_of(S));
    t[s | N] = static_cast<std::uint8_t>(m.rank_of(S) + (in_cut(m.closure(S)) ? 0 : 1));
  }
  return Matroid::from_rank_table_unchecked(m.size() + 1, std::move(t));
}

inline Matroid free_extension(const Matroid& m) {
  if (m.rank() < 1) fail(ErrorKind::BadParameter, "free extension needs rank at least 1");
  check_cap(m.size() + 1, "free_extension");
  const std::size_t N = std::size_t{1} << m.size();
  RankTable t(2 * N);
  for (std::size_t s = 0; s < N; ++s) {
    t[s] = m.rank_table()[s];
    t[s | N] = static_cast<std::uint8_t>(std::min(m.rank_table()[s] + 1, m.rank()));
  }
  return Matroid::from_rank_table_unchecked(m.size() + 1, std::move(t));
}

// perm[old] = new label.
inline Matroid relabel(const Matroid& m, const std::vector<int>& perm) {
  std::vector<int> inv(m.size());
  for (int i = 0; i < m.size(); ++i) inv[perm[i]] = i;
  return Matroid::from_rank_table_unchecked(
      m.size(), detail::remap_table(m.size(), inv, [&](ElementSet s) { return m.rank_of(s); }));
}

// Connected components, ordered by least element. Uses the fundamental
// circuits of one basis: their overlap graph has the same components as M.
inline std::vector<ElementSet> components(const Matroid& m) {
  const int n = m.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const ElementSet b = m.bases().front();
  for (int x = 0; x < n; ++x) {
    if (b.contains(x) || m.rank_of(ElementSet::single(x)) == 0) continue;
    for_each_element(b, [&](int y) {
      if (m.rank_of(b.without(y).with(x)) == m.rank()) parent[find(x)] = find(y);
    });
  }
  std::vector<ElementSet> byroot(n);
  for (int x = 0; x < n; ++x) byroot[find(x)] = byroot[find(x)].with(x);
  std::vector<ElementSet> out;
  for (auto s : byroot)
    if (!s.empty()) out.push_back(s);
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) {
    return std::countr_zero(a.bits) < std::countr_zero(b.bits);
  });
  return out;
}

// Every flat of m, lowest rank first.
inline std::vector<RankedFlat> all_flats(const Matroid& m) {
  std::vector<RankedFlat> out;
  auto levels = flat_levels(m, m.rank());
  for (int k = 0; k < static_cast<int>(levels.size()); ++k)
    for (auto f : levels[k]) out.push_back({f, k});
  return out;
}

// Cyclic flats (flats whose restriction has no coloops), sorted by size.
inline std::vector<RankedFlat> cyclic_flat_list(const Matroid& m) {
  std::vector<RankedFlat> out;
  for (const auto& f : all_flats(m))
    if (m.coloops_of_restriction(f.set).empty()) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

// Rank function rk(X) = min over (F, h) of h + |X − F|, validated by checking
// that the result has exactly the given cyclic flats.
inline Matroid from_cyclic_flats(int n, std::vector<RankedFlat> z) {
  check_cap(n, "from_cyclic_flats");
  if (z.empty()) fail(ErrorKind::InconsistentZ, "empty cyclic-flat family");
  const ElementSet ground = ElementSet::full(n);
  for (const auto& f : z) {
    if (!f.set.subset_of(ground)) fail(ErrorKind::BadParameter, "cyclic flat " + to_string(f.set) + " not inside [n]");
    if (f.rank < 0 || f.rank > f.set.size())
      fail(ErrorKind::InconsistentZ, "cyclic flat " + to_string(f.set) + " has impossible rank");
  }
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (std::size_t i = 0; i + 1 < z.size(); ++i)
    if (z[i].set == z[i + 1].set) fail(ErrorKind::InconsistentZ, "set " + to_string(z[i].set) + " given two ranks");
  for (const auto& f : z) {
    if (!z.front().set.subset_of(f.set)) fail(ErrorKind::InconsistentZ, "no least cyclic flat");
    if (!f.set.subset_of(z.back().set)) fail(ErrorKind::InconsistentZ, "no greatest cyclic flat");
  }
  const std::size_t N = std::size_t{1} << n;
  RankTable t(N);
  for (std::size_t s = 0; s < N; ++s) {
    int best = 255;
    for (const auto& f : z)
      best = std::min(best, f.rank + (ElementSet(std::uint32_t(s)) - f.set).size());
    t[s] = static_cast<std::uint8_t>(best);
  }
  std::string defect = detail::rank_table_defect(n, t);
  if (!defect.empty()) fail(ErrorKind::InconsistentZ, "induced rank function invalid: " + defect);
  Matroid m = Matroid::from_rank_table_unchecked(n, std::move(t));
  if (cyclic_flat_list(m) != z)
    fail(ErrorKind::InconsistentZ, "cyclic flats of the induced matroid differ from the input");
  return m;
}

}  // namespace mvl
