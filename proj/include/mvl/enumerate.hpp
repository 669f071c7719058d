#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "matroid.hpp"
#include "parallel.hpp"

namespace mvl {

// Up-closed family of flats closed under intersections of modular pairs.
// Stored sorted; the empty family adds a coloop.
struct ModularCut {
  std::vector<ElementSet> flats;
  bool contains(ElementSet f) const { return std::binary_search(flats.begin(), flats.end(), f); }
  friend bool operator==(const ModularCut& a, const ModularCut& b) { return a.flats == b.flats; }
};

inline bool is_modular_cut(const Matroid& m, const ModularCut& cut) {
  const auto flats = all_flats(m);
  for (auto f : cut.flats)
    if (!f.subset_of(m.ground()) || !m.is_flat(f)) return false;
  for (auto f : cut.flats) {
    for (const auto& g : flats)
      if (f.subset_of(g.set) && !cut.contains(g.set)) return false;
    for (auto g : cut.flats) {
      const ElementSet meet = f & g;
      if (m.rank_of(f) + m.rank_of(g) == m.rank_of(f | g) + m.rank_of(meet) && !cut.contains(meet)) return false;
    }
  }
  return true;
}

namespace detail {

// Linear subclasses of the hyperplanes: sets H such that whenever two members
// of H meet in a rank r-2 flat, every hyperplane through that flat is in H.
class LinearSubclassSearch {
 public:
  LinearSubclassSearch(std::size_t hyperplanes, std::vector<std::vector<int>> lines)
      : h_(hyperplanes), lines_(std::move(lines)), of_(hyperplanes) {
    for (std::size_t l = 0; l < lines_.size(); ++l)
      for (int x : lines_[l]) of_[x].push_back(static_cast<int>(l));
  }

  template <class Emit>
  void run(Emit&& emit) {
    std::vector<signed char> state(h_, -1);
    rec(state, 0, emit);
  }

 private:
  // Assign and propagate; false on conflict.
  bool assign(std::vector<signed char>& state, int x, signed char v) {
    std::vector<std::pair<int, signed char>> todo{{x, v}};
    while (!todo.empty()) {
      auto [y, val] = todo.back();
      todo.pop_back();
      if (state[y] == val) continue;
      if (state[y] != -1) return false;
      state[y] = val;
      for (int l : of_[y]) {
        int in = 0, out = 0;
        for (int z : lines_[l]) {
          in += state[z] == 1;
          out += state[z] == 0;
        }
        if (in >= 2) {
          if (out) return false;
          for (int z : lines_[l])
            if (state[z] == -1) todo.push_back({z, 1});
        }
      }
    }
    return true;
  }

  template <class Emit>
  void rec(std::vector<signed char>& state, std::size_t from, Emit& emit) {
    while (from < h_ && state[from] != -1) ++from;
    if (from == h_) {
      emit(state);
      return;
    }
    for (signed char v : {static_cast<signed char>(1), static_cast<signed char>(0)}) {
      std::vector<signed char> next = state;
      if (assign(next, static_cast<int>(from), v)) rec(next, from + 1, emit);
    }
  }

  std::size_t h_;
  std::vector<std::vector<int>> lines_;
  std::vector<std::vector<int>> of_;
};

}  // namespace detail

// All modular cuts, the empty cut first. A nonempty cut is recovered from its
// hyperplanes: a flat belongs iff every hyperplane containing it does.
inline std::vector<ModularCut> modular_cuts(const Matroid& m) {
  check_cap(m.size() + 1, "modular_cuts");
  std::vector<ModularCut> out;
  out.push_back({});
  const auto flats = all_flats(m);
  if (m.rank() == 0) {
    out.push_back({{m.ground()}});
    return out;
  }
  std::vector<ElementSet> hyper, colines;
  for (const auto& f : flats) {
    if (f.rank == m.rank() - 1) hyper.push_back(f.set);
    if (f.rank == m.rank() - 2) colines.push_back(f.set);
  }
  std::vector<std::vector<int>> lines;
  for (auto x : colines) {
    std::vector<int> through;
    for (std::size_t i = 0; i < hyper.size(); ++i)
      if (x.subset_of(hyper[i])) through.push_back(static_cast<int>(i));
    lines.push_back(std::move(through));
  }
  std::vector<std::vector<int>> above(flats.size());
  for (std::size_t f = 0; f < flats.size(); ++f)
    for (std::size_t i = 0; i < hyper.size(); ++i)
      if (flats[f].set.subset_of(hyper[i])) above[f].push_back(static_cast<int>(i));

  std::vector<ModularCut> nonempty;
  detail::LinearSubclassSearch(hyper.size(), std::move(lines)).run([&](const std::vector<signed char>& state) {
    ModularCut cut;
    for (std::size_t f = 0; f < flats.size(); ++f) {
      const bool in = flats[f].set == m.ground() ||
                      std::all_of(above[f].begin(), above[f].end(), [&](int i) { return state[i] == 1; });
      if (in) cut.flats.push_back(flats[f].set);
    }
    std::sort(cut.flats.begin(), cut.flats.end());
    nonempty.push_back(std::move(cut));
  });
  std::sort(nonempty.begin(), nonempty.end(),
            [](const ModularCut& a, const ModularCut& b) { return a.flats < b.flats; });
  out.insert(out.end(), nonempty.begin(), nonempty.end());
  return out;
}

// Single-element extension by a modular cut; the new element is n.
inline Matroid extend(const Matroid& m, const ModularCut& cut) {
  if (!is_modular_cut(m, cut)) fail(ErrorKind::InvalidCut, "family is not a modular cut");
  return extension_by(m, [&](ElementSet f) { return cut.contains(f); });
}

struct Catalog {
  int r = 0;
  int n = 0;
  bool complete = false;
  std::vector<Matroid> members;
  std::vector<std::string> forms;  // canonical forms, aligned with members
};

struct EnumerateOptions {
  bool force = false;  // permits n = 9
  int jobs = 1;
  double timeout_seconds = 0;  // 0 disables the limit
};

inline constexpr int kEnumerateDefaultMax = 8;
inline constexpr int kEnumerateForcedMax = 9;

// All matroids on n elements with rank in [rlo, rhi], one per isomorphism
// class, built level by level from the empty matroid. Members are canonical
// representatives sorted by canonical form.
inline Catalog enumerate_range(int n, int rlo, int rhi, const EnumerateOptions& opt = {}) {
  const int max_n = opt.force ? kEnumerateForcedMax : kEnumerateDefaultMax;
  if (n < 0) fail(ErrorKind::BadParameter, "negative ground-set size");
  if (n > max_n)
    fail(ErrorKind::CapExceeded, "enumeration bounded to n <= " + std::to_string(max_n) +
                                     (opt.force ? "" : " (use force for n = 9)"));
  const auto start = std::chrono::steady_clock::now();
  auto check_time = [&] {
    if (opt.timeout_seconds <= 0) return;
    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (el > opt.timeout_seconds) fail(ErrorKind::Timeout, "enumeration exceeded its time budget");
  };

  std::vector<Matroid> frontier{Matroid{}};
  std::vector<std::string> forms{canonical_form(Matroid{})};
  for (int k = 1; k <= n; ++k) {
    const int lo = std::max(0, rlo - (n - k)), hi = std::min(rhi, k);
    std::vector<std::vector<std::pair<std::string, Matroid>>> found(frontier.size());
    parallel_for(frontier.size(), opt.jobs, [&](std::size_t i) {
      check_time();
      std::map<std::string, Matroid> local;
      for (const auto& cut : modular_cuts(frontier[i])) {
        Matroid ext = extension_by(frontier[i], [&](ElementSet f) { return cut.contains(f); });
        if (ext.rank() < lo || ext.rank() > hi) continue;
        auto lab = canonical_labeling(ext);
        if (!local.count(lab.form)) local.emplace(lab.form, relabel(ext, lab.perm));
      }
      for (auto& kv : local) found[i].push_back(std::move(kv));
    });
    std::map<std::string, Matroid> level;
    for (auto& v : found)
      for (auto& kv : v) level.emplace(kv.first, kv.second);
    frontier.clear();
    forms.clear();
    for (auto& kv : level) {
      forms.push_back(kv.first);
      frontier.push_back(kv.second);
    }
  }
  Catalog c;
  c.r = rlo == rhi ? rlo : -1;
  c.n = n;
  c.complete = true;
  for (std::size_t i = 0; i < frontier.size(); ++i)
    if (frontier[i].rank() >= rlo && frontier[i].rank() <= rhi) {
      c.members.push_back(frontier[i]);
      c.forms.push_back(forms[i]);
    }
  return c;
}

inline Catalog enumerate_catalog(int r, int n, const EnumerateOptions& opt = {}) {
  if (r < 0 || r > n) fail(ErrorKind::BadParameter, "catalog needs 0 <= r <= n");
  return enumerate_range(n, r, r, opt);
}

}  // namespace mvl
