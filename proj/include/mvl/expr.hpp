#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariants.hpp"
#include "matroid.hpp"

namespace mvl {

using json = nlohmann::json;

// Integer parameter set: an explicit list, or "every value in range not in
// excluded" (the range is fixed at evaluation time).
struct IntSet {
  std::vector<int> values;
  bool complement = false;

  std::vector<int> resolve(int lo, int hi) const {
    if (!complement) return values;
    std::vector<int> out;
    std::set<int> skip(values.begin(), values.end());
    for (int v = lo; v <= hi; ++v)
      if (!skip.count(v)) out.push_back(v);
    return out;
  }
};

enum class Primitive {
  FlatCount,
  FlagCount,
  TutteCoeff,
  GCoeff,
  NBases,
  NIndependents,
  CircuitCount,
  CircuitHyperplanes,
  Sum,
};

// Expression tree over valuative invariants with integer-weighted sums.
struct InvariantExpr {
  Primitive op = Primitive::Sum;
  IntSet k, s, c, i, j, size;
  bool has_c = false;
  int h = 0;
  int flag_k = 0;
  std::vector<int> sizes;
  std::optional<int> degree_below;
  std::vector<std::string> seqs;
  std::vector<std::pair<std::int64_t, InvariantExpr>> terms;
};

namespace detail {

inline IntSet int_set(const json& v, const char* what) {
  IntSet out;
  if (v.is_number_integer()) out.values.push_back(v.get<int>());
  else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number_integer()) fail(ErrorKind::BadParameter, std::string(what) + " must hold integers");
      out.values.push_back(x.get<int>());
    }
  } else fail(ErrorKind::BadParameter, std::string(what) + " must be an integer or an array of integers");
  return out;
}

inline void allow_keys(const json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) fail(ErrorKind::BadParameter, "unexpected key '" + it.key() + "' in expression");
  }
}

inline const json& need(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::BadParameter, std::string("expression lacks '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline InvariantExpr parse_expr(const json& j) {
  using detail::allow_keys;
  using detail::int_set;
  using detail::need;
  if (!j.is_object()) fail(ErrorKind::BadParameter, "expression must be a JSON object");
  const json& opv = need(j, "op");
  if (!opv.is_string()) fail(ErrorKind::BadParameter, "'op' must be a string");
  const std::string op = opv.get<std::string>();
  InvariantExpr e;
  if (op == "flat_count") {
    allow_keys(j, {"op", "k", "s", "sizes_not_in", "c"});
    e.op = Primitive::FlatCount;
    e.k = int_set(need(j, "k"), "k");
    if (j.contains("s") == j.contains("sizes_not_in"))
      fail(ErrorKind::BadParameter, "flat_count needs exactly one of 's' and 'sizes_not_in'");
    if (j.contains("s")) e.s = int_set(j.at("s"), "s");
    else {
      e.s = int_set(j.at("sizes_not_in"), "sizes_not_in");
      e.s.complement = true;
    }
    if (j.contains("c")) {
      e.has_c = true;
      e.c = int_set(j.at("c"), "c");
    }
  } else if (op == "flag_count") {
    allow_keys(j, {"op", "h", "k", "sizes"});
    e.op = Primitive::FlagCount;
    e.h = need(j, "h").get<int>();
    e.flag_k = need(j, "k").get<int>();
    e.sizes = need(j, "sizes").get<std::vector<int>>();
    if (e.h < 0 || e.h > e.flag_k || static_cast<int>(e.sizes.size()) != e.flag_k - e.h + 1)
      fail(ErrorKind::BadParameter, "flag_count needs 0 <= h <= k and one size per rank");
  } else if (op == "tutte_coeff") {
    allow_keys(j, {"op", "i", "j", "degree_below"});
    e.op = Primitive::TutteCoeff;
    if (j.contains("degree_below")) {
      if (j.contains("i") || j.contains("j"))
        fail(ErrorKind::BadParameter, "tutte_coeff takes either i/j or degree_below");
      e.degree_below = j.at("degree_below").get<int>();
    } else {
      e.i = int_set(need(j, "i"), "i");
      e.j = int_set(need(j, "j"), "j");
    }
  } else if (op == "g_coeff") {
    allow_keys(j, {"op", "seq"});
    e.op = Primitive::GCoeff;
    const json& s = need(j, "seq");
    if (s.is_string()) e.seqs.push_back(s.get<std::string>());
    else e.seqs = s.get<std::vector<std::string>>();
    for (const auto& q : e.seqs)
      for (char ch : q)
        if (ch != '0' && ch != '1') fail(ErrorKind::BadParameter, "rank sequence must be a 0/1 string");
  } else if (op == "n_bases" || op == "n_independents" || op == "circuit_hyperplanes") {
    allow_keys(j, {"op"});
    e.op = op == "n_bases" ? Primitive::NBases
           : op == "n_independents" ? Primitive::NIndependents
                                    : Primitive::CircuitHyperplanes;
  } else if (op == "circuit_count") {
    allow_keys(j, {"op", "size"});
    e.op = Primitive::CircuitCount;
    e.size = int_set(need(j, "size"), "size");
  } else if (op == "sum") {
    allow_keys(j, {"op", "terms"});
    e.op = Primitive::Sum;
    const json& ts = need(j, "terms");
    if (!ts.is_array() || ts.empty()) fail(ErrorKind::BadParameter, "sum needs a nonempty 'terms' array");
    for (const auto& t : ts) {
      if (!t.is_object() || !t.contains("expr")) fail(ErrorKind::BadParameter, "sum term needs 'expr'");
      for (auto it = t.begin(); it != t.end(); ++it)
        if (it.key() != "expr" && it.key() != "weight")
          fail(ErrorKind::BadParameter, "unexpected key '" + it.key() + "' in sum term");
      std::int64_t w = 1;
      if (t.contains("weight")) {
        if (!t.at("weight").is_number_integer()) fail(ErrorKind::BadParameter, "weights must be integers");
        w = t.at("weight").get<std::int64_t>();
      }
      e.terms.push_back({w, parse_expr(t.at("expr"))});
    }
  } else {
    fail(ErrorKind::BadParameter, "unknown primitive '" + op + "'");
  }
  return e;
}

// Per-matroid memo of the expensive invariants. Owned by one evaluation
// thread at a time.
class EvalCache {
 public:
  explicit EvalCache(const Matroid& m) : m_(m) {}
  const Matroid& matroid() const { return m_; }

  const std::vector<std::vector<ElementSet>>& flats() {
    if (!flats_) flats_ = flat_levels(m_, m_.rank());
    return *flats_;
  }
  const TuttePoly& tutte_poly() {
    if (!tutte_) tutte_ = tutte(m_);
    return *tutte_;
  }
  const GInvariant& g() {
    if (!g_) g_ = g_invariant(m_);
    return *g_;
  }
  const CircuitStats& circuits() {
    if (!circuits_) circuits_ = circuit_stats(m_);
    return *circuits_;
  }
  std::int64_t independents() {
    if (!indep_) indep_ = counting_evaluations(m_).independents;
    return *indep_;
  }

 private:
  Matroid m_;
  std::optional<std::vector<std::vector<ElementSet>>> flats_;
  std::optional<TuttePoly> tutte_;
  std::optional<GInvariant> g_;
  std::optional<CircuitStats> circuits_;
  std::optional<std::int64_t> indep_;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::CapExceeded, "integer overflow in expression");
  return out;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::CapExceeded, "integer overflow in expression");
  return out;
}

inline void in_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi)
    fail(ErrorKind::BadParameter, std::string(what) + " = " + std::to_string(v) + " outside [" +
                                      std::to_string(lo) + "," + std::to_string(hi) + "]");
}

}  // namespace detail

inline std::int64_t eval_expr(const InvariantExpr& e, EvalCache& cache) {
  using detail::checked_add;
  using detail::in_range;
  const Matroid& m = cache.matroid();
  const int n = m.size(), r = m.rank();
  switch (e.op) {
    case Primitive::FlatCount: {
      std::int64_t total = 0;
      const auto& levels = cache.flats();
      for (int k : e.k.resolve(0, r)) {
        in_range(k, 0, r, "flat rank k");
        const auto sizes = e.s.resolve(0, n);
        for (int s : sizes) in_range(s, 0, n, "flat size s");
        std::vector<int> cs;
        if (e.has_c) {
          cs = e.c.resolve(0, n);
          for (int c : cs) in_range(c, 0, n, "coloop count c");
        }
        for (auto f : levels[k]) {
          if (std::find(sizes.begin(), sizes.end(), f.size()) == sizes.end()) continue;
          if (e.has_c) {
            const int c = m.coloops_of_restriction(f).size();
            total = checked_add(total, static_cast<std::int64_t>(std::count(cs.begin(), cs.end(), c)));
          } else {
            total = checked_add(total, 1);
          }
        }
      }
      return total;
    }
    case Primitive::FlagCount:
      in_range(e.flag_k, 0, r, "flag rank k");
      for (int s : e.sizes) in_range(s, 0, n, "flag size");
      return flag_count(m, e.h, e.flag_k, e.sizes);
    case Primitive::TutteCoeff: {
      const TuttePoly& t = cache.tutte_poly();
      std::int64_t total = 0;
      if (e.degree_below) {
        for (int i = 0; i <= r; ++i)
          for (int j = 0; j <= n - r; ++j)
            if (i + j < *e.degree_below) total = checked_add(total, t.coeff(i, j));
        return total;
      }
      for (int i : e.i.resolve(0, r))
        for (int j : e.j.resolve(0, n - r)) {
          in_range(i, 0, n, "Tutte exponent i");
          in_range(j, 0, n, "Tutte exponent j");
          total = checked_add(total, t.coeff(i, j));
        }
      return total;
    }
    case Primitive::GCoeff: {
      std::int64_t total = 0;
      const GInvariant& g = cache.g();
      for (const auto& s : e.seqs) {
        if (static_cast<int>(s.size()) != n) fail(ErrorKind::BadParameter, "rank sequence length differs from n");
        auto it = g.find(s);
        if (it != g.end()) total = checked_add(total, it->second);
      }
      return total;
    }
    case Primitive::NBases:
      return static_cast<std::int64_t>(m.bases().size());
    case Primitive::NIndependents:
      return cache.independents();
    case Primitive::CircuitCount: {
      std::int64_t total = 0;
      const auto& cs = cache.circuits();
      for (int s : e.size.resolve(0, n)) {
        in_range(s, 0, n + 1, "circuit size");
        auto it = cs.by_size.find(s);
        if (it != cs.by_size.end()) total = checked_add(total, it->second);
      }
      return total;
    }
    case Primitive::CircuitHyperplanes:
      return cache.circuits().circuit_hyperplanes;
    case Primitive::Sum: {
      std::int64_t total = 0;
      for (const auto& [w, sub] : e.terms) total = checked_add(total, detail::checked_mul(w, eval_expr(sub, cache)));
      return total;
    }
  }
  return 0;
}

inline std::int64_t eval_expr(const InvariantExpr& e, const Matroid& m) {
  EvalCache cache(m);
  return eval_expr(e, cache);
}

}  // namespace mvl
