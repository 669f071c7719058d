#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "expr.hpp"
#include "lp.hpp"
#include "parallel.hpp"
#include "zlattice.hpp"

namespace mvl {

enum class Direction { Max, Min };

struct PipelineStep {
  Direction dir = Direction::Max;
  InvariantExpr expr;
  json source;
};

struct PipelineSpec {
  int r = 0;
  int n = 0;
  std::string name;
  std::string realizes;
  std::vector<PipelineStep> steps;
};

inline PipelineSpec parse_pipeline(const json& j) {
  if (!j.is_object()) fail(ErrorKind::BadParameter, "pipeline spec must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "r" && k != "n" && k != "steps" && k != "name" && k != "realizes")
      fail(ErrorKind::BadParameter, "unexpected key '" + k + "' in pipeline spec");
  }
  for (const char* k : {"r", "n", "steps"})
    if (!j.contains(k)) fail(ErrorKind::BadParameter, std::string("pipeline spec lacks '") + k + "'");
  if (!j.at("r").is_number_integer() || !j.at("n").is_number_integer())
    fail(ErrorKind::BadParameter, "pipeline r and n must be integers");
  PipelineSpec p;
  p.r = j.at("r").get<int>();
  p.n = j.at("n").get<int>();
  if (p.r < 0 || p.r > p.n) fail(ErrorKind::BadParameter, "pipeline needs 0 <= r <= n");
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  if (j.contains("realizes")) p.realizes = j.at("realizes").get<std::string>();
  const json& steps = j.at("steps");
  if (!steps.is_array() || steps.empty()) fail(ErrorKind::BadParameter, "pipeline needs a nonempty 'steps' array");
  for (const auto& s : steps) {
    if (!s.is_object() || !s.contains("dir") || !s.contains("expr"))
      fail(ErrorKind::BadParameter, "each step needs 'dir' and 'expr'");
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "dir" && it.key() != "expr" && it.key() != "note")
        fail(ErrorKind::BadParameter, "unexpected key '" + it.key() + "' in step");
    const std::string dir = s.at("dir").get<std::string>();
    if (dir != "max" && dir != "min") fail(ErrorKind::BadParameter, "step direction must be max or min");
    p.steps.push_back({dir == "max" ? Direction::Max : Direction::Min, parse_expr(s.at("expr")), s.at("expr")});
  }
  return p;
}

struct StepTrace {
  std::int64_t optimum = 0;
  std::size_t remaining = 0;
};

struct PipelineResult {
  std::vector<std::size_t> survivors;  // indices into the catalog
  std::vector<StepTrace> trace;
};

// Keeps, at each step, exactly the members attaining the optimum.
inline PipelineResult run_pipeline(const std::vector<Matroid>& catalog, const PipelineSpec& p, int jobs = 1) {
  if (catalog.empty()) fail(ErrorKind::EmptyCatalog, "pipeline run on an empty catalog");
  if (p.steps.empty()) fail(ErrorKind::BadParameter, "pipeline has no steps");
  for (const auto& m : catalog)
    if (m.rank() != p.r || m.size() != p.n)
      fail(ErrorKind::RankSizeMismatch, "catalog member of rank " + std::to_string(m.rank()) + " on " +
                                            std::to_string(m.size()) + " elements in a (" + std::to_string(p.r) +
                                            "," + std::to_string(p.n) + ") pipeline");
  std::vector<EvalCache> caches;
  caches.reserve(catalog.size());
  for (const auto& m : catalog) caches.emplace_back(m);

  PipelineResult res;
  res.survivors.resize(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) res.survivors[i] = i;
  for (const auto& step : p.steps) {
    std::vector<std::int64_t> values(res.survivors.size());
    parallel_for(res.survivors.size(), jobs,
                 [&](std::size_t i) { values[i] = eval_expr(step.expr, caches[res.survivors[i]]); });
    const std::int64_t best = step.dir == Direction::Max ? *std::max_element(values.begin(), values.end())
                                                         : *std::min_element(values.begin(), values.end());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] == best) kept.push_back(res.survivors[i]);
    res.survivors = std::move(kept);
    res.trace.push_back({best, res.survivors.size()});
  }
  return res;
}

struct ExtremalCertificate {
  bool certified = false;
  std::optional<OmegaPoint> point;
  PipelineResult run;
};

inline ExtremalCertificate certify_extremal_point(const std::vector<Matroid>& catalog, const PipelineSpec& p,
                                                  int jobs = 1) {
  ExtremalCertificate out;
  out.run = run_pipeline(catalog, p, jobs);
  std::vector<OmegaPoint> pts(out.run.survivors.size());
  parallel_for(pts.size(), jobs, [&](std::size_t i) { pts[i] = nested_decomposition(catalog[out.run.survivors[i]]); });
  out.certified = std::all_of(pts.begin(), pts.end(), [&](const OmegaPoint& q) { return q == pts.front(); });
  if (out.certified) out.point = pts.front();
  return out;
}

// True iff target is not a convex combination of the other distinct points.
inline bool certify_vertex(const std::vector<OmegaPoint>& points, const OmegaPoint& target) {
  for (const auto& q : points)
    if (q.r != target.r || q.n != target.n)
      fail(ErrorKind::DimensionMismatch, "points from different (r,n)");
  std::vector<const OmegaPoint*> others;
  for (const auto& q : points) {
    if (q == target) continue;
    if (std::none_of(others.begin(), others.end(), [&](const OmegaPoint* o) { return *o == q; }))
      others.push_back(&q);
  }
  if (others.empty()) return true;
  std::set<NestedKey, NestedKeyLess> keys;
  for (auto* q : others)
    for (auto& kv : q->coeffs) keys.insert(kv.first);
  for (auto& kv : target.coeffs) keys.insert(kv.first);

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (const auto& key : keys) {
    std::vector<Rational> row;
    for (auto* q : others) {
      auto it = q->coeffs.find(key);
      row.push_back(it == q->coeffs.end() ? 0 : it->second);
    }
    A.push_back(std::move(row));
    auto it = target.coeffs.find(key);
    b.push_back(it == target.coeffs.end() ? 0 : it->second);
  }
  A.push_back(std::vector<Rational>(others.size(), 1));
  b.push_back(1);
  return !lp_feasible(std::move(A), std::move(b));
}

}  // namespace mvl
