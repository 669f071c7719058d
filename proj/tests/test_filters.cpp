#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"
#include "mvl/canonical.hpp"
#include "mvl/enumerate.hpp"
#include "mvl/families.hpp"
#include "mvl/filters.hpp"

using namespace mvl;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

const Catalog& catalog(int r, int n) {
  static std::map<std::pair<int, int>, Catalog> memo;
  auto it = memo.find({r, n});
  if (it == memo.end()) it = memo.emplace(std::make_pair(r, n), enumerate_catalog(r, n)).first;
  return it->second;
}

json step(const char* dir, json expr) { return {{"dir", dir}, {"expr", std::move(expr)}}; }
json fc(json k, json s) { return {{"op", "flat_count"}, {"k", k}, {"s", s}}; }
json fc_not(json k, json s) { return {{"op", "flat_count"}, {"k", k}, {"sizes_not_in", s}}; }

PipelineSpec spec(int r, int n, std::vector<json> steps) {
  json j{{"r", r}, {"n", n}, {"steps", steps}};
  return parse_pipeline(j);
}

std::set<std::string> survivor_forms(const Catalog& c, const PipelineResult& res) {
  std::set<std::string> out;
  for (auto i : res.survivors) out.insert(canonical_form(c.members[i]));
  return out;
}

std::vector<json> sample_expressions() {
  return {
      fc(1, 1),
      fc(2, 3),
      fc_not(2, json::array({2, 3})),
      {{"op", "flat_count"}, {"k", json::array({0, 1, 2})}, {"sizes_not_in", json::array()}, {"c", 0}},
      {{"op", "flag_count"}, {"h", 0}, {"k", 2}, {"sizes", {0, 1, 3}}},
      {{"op", "tutte_coeff"}, {"i", 1}, {"j", 0}},
      {{"op", "tutte_coeff"}, {"degree_below", 2}},
      {{"op", "g_coeff"}, {"seq", "110000"}},
      {{"op", "n_bases"}},
      {{"op", "n_independents"}},
      {{"op", "circuit_count"}, {"size", 3}},
      {{"op", "circuit_hyperplanes"}},
      {{"op", "sum"}, {"terms", {{{"weight", 3}, {"expr", fc(1, 2)}}, {{"weight", -2}, {"expr", {{"op", "n_bases"}}}}}}},
  };
}

}  // namespace

TEST(Expr, ParsesAndRejects) {
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "nope"}}); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "flat_count"}, {"k", 1}}); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "flat_count"}, {"k", 1}, {"s", 1}, {"extra", 1}}); }),
            ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "g_coeff"}, {"seq", "10x"}}); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "flag_count"}, {"h", 0}, {"k", 2}, {"sizes", {0, 1}}}); }),
            ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr({{"op", "sum"}, {"terms", {{{"weight", 0.5}, {"expr", fc(1, 1)}}}}}); }),
            ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_expr(json::array()); }), ErrorKind::BadParameter);
  for (const auto& e : sample_expressions()) EXPECT_NO_THROW(parse_expr(e));
}

TEST(Expr, EvaluatesOnCompleteGraphK4) {
  const Matroid k4 = cycle_matroid_complete(3);
  EXPECT_EQ(eval_expr(parse_expr(fc(2, 3)), k4), 4);
  EXPECT_EQ(eval_expr(parse_expr(fc_not(2, json::array({3}))), k4), 3);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "n_bases"}}), k4), 16);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "n_independents"}}), k4), 1 + 6 + 15 + 16);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "circuit_count"}, {"size", json::array({3, 4})}}), k4), 4 + 3);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "tutte_coeff"}, {"i", 1}, {"j", 1}}), k4), 4);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "flag_count"}, {"h", 0}, {"k", 3}, {"sizes", {0, 1, 3, 6}}}), k4), 12);
  EXPECT_EQ(eval_expr(parse_expr({{"op", "sum"},
                                  {"terms", {{{"weight", 2}, {"expr", fc(2, 3)}}, {{"expr", fc(2, 2)}}}}}),
                      k4),
            2 * 4 + 3);
  EXPECT_EQ(kind_of([&] { eval_expr(parse_expr(fc(5, 3)), k4); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([&] { eval_expr(parse_expr({{"op", "g_coeff"}, {"seq", "101"}}), k4); }), ErrorKind::BadParameter);
}

TEST(Expr, EveryPrimitiveIsValuative) {
  // f(M) equals the Omega-weighted sum of f over nested matroids
  std::vector<InvariantExpr> exprs;
  for (const auto& e : sample_expressions()) exprs.push_back(parse_expr(e));
  for (auto [r, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}, {2, 6}}) {
    std::vector<InvariantExpr> local;
    for (std::size_t i = 0; i < exprs.size(); ++i)
      if (i != 7 || n == 6) local.push_back(exprs[i]);  // the g_coeff sample has length 6
    for (const auto& m : catalog(r, n).members) {
      const OmegaPoint p = nested_decomposition(m);
      for (const auto& e : local) {
        std::int64_t want = 0;
        for (auto& [k, v] : p.coeffs) want += v * eval_expr(e, nested_from_path(k));
        ASSERT_EQ(eval_expr(e, m), want);
      }
    }
  }
}

TEST(Pipeline, SpecValidation) {
  EXPECT_EQ(kind_of([] { parse_pipeline({{"r", 3}, {"n", 6}}); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_pipeline({{"r", 3}, {"n", 6}, {"steps", json::array()}}); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_pipeline({{"r", 3}, {"n", 6}, {"steps", {step("up", fc(1, 1))}}}); }),
            ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_pipeline({{"r", 7}, {"n", 6}, {"steps", {step("max", fc(1, 1))}}}); }),
            ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { parse_pipeline({{"r", 3}, {"n", 6}, {"steps", {step("max", fc(1, 1))}}, {"x", 1}}); }),
            ErrorKind::BadParameter);
}

TEST(Pipeline, CompleteGraphK4FromThreePointLines) {
  const auto& c = catalog(3, 6);
  const auto p = spec(3, 6, {step("max", fc(1, 1)), step("min", fc_not(2, {2, 3})), step("min", fc_not(3, {3, 4, 6})),
                             step("max", fc(2, 3))});
  const auto res = run_pipeline(c.members, p);
  ASSERT_EQ(survivor_forms(c, res).size(), 1u);
  EXPECT_TRUE(isomorphic(c.members[res.survivors[0]], cycle_matroid_complete(3)));
  EXPECT_EQ(res.trace.back().optimum, 4);
}

TEST(Pipeline, FanoFromFlags) {
  const auto& c = catalog(3, 7);
  const auto p = spec(3, 7, {step("max", fc(1, 1)), step("max", {{"op", "flag_count"}, {"h", 0}, {"k", 3}, {"sizes", {0, 1, 3, 7}}})});
  const auto res = run_pipeline(c.members, p);
  ASSERT_EQ(res.survivors.size(), 1u);
  EXPECT_TRUE(isomorphic(c.members[res.survivors[0]], projective_geometry(3, 2)));
  EXPECT_EQ(res.trace.back().optimum, 21);
}

TEST(Pipeline, MostBasesIsUniform) {
  const auto& c = catalog(2, 4);
  const auto res = run_pipeline(c.members, spec(2, 4, {step("max", {{"op", "n_bases"}})}));
  ASSERT_EQ(res.survivors.size(), 1u);
  EXPECT_EQ(c.members[res.survivors[0]], uniform(2, 4));
}

TEST(Pipeline, MinimizingIsMaximizingTheNegation) {
  const auto& c = catalog(3, 6);
  for (const auto& e : sample_expressions()) {
    if (e.at("op") == "g_coeff") continue;
    const auto a = run_pipeline(c.members, spec(3, 6, {step("min", e)}));
    const auto b = run_pipeline(c.members, spec(3, 6, {step("max", {{"op", "sum"}, {"terms", {{{"weight", -1}, {"expr", e}}}}})}));
    ASSERT_EQ(a.survivors, b.survivors);
    ASSERT_EQ(a.trace[0].optimum, -b.trace[0].optimum);
  }
}

TEST(Pipeline, RelabelingTheCatalogChangesNothing) {
  const auto& c = catalog(3, 6);
  std::mt19937 rng(9);
  std::vector<Matroid> shuffled;
  for (const auto& m : c.members) {
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    shuffled.push_back(relabel(m, perm));
  }
  for (const auto& e : sample_expressions()) {
    const auto p = spec(3, 6, {step("max", e)});
    const auto a = run_pipeline(c.members, p);
    const auto b = run_pipeline(shuffled, p);
    ASSERT_EQ(a.survivors, b.survivors);
  }
}

TEST(Pipeline, Errors) {
  EXPECT_EQ(kind_of([] { run_pipeline({}, spec(2, 4, {step("max", fc(1, 1))})); }), ErrorKind::EmptyCatalog);
  EXPECT_EQ(kind_of([] { run_pipeline({uniform(2, 5)}, spec(2, 4, {step("max", fc(1, 1))})); }),
            ErrorKind::RankSizeMismatch);
}

TEST(Pipeline, ParallelRunAgreesWithSerial) {
  const auto& c = catalog(3, 7);
  const auto p = spec(3, 7, {step("max", fc(1, 1)), step("min", {{"op", "n_independents"}})});
  const auto a = run_pipeline(c.members, p, 1);
  const auto b = run_pipeline(c.members, p, 4);
  EXPECT_EQ(a.survivors, b.survivors);
}

TEST(Vertex, UniformIsAVertexNestedNENEIsNot) {
  std::vector<OmegaPoint> pts;
  for (const auto& m : catalog(2, 4).members) pts.push_back(nested_decomposition(m));
  EXPECT_TRUE(certify_vertex(pts, nested_decomposition(uniform(2, 4))));
  EXPECT_FALSE(certify_vertex(pts, nested_decomposition(nested_from_path("NENE"))));
}

TEST(Vertex, OrderOfPointsDoesNotMatter) {
  std::vector<OmegaPoint> pts;
  for (const auto& m : catalog(2, 5).members) pts.push_back(nested_decomposition(m));
  std::vector<bool> base;
  for (const auto& t : pts) base.push_back(certify_vertex(pts, t));
  std::mt19937 rng(2);
  for (int k = 0; k < 3; ++k) {
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(certify_vertex(shuffled, pts[i]), base[i]);
  }
}

TEST(Vertex, UniqueOptimaOfValuativeInvariantsAreVertices) {
  // soundness of the certificate: whenever a pipeline isolates one point,
  // the exact LP agrees that the point is a vertex
  for (auto [r, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 6}}) {
    const auto& c = catalog(r, n);
    std::vector<OmegaPoint> pts;
    for (const auto& m : c.members) pts.push_back(nested_decomposition(m));
    std::vector<json> exprs = sample_expressions();
    exprs.erase(std::remove_if(exprs.begin(), exprs.end(), [](const json& e) { return e.at("op") == "g_coeff"; }),
                exprs.end());
    int certified = 0;
    for (const auto& e : exprs) {
      for (const char* dir : {"max", "min"}) {
        PipelineSpec p;
        try {
          p = spec(r, n, {step(dir, e)});
          const auto cert = certify_extremal_point(c.members, p);
          if (!cert.certified) continue;
          ++certified;
          ASSERT_TRUE(certify_vertex(pts, *cert.point)) << e.dump() << " " << dir;
        } catch (const Error&) {
          continue;  // parameters out of range for this shape
        }
      }
    }
    EXPECT_GT(certified, 0);
  }
}

TEST(Vertex, DimensionMismatch) {
  OmegaPoint a = nested_decomposition(uniform(2, 4));
  OmegaPoint b = nested_decomposition(uniform(2, 5));
  EXPECT_EQ(kind_of([&] { certify_vertex({a, b}, a); }), ErrorKind::DimensionMismatch);
}

TEST(Vertex, LoneOrRepeatedPointsAreVertices) {
  const OmegaPoint a = nested_decomposition(uniform(2, 4));
  EXPECT_TRUE(certify_vertex({a}, a));
  EXPECT_TRUE(certify_vertex({a, a}, a));
}

TEST(Lp, SmallFeasibilityCases) {
  // x + y = 1, x - y = 0 -> (1/2, 1/2)
  EXPECT_TRUE(lp_feasible({{1, 1}, {1, -1}}, {1, 0}));
  // x + y = 1, x + y = 2 -> infeasible
  EXPECT_FALSE(lp_feasible({{1, 1}, {1, 1}}, {1, 2}));
  // x - y = 1 needs x >= 1
  EXPECT_TRUE(lp_feasible({{1, -1}}, {1}));
  // -x = 1 with x >= 0
  EXPECT_FALSE(lp_feasible({{-1}}, {1}));
}

TEST(Pipeline, SurvivorsShrinkAndNeverVanish) {
  const auto& c = catalog(3, 7);
  std::mt19937 rng(4);
  auto exprs = sample_expressions();
  exprs.erase(std::remove_if(exprs.begin(), exprs.end(), [](const json& e) { return e.at("op") == "g_coeff"; }),
              exprs.end());
  for (int t = 0; t < 30; ++t) {
    std::vector<json> steps;
    for (int k = 0; k < 4; ++k) steps.push_back(step(rng() % 2 ? "max" : "min", exprs[rng() % exprs.size()]));
    const auto p = spec(3, 7, steps);
    std::vector<std::size_t> prev(c.members.size());
    std::iota(prev.begin(), prev.end(), 0);
    // replay step by step
    for (std::size_t k = 1; k <= steps.size(); ++k) {
      const auto res = run_pipeline(c.members, spec(3, 7, std::vector<json>(steps.begin(), steps.begin() + k)));
      ASSERT_FALSE(res.survivors.empty());
      ASSERT_TRUE(std::includes(prev.begin(), prev.end(), res.survivors.begin(), res.survivors.end()));
      ASSERT_EQ(res.trace.back().remaining, res.survivors.size());
      prev = res.survivors;
    }
    ASSERT_EQ(run_pipeline(c.members, p).survivors, prev);
  }
}
