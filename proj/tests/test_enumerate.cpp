#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "mvl/enumerate.hpp"
#include "mvl/families.hpp"

using namespace mvl;
using testing_support::labeled_library;
using testing_support::to_oracle;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::vector<ElementSet> flats_set(const Matroid& m, std::initializer_list<std::initializer_list<int>> xs) {
  std::vector<ElementSet> out;
  for (auto x : xs) out.push_back(ElementSet::of(x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(ModularCut, SmallExamples) {
  const Matroid u23 = uniform(2, 3);
  EXPECT_TRUE(is_modular_cut(u23, {}));
  EXPECT_TRUE(is_modular_cut(u23, {{ElementSet::full(3)}}));
  EXPECT_TRUE(is_modular_cut(u23, {flats_set(u23, {{0}, {0, 1, 2}})}));
  // two points without their join
  EXPECT_FALSE(is_modular_cut(u23, {flats_set(u23, {{0}, {1}})}));
  // two points meet in the empty flat, a modular pair in rank 2
  EXPECT_FALSE(is_modular_cut(u23, {flats_set(u23, {{0}, {1}, {0, 1, 2}})}));
  // not a flat
  const Matroid k4 = cycle_matroid_complete(3);
  EXPECT_FALSE(is_modular_cut(k4, {flats_set(k4, {{0, 1}, {0, 1, 2, 3, 4, 5}})}));
  EXPECT_EQ(modular_cuts(u23).size(), 6u);  // coloop, free point, loop, and one parallel per point
}

TEST(ModularCut, ExtensionsOfTheTriangle) {
  const Matroid u23 = uniform(2, 3);
  EXPECT_EQ(extend(u23, {}), direct_sum(u23, uniform(1, 1)));
  EXPECT_EQ(extend(u23, {{ElementSet::full(3)}}), uniform(2, 4));
  const Matroid par = extend(u23, {flats_set(u23, {{0}, {0, 1, 2}})});
  EXPECT_EQ(par.rank_of(ElementSet::of({0, 3})), 1);
  EXPECT_EQ(kind_of([&] { extend(u23, {flats_set(u23, {{0}, {1}})}); }), ErrorKind::InvalidCut);
}

TEST(ModularCut, DeletingTheNewElementRecoversTheCut) {
  for (int n = 0; n <= 5; ++n)
    for (const auto& m : enumerate_range(n, 0, n).members)
      for (const auto& cut : modular_cuts(m)) {
        ASSERT_TRUE(is_modular_cut(m, cut));
        const Matroid ext = extend(m, cut);
        ASSERT_EQ(deletion(ext, ElementSet::single(n)), m);
        ModularCut seen;
        for (const auto& f : all_flats(m))
          if (ext.rank_of(f.set.with(n)) == f.rank) seen.flats.push_back(f.set);
        std::sort(seen.flats.begin(), seen.flats.end());
        ASSERT_EQ(seen, cut);
      }
}

TEST(ModularCut, CountsMatchLabeledExtensions) {
  // every labeled N on n+1 elements restricts to one labeled M on n; the
  // number of N over a given M is the number of modular cuts of M
  for (int n = 0; n <= 5; ++n) {
    std::map<std::vector<std::uint8_t>, std::size_t> over;
    for (const auto& lm : oracle::labeled_matroids(n + 1)) {
      std::vector<std::uint8_t> low(lm.rk.begin(), lm.rk.begin() + (std::size_t{1} << n));
      ++over[low];
    }
    for (const auto& m : labeled_library(n)) {
      const auto& t = m.rank_table();
      ASSERT_EQ(modular_cuts(m).size(), over.at(std::vector<std::uint8_t>(t.begin(), t.end()))) << n;
    }
  }
}

TEST(Catalog, CountsMatchTheClosureOracle) {
  for (int n = 0; n <= 7; ++n) {
    const auto want = oracle::unlabeled_counts(n, oracle::labeled_matroids(n));
    const Catalog all = enumerate_range(n, 0, n);
    std::vector<std::int64_t> got(n + 1, 0);
    for (const auto& m : all.members) ++got[m.rank()];
    ASSERT_EQ(got, want) << "n = " << n;
    for (int r = 0; r <= n && n <= 6; ++r)
      EXPECT_EQ(static_cast<std::int64_t>(enumerate_catalog(r, n).members.size()), want[r]);
  }
}

TEST(Catalog, MembersArePairwiseNonIsomorphic) {
  for (int n = 0; n <= 5; ++n) {
    const auto c = enumerate_range(n, 0, n);
    for (std::size_t i = 0; i < c.members.size(); ++i)
      for (std::size_t j = i + 1; j < c.members.size(); ++j)
        ASSERT_FALSE(oracle::isomorphic(to_oracle(c.members[i]), to_oracle(c.members[j]), n));
  }
}

TEST(Catalog, ClosedUnderDuality) {
  for (int n = 2; n <= 7; ++n)
    for (int r = 0; r <= n / 2; ++r) {
      const auto a = enumerate_catalog(r, n), b = enumerate_catalog(n - r, n);
      std::set<std::string> da;
      for (const auto& m : a.members) da.insert(canonical_form(dual(m)));
      ASSERT_EQ(da, std::set<std::string>(b.forms.begin(), b.forms.end()));
    }
}

TEST(Catalog, FormsAlignAndAreSorted) {
  const auto c = enumerate_catalog(3, 6);
  ASSERT_EQ(c.forms.size(), c.members.size());
  EXPECT_TRUE(std::is_sorted(c.forms.begin(), c.forms.end()));
  for (std::size_t i = 0; i < c.members.size(); ++i) EXPECT_EQ(canonical_form(c.members[i]), c.forms[i]);
  EXPECT_EQ(c.r, 3);
  EXPECT_TRUE(c.complete);
}

TEST(Catalog, ThreadCountDoesNotChangeTheResult) {
  EnumerateOptions opt;
  opt.jobs = 3;
  const auto a = enumerate_catalog(3, 7), b = enumerate_catalog(3, 7, opt);
  EXPECT_EQ(a.forms, b.forms);
  EXPECT_EQ(a.members, b.members);
}

TEST(Catalog, LimitsAndTimeout) {
  EXPECT_EQ(kind_of([] { enumerate_catalog(3, 9); }), ErrorKind::CapExceeded);
  EnumerateOptions forced;
  forced.force = true;
  EXPECT_EQ(kind_of([&] { enumerate_catalog(3, 10, forced); }), ErrorKind::CapExceeded);
  EXPECT_EQ(kind_of([] { enumerate_catalog(4, 3); }), ErrorKind::BadParameter);
  EnumerateOptions quick;
  quick.timeout_seconds = 1e-9;
  EXPECT_EQ(kind_of([&] { enumerate_catalog(3, 7, quick); }), ErrorKind::Timeout);
}

TEST(Catalog, NestedMembersAreCountedByLatticePaths) {
  // nested iff the cyclic flats form a chain; there are C(n,r) of them
  for (int n = 0; n <= 7; ++n)
    for (int r = 0; r <= n; ++r) {
      std::int64_t nested = 0, paths = 1;
      for (int i = 1; i <= r; ++i) paths = paths * (n - r + i) / i;
      for (const auto& m : enumerate_catalog(r, n).members) {
        const auto z = cyclic_flat_list(m);
        bool chain = true;
        for (const auto& a : z)
          for (const auto& b : z) chain = chain && (a.set.subset_of(b.set) || b.set.subset_of(a.set));
        nested += chain;
      }
      ASSERT_EQ(nested, paths) << r << "," << n;
    }
}
