#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "evasive/error.hpp"
#include "evasive/incidence.hpp"
#include "evasive/rng.hpp"

using namespace evasive;

TEST(Hyperplane, Contains) {
  const Hyperplane h{{1, 2, -1}, 4};
  EXPECT_TRUE(h.contains(std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_FALSE(h.contains(std::vector<std::int64_t>{1, 1, 1}));
  const std::int64_t big = std::int64_t{1} << 62;
  const Hyperplane wide{{big, big}, 0};
  EXPECT_TRUE(wide.contains(std::vector<std::int64_t>{3, -3}));
  EXPECT_FALSE(wide.contains(std::vector<std::int64_t>{2, 2}));
}

TEST(HyperplaneFormat, RoundTrip) {
  const std::vector<Hyperplane> hs{{{1, 0, 2}, 3}, {{-1, 4, 0}, -2}};
  const auto text = format_hyperplanes(3, hs);
  EXPECT_EQ(text, "hyperplanes d=3\n1 0 2 : 3\n-1 4 0 : -2\n");
  std::size_t d = 0;
  EXPECT_EQ(parse_hyperplanes(text, &d), hs);
  EXPECT_EQ(d, 3u);
}

TEST(HyperplaneFormat, Errors) {
  EXPECT_THROW(parse_hyperplanes("hyperplanes d=2\n0 0 : 1\n"), ParseError);
  EXPECT_THROW(parse_hyperplanes("hyperplanes d=2\n1 0 1\n"), ParseError);
  EXPECT_THROW(parse_hyperplanes("hyperplanes d=2\n1 0 1 : 1\n"), ParseError);
}

TEST(CeilRootRatio, Examples) {
  EXPECT_EQ(ceil_root_ratio(27, 1, 3), 3u);
  EXPECT_EQ(ceil_root_ratio(28, 1, 3), 4u);
  EXPECT_EQ(ceil_root_ratio(1, 1, 5), 1u);
  EXPECT_EQ(ceil_root_ratio(100, 7, 2), 4u);  // 14.28... needs 4^2
  EXPECT_EQ(ceil_root_ratio(300, 1, 2), 18u);
}

TEST(TargetExponent, Values) {
  EXPECT_NEAR(incidence_target_exponent(3), 1.0 - 9.0 / 30.0, 1e-12);
  EXPECT_NEAR(incidence_target_exponent(4), 1.0 - 34.0 / (6.0 * 22.0), 1e-12);
  EXPECT_NEAR(incidence_target_exponent(4), 0.742424, 1e-6);
  EXPECT_NEAR(incidence_target_exponent(5), 0.767857, 1e-6);
}

TEST(CountIncidences, SmallExample) {
  const auto pts = PointSet::from_points(Domain::integers(), 2, {{0, 0}, {1, 1}, {2, 0}});
  const std::vector<Hyperplane> hs{{{1, -1}, 0}, {{0, 1}, 0}, {{1, 0}, 5}};
  EXPECT_EQ(count_incidences(pts, hs), 4u);
}

TEST(CheckBipartiteFree, FindsAndRejects) {
  const auto pts = PointSet::from_points(Domain::integers(), 3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  const std::vector<Hyperplane> hs{{{0, 0, 1}, 0}, {{1, 1, 1}, 1}, {{1, 0, 0}, 0}};
  // Points 1 and 2 lie on both z = 0 and x + y + z = 1.
  const auto v = check_bipartite_free(pts, hs, 2, 2);
  EXPECT_FALSE(v.free);
  EXPECT_EQ(v.witness_points.size(), 2u);
  EXPECT_EQ(v.witness_hyperplanes.size(), 2u);
  for (auto h : v.witness_hyperplanes)
    for (auto p : v.witness_points) EXPECT_TRUE(hs[h].contains(pts[p]));
  EXPECT_TRUE(check_bipartite_free(pts, hs, 3, 2).free);
  EXPECT_TRUE(check_bipartite_free(pts, hs, 2, 3).free);
}

TEST(BuildConfig, SizesAndInvariants) {
  const auto cfg = build_config(3, 40, 400, 7);
  EXPECT_EQ(cfg.k, 0u);
  EXPECT_EQ(cfg.n0, ceil_root_ratio(40, 1, 3));
  EXPECT_EQ(cfg.normal_seed, derive_seed(7, "normals"));
  EXPECT_TRUE(std::is_sorted(cfg.hyperplanes.begin(), cfg.hyperplanes.end()));
  EXPECT_EQ(std::set<Hyperplane>(cfg.hyperplanes.begin(), cfg.hyperplanes.end()).size(), cfg.hyperplanes.size());
  // Every hyperplane passes through a point and has a normal from N.
  for (const auto& h : cfg.hyperplanes) {
    EXPECT_TRUE(std::binary_search(cfg.normals.points().begin(), cfg.normals.points().end(), h.normal));
    bool hit = false;
    for (const auto& x : cfg.points.points()) hit = hit || h.contains(x);
    EXPECT_TRUE(hit);
  }
  ASSERT_TRUE(cfg.c1);
  EXPECT_EQ(*cfg.c1, 1u);
  const auto rep = incidence_exponent_report(cfg);
  EXPECT_EQ(rep.incidences, count_incidences(cfg));
  EXPECT_LE(rep.hyperplanes, rep.hyperplane_budget);
  EXPECT_GT(rep.realized_exponent, 0.0);
}

TEST(BuildConfig, Errors) { EXPECT_THROW(build_config(2, 10, 10, 1), DomainError); }
