#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "brute.hpp"
#include "evasive/error.hpp"
#include "evasive/evasive_core.hpp"
#include "evasive/extremal_witness.hpp"

using namespace evasive;

namespace {

PointSet nonzero_f2_3() {
  return PointSet::from_points(Domain::prime_field(2), 3,
                               {{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}});
}

RPartiteHypergraph complete(std::vector<std::size_t> sizes) {
  RPartiteHypergraph h(sizes);
  Edge e(sizes.size(), 0);
  while (true) {
    h.add_edge(e);
    std::size_t i = sizes.size();
    while (i > 0 && ++e[i - 1] == sizes[i - 1]) e[--i] = 0;
    if (i == 0) return h;
  }
}

}  // namespace

TEST(Hypergraph, RejectsOutOfRangeEdges) {
  RPartiteHypergraph h({2, 3});
  EXPECT_THROW(h.add_edge({2, 0}), DomainError);
  EXPECT_THROW(h.add_edge({0}), DomainError);
  h.add_edge({1, 2});
  h.add_edge({1, 2});
  EXPECT_EQ(h.edge_count(), 1u);
}

TEST(Hypergraph, TextRoundTrip) {
  RPartiteHypergraph h({3, 2, 2});
  h.add_edge({2, 1, 0});
  h.add_edge({0, 0, 1});
  const std::string text = format_hypergraph(h);
  EXPECT_EQ(text, "hypergraph r=3 sizes=3,2,2\n0 0 1\n2 1 0\n");
  EXPECT_EQ(parse_hypergraph(text), h);
  EXPECT_THROW(parse_hypergraph("hypergraph r=2 sizes=2,2\n0 5\n"), ParseError);
  EXPECT_THROW(parse_hypergraph("hypergraph r=2 sizes=2\n"), ParseError);
}

TEST(FindBox, SinglePartTakesFirstVertices) {
  RPartiteHypergraph h({6});
  for (std::size_t v : {5, 1, 3, 4}) h.add_edge({v});
  EXPECT_TRUE(box_hypothesis_holds(h, {2}));
  const auto box = find_box(h, {2});
  ASSERT_TRUE(box);
  EXPECT_EQ(box->parts, (std::vector<std::vector<std::size_t>>{{1, 3}}));
}

TEST(FindBox, CompleteBipartiteGivesFirstBox) {
  const auto h = complete({4, 4});
  const auto box = find_box(h, {2, 2});
  ASSERT_TRUE(box);
  EXPECT_EQ(box->parts, (std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}}));
  EXPECT_TRUE(verify_box(h, *box, {2, 2}));
}

TEST(FindBox, FailsWithoutBox) {
  RPartiteHypergraph h({3, 3});
  for (std::size_t i = 0; i < 3; ++i) h.add_edge({i, i});
  EXPECT_FALSE(find_box(h, {2, 2}));
  BoxOptions exhaustive;
  exhaustive.threshold_pruning = false;
  EXPECT_FALSE(find_box(h, {2, 2}, exhaustive));
}

TEST(FindBox, BacktracksPastFirstCandidate) {
  // Vertices 0 and 1 share four tails with no 2x2 box among them; 2 and 3 share a full box.
  RPartiteHypergraph h({4, 3, 3});
  for (std::size_t v : {0, 1})
    for (Edge t : {Edge{0, 0}, Edge{0, 1}, Edge{0, 2}, Edge{1, 0}}) h.add_edge({v, t[0], t[1]});
  for (std::size_t v : {2, 3})
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) h.add_edge({v, a, b});
  for (bool prune : {true, false}) {
    BoxOptions o;
    o.threshold_pruning = prune;
    const auto box = find_box(h, {2, 2, 2}, o);
    ASSERT_TRUE(box);
    EXPECT_EQ(box->parts[0], (std::vector<std::size_t>{2, 3}));
    EXPECT_TRUE(verify_box(h, *box, {2, 2, 2}));
  }
}

TEST(FindBox, AgreesWithBruteForceOnRandomGraphs) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    RPartiteHypergraph h({5, 5});
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b)
        if (rng.uniform(2)) h.add_edge({a, b});
    bool exists = false;
    for (std::size_t a0 = 0; a0 < 5; ++a0)
      for (std::size_t a1 = a0 + 1; a1 < 5; ++a1)
        for (std::size_t b0 = 0; b0 < 5; ++b0)
          for (std::size_t b1 = b0 + 1; b1 < 5; ++b1)
            exists = exists || (h.has_edge({a0, b0}) && h.has_edge({a0, b1}) && h.has_edge({a1, b0}) &&
                                h.has_edge({a1, b1}));
    const auto box = find_box(h, {2, 2});
    EXPECT_EQ(box.has_value(), exists);
    if (box) {
      EXPECT_TRUE(verify_box(h, *box, {2, 2}));
    }
  }
}

TEST(BoxHypothesis, ExactThresholds) {
  // r = 1: at least 2 s_1 edges.
  EXPECT_TRUE(box_hypothesis_holds(std::vector<std::size_t>{10}, 4, {2}));
  EXPECT_FALSE(box_hypothesis_holds(std::vector<std::size_t>{10}, 3, {2}));
  // r = 2, s = (2, 2): |V_1|^2 >= 16 |V_2| and |E|^2 >= 16 |V_1|^2 |V_2|.
  EXPECT_TRUE(box_hypothesis_holds(std::vector<std::size_t>{12, 9}, 102, {2, 2}));
  EXPECT_FALSE(box_hypothesis_holds(std::vector<std::size_t>{12, 9}, 101, {2, 2}));
  EXPECT_FALSE(box_hypothesis_holds(std::vector<std::size_t>{12, 10}, 120, {2, 2}));
  EXPECT_FALSE(box_hypothesis_holds(std::vector<std::size_t>{10}, 100, {1}));
}

TEST(LowerBoundParams, Layout) {
  const auto lp = lowerbound_params(8, 3, 0.125);
  EXPECT_EQ(lp.r, 2u);
  EXPECT_EQ(lp.t, (std::vector<std::size_t>{3}));
  EXPECT_EQ(lp.s, (std::vector<std::size_t>{2, 3}));
  const auto lp3 = lowerbound_params(30, 4, 1.0 / 16);
  EXPECT_EQ(lp3.r, 3u);
  EXPECT_EQ(lp3.t, (std::vector<std::size_t>{5, 10}));
  EXPECT_EQ(lp3.s, (std::vector<std::size_t>{2, 2, 3}));
  EXPECT_THROW(lowerbound_params(8, 1, 0.125), DomainError);
  EXPECT_THROW(lowerbound_params(8, 3, 0.3), DomainError);
  EXPECT_THROW(lowerbound_params(2, 3, 1.0 / 16), DomainError);
}

TEST(LowerBoundWitness, DegenerateSinglePart) {
  const auto s = evasive::testing::full_space(3, 2);
  const auto w = lowerbound_witness(s, 1, 0.25);
  EXPECT_EQ(w.params.r, 1u);
  EXPECT_EQ(w.subset.size(), 2u);
  EXPECT_LE(w.affine_dim, 1u);
}

TEST(LowerBoundWitness, FullBinarySpace) {
  const auto s = evasive::testing::full_space(2, 6);
  const auto w = lowerbound_witness(s, 3, 0.125);
  EXPECT_EQ(w.subset.size(), 6u);
  std::vector<evasive::testing::Vec> pts;
  for (auto i : w.subset) pts.push_back(s[i]);
  EXPECT_LE(evasive::testing::brute_affine_dim(pts, 2, 6), 3u);
  EXPECT_EQ(subset_span_dim(s, w.subset, Flavor::affine), w.affine_dim);
}

TEST(LowerBoundWitness, ReportsFailure) {
  const auto s = PointSet::from_points(Domain::prime_field(2), 6, {{0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}});
  EXPECT_THROW(lowerbound_witness(s, 3, 0.125), Error);
}

TEST(HammingPartition, LargerPartsFirst) {
  EXPECT_EQ(hamming_partition(7, 2), (std::vector<std::size_t>{3, 2, 2}));
  EXPECT_EQ(hamming_partition(6, 1), (std::vector<std::size_t>{3, 3}));
}

TEST(HammingWitness, FirstDependentTriple) {
  // Sorted: 001, 010, 100, 110. Only {010, 100, 110} spans a plane.
  const auto s = PointSet::from_points(Domain::prime_field(5), 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const auto w = hamming_witness(s, 2, 0);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->parts[0], (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(w->union_dim, 2u);
}

TEST(HammingWitness, HammingCodeColumns) {
  const auto s = nonzero_f2_3();
  const auto w = hamming_witness(s, 2, 0);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->parts[0], (std::vector<std::size_t>{0, 1, 2}));  // 001, 010, 011
  EXPECT_EQ(w->union_dim, 2u);
}

TEST(HammingWitness, DisjointParts) {
  const auto s = evasive::testing::full_space(2, 4);
  const auto w = hamming_witness(s, 4, 1);
  ASSERT_TRUE(w);
  ASSERT_EQ(w->parts.size(), 2u);
  std::set<std::size_t> all;
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(w->parts[i].size(), w->part_dims[i] + 1);
    EXPECT_LE(subset_span_dim(s, w->parts[i], Flavor::linear), w->part_dims[i]);
    all.insert(w->parts[i].begin(), w->parts[i].end());
  }
  EXPECT_EQ(all.size(), 6u);
  EXPECT_LE(w->union_dim, 4u);
}

TEST(HammingWitness, FailsInGeneralPosition) {
  const auto s = PointSet::from_points(Domain::prime_field(7), 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_FALSE(hamming_witness(s, 2, 0));
  EXPECT_THROW(hamming_witness(s, 3, 1), DomainError);
}

TEST(ParityCheckCode, HammingCode) {
  const auto code = parity_check_code(nonzero_f2_3());
  EXPECT_EQ(code.length, 7u);
  EXPECT_EQ(code.dimension, 4u);
  ASSERT_TRUE(code.min_distance);
  EXPECT_EQ(*code.min_distance, 3u);
}

TEST(ParityCheckCode, StandardBasisIsTrivial) {
  const auto s = PointSet::from_points(Domain::prime_field(5), 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto code = parity_check_code(s);
  EXPECT_EQ(code.dimension, 0u);
  EXPECT_FALSE(code.min_distance);
}

TEST(ParityCheckCode, BasisPlusSum) {
  for (std::size_t d = 2; d <= 5; ++d) {
    std::vector<IntVector> pts;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, 0);
      e[i] = 1;
      pts.push_back(e);
    }
    pts.emplace_back(d, 1);
    const auto code = parity_check_code(PointSet::from_points(Domain::prime_field(2), d, pts));
    EXPECT_EQ(code.dimension, 1u);
    EXPECT_EQ(*code.min_distance, d + 1);
  }
}

TEST(ParityCheckCode, Budget) {
  EXPECT_THROW(parity_check_code(nonzero_f2_3(), 15), BudgetExceeded);
}

TEST(HammingBound, Examples) {
  EXPECT_TRUE(hamming_bound_check(1, 2, 3, 1));
  EXPECT_TRUE(hamming_bound_check(7, 2, 3, 1));
  EXPECT_TRUE(hamming_bound_check(8, 2, 3, 1));
  EXPECT_FALSE(hamming_bound_check(9, 2, 3, 1));
  EXPECT_TRUE(hamming_bound_check(1, 2, 3, 5));
  EXPECT_THROW(hamming_bound_check(1, 2, 3, 0), DomainError);
}

TEST(HammingBound, AgreesWithFloatingEvaluation) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::size_t d = 1; d <= 6; ++d) {
      for (std::size_t k = 1; k <= 5; ++k) {
        const double r = static_cast<double>((k + 1) / 2);
        const double bound = 2.0 * k * std::pow(static_cast<double>(p), d / r - 1);
        for (std::uint64_t size = 1; size <= 200; ++size) {
          const double gap = static_cast<double>(size) - bound;
          if (std::abs(gap) < 1e-9) continue;
          EXPECT_EQ(hamming_bound_check(size, p, d, k), gap < 0) << p << ' ' << d << ' ' << k << ' ' << size;
        }
      }
    }
  }
}
