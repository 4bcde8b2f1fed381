#include <gtest/gtest.h>

#include "evasive/error.hpp"
#include "evasive/random_algebraic.hpp"

using namespace evasive;

TEST(ExponentSet, Sizes) {
  EXPECT_EQ(exponent_set(1, 2).size(), 3u);
  EXPECT_EQ(exponent_set(2, 2).size(), 6u);
  EXPECT_EQ(exponent_set_size(2, 9), 55u);
  EXPECT_EQ(exponent_set(2, 9).size(), 55u);
  EXPECT_EQ(exponent_set(0, 4).size(), 1u);
}

TEST(ExponentSet, LexicographicOrder) {
  const auto e = exponent_set(2, 2);
  EXPECT_EQ(e, (std::vector<ExponentVector>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}));
}

TEST(ConstructionDegree, Formula) {
  EXPECT_EQ(construction_degree(3, 1), 5u);
  EXPECT_EQ(construction_degree(3, 2), 9u);
}

TEST(SamplePolynomial, SeedDeterminesPolynomial) {
  const PrimeField f(7);
  Rng a(42), b(42), c(43);
  const auto qa = sample_polynomial(f, 2, 3, a);
  EXPECT_EQ(qa, sample_polynomial(f, 2, 3, b));
  EXPECT_NE(qa, sample_polynomial(f, 2, 3, c));
}

TEST(SparsePolynomial, RejectsMonomialsOutsideDegree) {
  SparsePolynomial q(2, 3);
  EXPECT_THROW(q.set({2, 2}, 1), DomainError);
  EXPECT_THROW(q.set({1}, 1), DomainError);
  q.set({1, 1}, 4);
  q.set({1, 1}, 0);
  EXPECT_TRUE(q.is_zero());
}

TEST(Evaluate, Examples) {
  const PrimeField f5(5), f7(7);
  EXPECT_EQ(evaluate(f5, SparsePolynomial(2, 3), std::vector<Residue>{1, 2}), 0u);
  SparsePolynomial lin(1, 1);
  lin.set({1}, 1);
  lin.set({0}, 1);
  EXPECT_EQ(evaluate(f5, lin, std::vector<Residue>{4}), 0u);
  SparsePolynomial mono(2, 3);
  mono.set({2, 1}, 1);
  EXPECT_EQ(evaluate(f7, mono, std::vector<Residue>{2, 3}), 5u);
  EXPECT_THROW(evaluate(f7, mono, std::vector<Residue>{2}), DomainError);
}

TEST(BatchEvaluator, MatchesDirectEvaluation) {
  const PrimeField f(11);
  Rng rng(5);
  std::vector<SparsePolynomial> qs;
  for (int i = 0; i < 3; ++i) qs.push_back(sample_polynomial(f, 2, 4, rng));
  BatchEvaluator eval(f, qs);
  std::vector<Residue> out(3);
  for (Residue x = 0; x < 11; ++x) {
    for (Residue y = 0; y < 11; ++y) {
      const std::vector<Residue> z{x, y};
      eval.evaluate(z, out);
      for (int i = 0; i < 3; ++i) EXPECT_EQ(out[i], evaluate(f, qs[i], z));
    }
  }
}

TEST(ImageSet, ConstantMapIsSingleton) {
  PolynomialMap q{5, 2, 1, {}};
  for (Residue c : {1, 2, 3}) {
    SparsePolynomial comp(2, 1);
    comp.set({0, 0}, c);
    q.components.push_back(comp);
  }
  const auto s = image_set(q);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (IntVector{1, 2, 3}));
}

TEST(ImageSet, CoordinateMapIsWholeSpace) {
  PolynomialMap q{3, 2, 1, {}};
  for (std::uint32_t i = 0; i < 2; ++i) {
    SparsePolynomial comp(2, 1);
    ExponentVector e{0, 0};
    e[i] = 1;
    comp.set(e, 1);
    q.components.push_back(comp);
  }
  EXPECT_EQ(image_set(q).size(), 9u);
}

TEST(ImageSet, RandomCurveHasAtMostPPoints) {
  Rng rng(9);
  const auto q = sample_map(7, 3, 1, 5, rng);
  const auto s = image_set(q);
  EXPECT_LE(s.size(), 7u);
  for (Residue x = 0; x < 7; ++x) {
    IntVector y;
    for (const auto& comp : q.components) {
      y.push_back(static_cast<std::int64_t>(evaluate(q.field(), comp, std::vector<Residue>{x})));
    }
    EXPECT_TRUE(std::binary_search(s.points().begin(), s.points().end(), y));
  }
}

TEST(ImageSet, Budget) {
  Rng rng(1);
  const auto q = sample_map(101, 3, 3, 1, rng);
  EXPECT_THROW(image_set(q, 1000), BudgetExceeded);
}

TEST(PolynomialMapFormat, RoundTrip) {
  Rng rng(17);
  const auto q = sample_map(13, 3, 2, 4, rng);
  const std::string text = format_polynomial_map(q);
  EXPECT_EQ(text.rfind("poly p=13 k=2 D=4 d=3\n", 0), 0u);
  EXPECT_EQ(parse_polynomial_map(text), q);
}

TEST(PolynomialMapFormat, Errors) {
  EXPECT_THROW(parse_polynomial_map(""), ParseError);
  EXPECT_THROW(parse_polynomial_map("poly p=4 k=1 D=1 d=1\n1:0\n"), ParseError);
  EXPECT_THROW(parse_polynomial_map("poly p=5 k=1 D=1 d=1\n1:2\n"), ParseError);
  EXPECT_THROW(parse_polynomial_map("poly p=5 k=1 D=1 d=2\n1:0\n"), ParseError);
  try {
    parse_polynomial_map("poly p=5 k=1 D=1 d=1\n7:0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ConstructEvasive, SeedReproducible) {
  const auto a = construct_evasive(7, 3, 2, 5);
  const auto b = construct_evasive(7, 3, 2, 5);
  EXPECT_EQ(a.set, b.set);
  EXPECT_EQ(a.map, b.map);
  EXPECT_EQ(a.degree, 9u);
  EXPECT_EQ(a.flat_dim, 1u);
  EXPECT_LE(a.set.size(), 49u);
}

TEST(ConstructEvasive, CertificateMatchesSubsetOracle) {
  const auto c = construct_evasive(7, 3, 2, 3);
  ASSERT_TRUE(c.certificate);
  EXPECT_TRUE(verify_certificate(c.set, *c.certificate));
  EXPECT_EQ(c.certificate->c_max, max_intersection_subsets(c.set, 1, Flavor::affine).c_max);
}

TEST(ConstructEvasive, SkipsCertificateOverBudget) {
  Budget b;
  b.max_flats = 500;
  const auto c = construct_evasive(7, 3, 2, 3, b);
  EXPECT_FALSE(c.certificate);
  EXPECT_TRUE(c.certificate_skipped);
  EXPECT_THROW(construct_evasive(7, 2, 3, 1), DomainError);
}

TEST(BestOfSeeds, PicksSmallestCmax) {
  const auto [seed, best] = construct_best_of_seeds(5, 3, 2, 1, 4);
  ASSERT_TRUE(best.certificate);
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const auto c = construct_evasive(5, 3, 2, s);
    EXPECT_LE(best.certificate->c_max, c.certificate->c_max);
  }
  EXPECT_GE(seed, 1u);
  EXPECT_LE(seed, 4u);
}

TEST(VarietyCount, Examples) {
  const PrimeField f(7);
  std::vector<SparsePolynomial> zero{SparsePolynomial(2, 2), SparsePolynomial(2, 2)};
  EXPECT_EQ(variety_count(f, zero), 49u);
  SparsePolynomial x(1, 1);
  x.set({1}, 1);
  EXPECT_EQ(variety_count(f, std::vector<SparsePolynomial>{x}), 1u);
  SparsePolynomial sq(1, 2);
  sq.set({2}, 1);
  sq.set({0}, 6);
  EXPECT_EQ(variety_count(f, std::vector<SparsePolynomial>{sq}), 2u);
}

TEST(Moments, BoundAndFirstMoment) {
  const auto r = moment_diagnostic(53, 3, 1, 1, 2000, 4, 4);
  EXPECT_EQ(r.bound, 1);
  EXPECT_NEAR(r.mean, 1.0, 5 * r.mean_std_error);
  EXPECT_EQ(moment_diagnostic(53, 3, 1, 2, 10, 1).bound, 8);
  std::uint64_t total = 0;
  for (const auto& [n, count] : r.histogram) total += count;
  EXPECT_EQ(total, 2000u);
}

TEST(Moments, TrialBudget) {
  Budget b;
  b.max_trials = 10;
  EXPECT_THROW(moment_diagnostic(5, 3, 1, 1, 11, 1, std::nullopt, b), BudgetExceeded);
}

TEST(Moments, StatisticsFromHistogram) {
  MomentReport r;
  r.s = 2;
  r.trials = 4;
  r.histogram = {{0, 2}, {2, 2}};
  fill_moment_statistics(r);
  EXPECT_EQ(r.moment_numerator, 8);
  EXPECT_DOUBLE_EQ(r.empirical_moment, 2.0);
  EXPECT_DOUBLE_EQ(r.mean, 1.0);
  // Values 0,0,4,4: sample variance 16/3.
  EXPECT_NEAR(r.std_error, std::sqrt(16.0 / 3.0 / 4.0), 1e-12);
}

TEST(Moments, GapSeparatesSmallAndLargeVarieties) {
  MomentReport r;
  r.p = 101;
  r.s = 1;
  r.trials = 5;
  r.histogram = {{0, 2}, {3, 1}, {97, 1}, {104, 1}};
  fill_moment_statistics(r);
  EXPECT_EQ(r.gap, 4u);
  r.histogram[50] = 1;
  fill_moment_statistics(r);
  EXPECT_EQ(r.gap, 50u);
}

TEST(Moments, TwoVariableDichotomyIsReported) {
  const auto r = moment_diagnostic(101, 3, 2, 1, 1000, 3, 2);
  EXPECT_LE(r.gap, 50u);
  std::uint64_t total = 0;
  for (const auto& [n, count] : r.histogram) {
    total += count;
    EXPECT_TRUE(n <= r.gap || n + r.gap >= 101);
  }
  EXPECT_EQ(total, 1000u);
}

TEST(RandomBaseline, SizesAndDeterminism) {
  EXPECT_TRUE(random_baseline(5, 3, 1, 0, 1).set.empty());
  EXPECT_EQ(random_baseline(3, 2, 1, 9, 1).set.size(), 9u);
  const auto a = random_baseline(5, 3, 1, 20, 8);
  EXPECT_EQ(a.set.size(), 20u);
  EXPECT_EQ(a.set, random_baseline(5, 3, 1, 20, 8).set);
  ASSERT_TRUE(a.certificate);
  EXPECT_EQ(a.certificate->c_max, max_intersection_subsets(a.set, 1, Flavor::affine).c_max);
  EXPECT_THROW(random_baseline(3, 2, 1, 10, 1), DomainError);
}
