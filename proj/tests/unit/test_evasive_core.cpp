#include <gtest/gtest.h>

#include "brute.hpp"
#include "evasive/error.hpp"
#include "evasive/evasive_core.hpp"

using namespace evasive;

namespace {

PointSet field_set(std::uint64_t p, std::size_t d, std::vector<IntVector> pts) {
  return PointSet::from_points(Domain::prime_field(p), d, std::move(pts));
}

}  // namespace

TEST(EnumOracle, EmptySet) {
  EXPECT_EQ(max_intersection_enum(PointSet(Domain::prime_field(3), 2), 1, Flavor::affine).c_max, 0u);
  EXPECT_EQ(max_intersection_enum(PointSet(), 1, Flavor::affine).c_max, 0u);
}

TEST(EnumOracle, CollinearPointsFindTheDiagonal) {
  const auto s = field_set(5, 2, {{0, 0}, {1, 1}, {2, 2}});
  const auto c = max_intersection_enum(s, 1, Flavor::affine);
  EXPECT_EQ(c.c_max, 3u);
  ASSERT_TRUE(c.flat);
  EXPECT_TRUE(c.flat->direction().contains(std::vector<Residue>{1, 1}));
  EXPECT_TRUE(verify_certificate(s, c));
}

TEST(EnumOracle, RejectsIntegerSetsAndTooLargeK) {
  EXPECT_THROW(max_intersection_enum(PointSet::from_points(Domain::integers(), 1, {{1}}), 1, Flavor::affine),
               DomainError);
  EXPECT_THROW(max_intersection_enum(field_set(3, 2, {{0, 0}}), 3, Flavor::affine), DomainError);
}

TEST(EnumOracle, BudgetExceededReportsCounts) {
  try {
    max_intersection_enum(field_set(3, 4, {{0, 0, 0, 0}}), 2, Flavor::affine, 100);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), 100u);
    EXPECT_GT(e.required(), 100u);
  }
}

TEST(EnumOracle, LinearFlavorIgnoresTranslates) {
  // Three points on the affine line y = 1, which misses the origin.
  const auto s = field_set(5, 2, {{0, 1}, {1, 1}, {2, 1}});
  EXPECT_EQ(max_intersection_enum(s, 1, Flavor::affine).c_max, 3u);
  EXPECT_EQ(max_intersection_enum(s, 1, Flavor::linear).c_max, 1u);
}

TEST(SubsetOracle, WholeSpaceWhenKAtLeastD) {
  const auto s = field_set(3, 2, {{0, 1}, {1, 2}, {2, 2}});
  EXPECT_EQ(max_intersection_subsets(s, 2, Flavor::affine).c_max, 3u);
}

TEST(SubsetOracle, IntegerCollinear) {
  const auto s = PointSet::from_points(Domain::integers(), 3, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 2, 3}});
  const auto c = max_intersection_subsets(s, 1, Flavor::affine);
  EXPECT_EQ(c.c_max, 3u);
  EXPECT_TRUE(verify_certificate(s, c));
}

TEST(SubsetOracle, IntegerOverflowFallsBackToExact) {
  const std::int64_t big = std::int64_t{1} << 61;
  const auto s = PointSet::from_points(Domain::integers(), 2,
                                       {{-big, -big}, {0, 0}, {big, big}, {big, big - 1}, {3, -big}});
  EXPECT_EQ(max_intersection_subsets(s, 1, Flavor::affine).c_max, 3u);
}

TEST(SubsetOracle, AgreesWithEnumOnSmallRandomSet) {
  Rng rng(7);
  const auto s = evasive::testing::random_field_set(rng, 3, 3, 6);
  EXPECT_EQ(max_intersection_subsets(s, 1, Flavor::affine).c_max, max_intersection_enum(s, 1, Flavor::affine).c_max);
}

TEST(SubsetOracle, BudgetExceeded) {
  Rng rng(3);
  const auto s = evasive::testing::random_field_set(rng, 5, 4, 30);
  EXPECT_THROW(max_intersection_subsets(s, 2, Flavor::affine, 50), BudgetExceeded);
}

TEST(IsEvasive, TrivialThreshold) {
  Rng rng(11);
  const auto s = evasive::testing::random_field_set(rng, 3, 3, 7);
  EXPECT_TRUE(is_evasive(s, 1, s.size(), Flavor::affine).evasive);
}

TEST(IsEvasive, CollinearTripleIsWitness) {
  const auto s = field_set(5, 2, {{0, 0}, {1, 1}, {2, 2}});
  for (auto oracle : {Oracle::flat_enumeration, Oracle::subset_search}) {
    const auto v = is_evasive(s, 1, 2, Flavor::affine, oracle);
    EXPECT_FALSE(v.evasive);
    EXPECT_EQ(v.witness.size(), 3u);
    EXPECT_EQ(subset_span_dim(s, v.witness, Flavor::affine), 1u);
  }
}

TEST(VerifyCertificate, RejectsTamperedClaims) {
  const auto s = field_set(5, 2, {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  auto c = max_intersection_enum(s, 1, Flavor::affine);
  ASSERT_TRUE(verify_certificate(s, c));
  auto wrong_size = c;
  wrong_size.c_max = 4;
  EXPECT_FALSE(verify_certificate(s, wrong_size));
  auto off_flat = c;
  off_flat.subset = {0, 1, 3};
  EXPECT_FALSE(verify_certificate(s, off_flat));
}

TEST(ParseFlavor, Names) {
  EXPECT_EQ(parse_flavor("affine"), Flavor::affine);
  EXPECT_EQ(parse_flavor("linear"), Flavor::linear);
  EXPECT_THROW(parse_flavor("projective"), DomainError);
}
