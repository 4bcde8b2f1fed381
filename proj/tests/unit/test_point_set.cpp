#include <gtest/gtest.h>

#include "evasive/error.hpp"
#include "evasive/point_set.hpp"

using namespace evasive;

TEST(PointSet, SortsAndDeduplicates) {
  const auto s = PointSet::from_points(Domain::prime_field(5), 2, {{3, 1}, {0, 4}, {3, 1}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (IntVector{0, 4}));
}

TEST(PointSet, RejectsOutOfRangeResidues) {
  EXPECT_THROW(PointSet::from_points(Domain::prime_field(5), 1, {{5}}), DomainError);
  EXPECT_THROW(PointSet::from_points(Domain::prime_field(5), 1, {{-1}}), DomainError);
  EXPECT_THROW(PointSet::from_points(Domain::integers(), 2, {{1}}), DomainError);
}

TEST(PointSet, FieldAccessOnIntegersThrows) {
  const auto s = PointSet::from_points(Domain::integers(), 1, {{-7}});
  EXPECT_THROW(s.field(), DomainError);
}

TEST(PointSetFormat, RoundTrip) {
  const auto s = PointSet::from_points(Domain::integers(), 3, {{1, -2, 3}, {0, 0, 0}});
  const std::string text = format_point_set(s);
  EXPECT_EQ(text, "pointset domain=z d=3 count=2\n0 0 0\n1 -2 3\n");
  EXPECT_EQ(parse_point_set(text), s);
}

TEST(PointSetFormat, CommentsAndBlankLines) {
  const auto s = parse_point_set("# header follows\n\npointset domain=fp:3 d=2 count=1\n# a point\n2 1\n");
  EXPECT_EQ(s.domain(), Domain::prime_field(3));
  EXPECT_EQ(s.size(), 1u);
}

TEST(PointSetFormat, EmptyInputIsEmptySet) {
  const auto s = parse_point_set("");
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.dim(), 0u);
}

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_point_set(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(PointSetFormat, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("pointset domain=fp:5 d=2 count=2\n1 2\n1 x\n"), 3u);
  EXPECT_EQ(error_line("pointset domain=fp:5 d=2 count=1\n1 2 3\n"), 2u);
  EXPECT_EQ(error_line("pointset domain=fp:5 d=2 count=1\n1 7\n"), 2u);
  EXPECT_EQ(error_line("\npointset domain=fp:6 d=2 count=0\n"), 2u);
  EXPECT_EQ(error_line("points d=2\n"), 1u);
  EXPECT_EQ(error_line("pointset domain=z d=1 count=3\n1\n2\n"), 3u);
  EXPECT_EQ(error_line("pointset domain=z d=1 count=2\n1\n1\n"), 3u);
}
