#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "evasive/finite_field.hpp"

namespace evasive {

/// Where the coordinates of a point set live: F_p, or the integers.
struct Domain {
  enum class Kind { prime_field, integers };

  Kind kind = Kind::integers;
  std::uint64_t modulus = 0;  // 0 for the integers

  static Domain prime_field(std::uint64_t p);
  static Domain integers() { return {}; }

  bool is_field() const noexcept { return kind == Kind::prime_field; }
  /// "fp:<p>" or "z", as written in point-set headers.
  std::string tag() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Deduplicated point list in lexicographic order. Field coordinates are
/// residues in [0, p).
class PointSet {
 public:
  /// The empty integer set of dimension 0.
  PointSet() = default;
  PointSet(Domain domain, std::size_t dim) : domain_(domain), dim_(dim) {}

  /// Validates, sorts and removes duplicates. Throws DomainError on a point of
  /// the wrong length or a field coordinate outside [0, p).
  static PointSet from_points(Domain domain, std::size_t dim, std::vector<IntVector> points);
  static PointSet from_field_points(const PrimeField& field, std::size_t dim,
                                    const std::vector<FieldVector>& points);

  const Domain& domain() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<IntVector>& points() const noexcept { return points_; }
  const IntVector& operator[](std::size_t i) const { return points_[i]; }

  /// Throws DomainError for integer point sets.
  PrimeField field() const;
  std::vector<FieldVector> field_points() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  Domain domain_;
  std::size_t dim_ = 0;
  std::vector<IntVector> points_;
};

/// Text format:
///   pointset domain=<fp:p|z> d=<d> count=<N>
///   x1 x2 ... xd        (one point per line)
/// Blank lines and lines starting with '#' are ignored. Input with no header
/// at all parses as the empty integer point set of dimension 0.
std::string format_point_set(const PointSet& s);
void write_point_set(std::ostream& out, const PointSet& s);
void write_point_set(const std::filesystem::path& path, const PointSet& s);

/// Throws ParseError naming the offending line.
PointSet parse_point_set(std::istream& in);
PointSet parse_point_set(std::string_view text);
PointSet read_point_set(const std::filesystem::path& path);

/// Splits "key=value" tokens from a header line; used by every text format.
std::vector<std::pair<std::string, std::string>> parse_header_fields(std::string_view line,
                                                                     std::string_view magic,
                                                                     std::size_t line_no);

}  // namespace evasive
