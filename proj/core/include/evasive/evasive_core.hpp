#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/point_set.hpp"
#include "evasive/subspaces.hpp"

namespace evasive {

/// Affine: k-dimensional flats anywhere. Linear: k-dimensional subspaces
/// through the origin.
enum class Flavor { affine, linear };

enum class Oracle { flat_enumeration, subset_search };

std::string_view to_string(Flavor f);
std::string_view to_string(Oracle o);
/// Accepts "affine" / "linear". Throws DomainError otherwise.
Flavor parse_flavor(std::string_view s);

/// Result of a maximum-intersection computation. `subset` lists the indices
/// (into the point set) of a largest subset lying in one k-flat; the
/// enumeration oracle also records the flat itself.
struct EvasivenessCertificate {
  std::size_t k = 0;
  Flavor flavor = Flavor::affine;
  Oracle oracle = Oracle::subset_search;
  std::size_t c_max = 0;
  std::optional<AffineFlat> flat;
  std::vector<std::size_t> subset;
  /// Flats scanned, or search nodes expanded.
  std::uint64_t work = 0;
};

/// max |F ∩ S| over every k-dimensional flat (or subspace) F of F_p^d.
/// Ties go to the first flat in enumeration order. Throws DomainError for
/// nonempty integer point sets or k > d, BudgetExceeded when the number of flats is
/// over max_flats.
EvasivenessCertificate max_intersection_enum(const PointSet& s, std::size_t k, Flavor flavor,
                                             std::uint64_t max_flats = kDefaultBudget);

/// Size of the largest subset of S whose affine (or linear) span has
/// dimension <= k. Works for both domains; integer sets are handled with
/// exact rational rank, so the answer holds over R.
///
/// Subsets are grown in index order, extending only by points that raise the
/// span dimension; once the span reaches dimension k (or nothing extends it)
/// the subset is closed under its span and measured. Every qualifying subset
/// lies in the closure of its greedy independent prefix, so the maximum is
/// exact.
EvasivenessCertificate max_intersection_subsets(const PointSet& s, std::size_t k, Flavor flavor,
                                                std::uint64_t max_subsets = kDefaultBudget);

struct EvasivenessVerdict {
  bool evasive = true;
  /// c+1 points of S inside one k-flat when not evasive.
  std::vector<std::size_t> witness;
  EvasivenessCertificate certificate;
};

/// (k, c)-evasiveness via the chosen oracle.
EvasivenessVerdict is_evasive(const PointSet& s, std::size_t k, std::size_t c, Flavor flavor,
                              Oracle oracle = Oracle::subset_search, const Budget& budget = {});

/// Span dimension of a subset of S, using exact rank for either domain.
std::size_t subset_span_dim(const PointSet& s, const std::vector<std::size_t>& indices,
                            Flavor flavor);

/// Recomputes a certificate's claims: the subset has c_max distinct members
/// whose span dimension is <= k, and when a flat is recorded it holds exactly
/// those points of S.
bool verify_certificate(const PointSet& s, const EvasivenessCertificate& cert);

}  // namespace evasive
