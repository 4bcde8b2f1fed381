#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/finite_field.hpp"
#include "evasive/integer_linalg.hpp"

namespace evasive {

/// A k-dimensional subspace of F_p^d stored as its unique RREF basis (k x d).
class LinearSubspace {
 public:
  /// Spans the given rows; the result is canonicalised.
  static LinearSubspace span(PrimeField field, std::size_t ambient_dim,
                             const std::vector<FieldVector>& generators);

  const FieldMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const PrimeField& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }

  /// x minus its projection along the pivot coordinates; zero iff x is in the
  /// subspace, and constant on every coset.
  FieldVector coset_representative(std::span<const Residue> x) const;
  bool contains(std::span<const Residue> x) const;

  friend bool operator==(const LinearSubspace&, const LinearSubspace&) = default;

 private:
  friend class SubspaceEnumerator;
  LinearSubspace(FieldMatrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  FieldMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// A coset base + direction. The base has zeros at the pivot columns of the
/// direction, so equal flats compare equal field-by-field.
class AffineFlat {
 public:
  AffineFlat(LinearSubspace direction, std::span<const Residue> through);

  const LinearSubspace& direction() const noexcept { return direction_; }
  const FieldVector& base() const noexcept { return base_; }
  std::size_t dim() const noexcept { return direction_.dim(); }
  std::size_t ambient_dim() const noexcept { return direction_.ambient_dim(); }
  const PrimeField& field() const noexcept { return direction_.field(); }

  /// All p^dim points, in lexicographic order of their coefficient vectors.
  std::vector<FieldVector> points() const;

  friend bool operator==(const AffineFlat&, const AffineFlat&) = default;

 private:
  LinearSubspace direction_;
  FieldVector base_;
};

/// Throws DomainError on dimension or modulus mismatch.
bool contains(const AffineFlat& flat, std::span<const Residue> x);

/// Rank of the differences p_i - p_0. Throws DomainError on empty input.
std::size_t affine_dim(const PrimeField& field, const std::vector<FieldVector>& points);
std::size_t linear_dim(const PrimeField& field, const std::vector<FieldVector>& points);

/// Number of k-dimensional subspaces of F_p^d.
BigInt gaussian_binomial(std::size_t d, std::size_t k, std::uint64_t p);

/// p^(d-k) * [d choose k]_p
BigInt affine_flat_count(std::size_t d, std::size_t k, std::uint64_t p);

/// Streams the k-dimensional subspaces of F_p^d as RREF bases, each exactly
/// once: pivot sets in lexicographic order, then free entries as an odometer
/// whose first entry is most significant.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(PrimeField field, std::size_t d, std::size_t k);

  /// Empty once the stream is exhausted.
  std::optional<LinearSubspace> next();

  /// Lexicographic list of all pivot sets; a stream can be restricted to one
  /// of them for partitioned consumption.
  static std::vector<std::vector<std::size_t>> pivot_sets(std::size_t d, std::size_t k);
  void restrict_to(const std::vector<std::size_t>& pivots);

 private:
  void load_pivot_set();
  bool advance_pivots();
  bool advance_odometer();
  LinearSubspace build() const;

  PrimeField field_;
  std::size_t d_;
  std::size_t k_;
  std::vector<std::size_t> pivots_;
  // (row, col) of every free entry of the current pivot set, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> free_;
  std::vector<Residue> odometer_;
  bool started_ = false;
  bool done_ = false;
  bool single_pivot_set_ = false;
};

/// Calls fn for each k-subspace in enumeration order until fn returns false.
/// Throws BudgetExceeded if the Gaussian binomial exceeds max_flats.
void for_each_linear(PrimeField field, std::size_t d, std::size_t k, std::uint64_t max_flats,
                     const std::function<bool(const LinearSubspace&)>& fn);

/// Cosets of each direction follow it, ordered lexicographically by base.
void for_each_affine(PrimeField field, std::size_t d, std::size_t k, std::uint64_t max_flats,
                     const std::function<bool(const AffineFlat&)>& fn);

std::vector<LinearSubspace> enumerate_linear(std::uint64_t p, std::size_t d, std::size_t k,
                                             std::uint64_t max_flats = kDefaultBudget);
std::vector<AffineFlat> enumerate_affine(std::uint64_t p, std::size_t d, std::size_t k,
                                         std::uint64_t max_flats = kDefaultBudget);

}  // namespace evasive
