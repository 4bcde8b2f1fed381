#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/evasive_core.hpp"
#include "evasive/point_set.hpp"

namespace evasive {

/// Centered residues of lambda * x for the smallest lambda in [1, p) whose
/// sup norm is <= n. Throws DomainError for x = 0 and Error when no lambda works.
IntVector short_representative(const PrimeField& field, std::span<const Residue> x, std::uint64_t n);

/// Largest prime p with n^d / 2^(d-1) < p^(d-1) < n^d, i.e. p strictly
/// between n^{d/(d-1)}/2 and n^{d/(d-1)}. Throws DomainError for d < 2 and
/// Error when the window holds no prime.
std::uint64_t projective_prime(std::uint64_t n, std::size_t d);

struct LiftReport {
  std::uint64_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::size_t source_size = 0;
  PointSet source;
  PointSet lifted;
  /// Certificate of the source set over F_p (affine k-flats).
  std::optional<EvasivenessCertificate> field_certificate;
  /// Certificate of the lifted set over the integers.
  std::optional<EvasivenessCertificate> integer_certificate;
  std::optional<std::string> certificate_skipped;
  /// Linear lift only: the sign pattern kept, and the size guarantees
  /// ceil(p^{d-k} / 3^d) and n^{d(d-k)/(d-1)} / 6^d.
  std::vector<int> sign_pattern;
  std::uint64_t bucket_bound = 0;
  double grid_bound = 0.0;
};

/// Seeded image set over F_p, p the largest prime in (n/2, n], evading affine
/// k-flats; every residue r is lifted to r + 1, so the result lies in [n]^d.
LiftReport lift_affine(std::uint64_t n, std::size_t d, std::size_t k, std::uint64_t seed,
                       const Budget& budget = {});

/// Short representatives of an evasive set over F_p, restricted to the most
/// popular sign pattern and folded into the positive orthant, giving a subset
/// of [n]^d that evades linear k-subspaces.
LiftReport lift_linear(std::uint64_t n, std::size_t d, std::size_t k, std::uint64_t seed,
                       const Budget& budget = {});

struct ProjectiveWitness {
  std::uint64_t p = 0;
  std::size_t d = 0;
  std::uint64_t n = 0;
  /// Normalised class representatives (first nonzero coordinate 1), in
  /// lexicographic order.
  std::vector<FieldVector> classes;
  /// Short integer representative of each class, same order.
  std::vector<IntVector> representatives;
};

ProjectiveWitness covering_witness(std::uint64_t n, std::size_t d, std::uint64_t max_points = kDefaultBudget);
/// Same, with an explicit prime.
ProjectiveWitness covering_witness_with_prime(std::uint64_t p, std::size_t d, std::uint64_t n,
                                              std::uint64_t max_points = kDefaultBudget);

struct CoveringBound {
  std::size_t k = 0;
  std::uint64_t per_subspace_max = 0;
  /// (p^k - 1) / (p - 1)
  std::uint64_t per_subspace_limit = 0;
  std::uint64_t lower_bound = 0;
  std::uint64_t subspaces = 0;
};

/// Largest number of classes inside one linear k-subspace of F_p^d, and the
/// resulting lower bound ceil(|classes| / max) on the number of k-flats
/// needed to cover the witness.
CoveringBound covering_bound_certificate(const ProjectiveWitness& w, std::size_t k,
                                         std::uint64_t max_flats = kDefaultBudget);

}  // namespace evasive
