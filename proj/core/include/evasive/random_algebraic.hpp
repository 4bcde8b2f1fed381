#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/evasive_core.hpp"
#include "evasive/finite_field.hpp"
#include "evasive/point_set.hpp"
#include "evasive/rng.hpp"

namespace evasive {

/// Exponents (a_1, ..., a_k) of a monomial x_1^a_1 ... x_k^a_k.
using ExponentVector = std::vector<std::uint32_t>;

/// All exponent vectors of total degree <= D in k variables, in lexicographic
/// order. There are binomial(D + k, k) of them.
std::vector<ExponentVector> exponent_set(std::size_t k, unsigned degree);
std::uint64_t exponent_set_size(std::size_t k, unsigned degree);

/// Degree of the random maps: (d + 1) k + 1.
unsigned construction_degree(std::size_t d, std::size_t k);

/// Polynomial in k variables of total degree <= D over F_p; zero
/// coefficients are not stored.
class SparsePolynomial {
 public:
  SparsePolynomial(std::size_t num_vars, unsigned degree_bound)
      : num_vars_(num_vars), degree_bound_(degree_bound) {}

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree_bound() const noexcept { return degree_bound_; }
  const std::map<ExponentVector, Residue>& coefficients() const noexcept { return coeffs_; }

  /// Throws DomainError if alpha has the wrong arity or degree > bound.
  void set(const ExponentVector& alpha, Residue value);
  Residue coefficient(const ExponentVector& alpha) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  std::size_t num_vars_;
  unsigned degree_bound_;
  std::map<ExponentVector, Residue> coeffs_;
};

/// Every coefficient of Λ_D drawn independently and uniformly from F_p, in
/// exponent_set order.
SparsePolynomial sample_polynomial(const PrimeField& field, std::size_t k, unsigned degree, Rng& rng);

/// Throws DomainError on an arity mismatch.
Residue evaluate(const PrimeField& field, const SparsePolynomial& q, std::span<const Residue> z);

/// q = (q_1, ..., q_d): F_p^k -> F_p^d.
struct PolynomialMap {
  std::uint64_t modulus = 2;
  std::size_t k = 0;
  unsigned degree = 0;
  std::vector<SparsePolynomial> components;

  std::size_t d() const noexcept { return components.size(); }
  PrimeField field() const { return PrimeField(modulus); }

  friend bool operator==(const PolynomialMap&, const PolynomialMap&) = default;
};

PolynomialMap sample_map(std::uint64_t p, std::size_t d, std::size_t k, unsigned degree, Rng& rng);

/// Evaluates a fixed list of polynomials at many points using per-point
/// tables of coordinate powers.
class BatchEvaluator {
 public:
  BatchEvaluator(PrimeField field, std::span<const SparsePolynomial> polys);

  /// Values of every polynomial at z.
  void evaluate(std::span<const Residue> z, std::span<Residue> out);

 private:
  struct Term {
    std::size_t poly;
    Residue coeff;
    ExponentVector alpha;
  };
  PrimeField field_;
  std::size_t num_vars_;
  unsigned degree_;
  std::size_t num_polys_;
  std::vector<Term> terms_;
  std::vector<Residue> powers_;  // num_vars x (degree + 1)
};

/// {q(x) : x in F_p^k}. Throws BudgetExceeded when p^k > max_points.
PointSet image_set(const PolynomialMap& q, std::uint64_t max_points = kDefaultBudget);

/// Text form:
///   poly p=<p> k=<k> D=<D> d=<d>
///   one line per component; terms "coeff:e1,...,ek" separated by spaces
std::string format_polynomial_map(const PolynomialMap& q);
/// Throws ParseError naming the offending line.
PolynomialMap parse_polynomial_map(std::string_view text);

struct Construction {
  PolynomialMap map;
  PointSet set;
  unsigned degree = 0;
  /// Dimension of the flats the set should evade: d - k.
  std::size_t flat_dim = 0;
  /// |S| < p^k / 3: collisions cost more than the size claim allows.
  bool small_image = false;
  std::optional<EvasivenessCertificate> certificate;
  /// Set when the certificate was skipped because enumeration is over budget.
  std::optional<std::string> certificate_skipped;
};

/// Image of a seeded random map F_p^k -> F_p^d of degree (d+1)k+1, with its
/// (d-k)-flat certificate from the enumeration oracle when affordable.
Construction construct_evasive(std::uint64_t p, std::size_t d, std::size_t k, std::uint64_t seed,
                               const Budget& budget = {});

/// Best of `count` seeds starting at first_seed: smallest certified c_max,
/// then largest set, then earliest seed. Returns the seed used.
std::pair<std::uint64_t, Construction> construct_best_of_seeds(std::uint64_t p, std::size_t d,
                                                               std::size_t k,
                                                               std::uint64_t first_seed,
                                                               std::size_t count,
                                                               const Budget& budget = {});

/// |{x in F_p^k : q_1(x) = ... = q_m(x) = 0}| by full enumeration.
std::uint64_t variety_count(const PrimeField& field, std::span<const SparsePolynomial> polys,
                            std::uint64_t max_points = kDefaultBudget);

struct MomentReport {
  std::uint64_t p = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  unsigned degree = 0;
  unsigned s = 0;
  std::uint64_t trials = 0;
  /// N -> number of trials with that variety size.
  std::map<std::uint64_t, std::uint64_t> histogram;
  /// sum N^s / trials, exactly as numerator / trials, and as a double.
  BigInt moment_numerator = 0;
  double empirical_moment = 0.0;
  /// Sample standard error of the mean of N^s.
  double std_error = 0.0;
  double mean = 0.0;
  double mean_std_error = 0.0;
  /// s^(s+1)
  BigInt bound = 0;
  /// s <= min(D, sqrt(p)).
  bool in_regime = true;
  /// Smallest B with no observed N in (B, p - B): every variety seen was
  /// either small (<= B) or nearly full (>= p - B).
  std::uint64_t gap = 0;
};

/// Empirical s-th moment of N, the number of common zeros of k random
/// polynomials of degree <= D in k variables. D defaults to (d+1)k+1.
/// Trial t draws from Rng(derive_seed(seed, "moment", t)).
MomentReport moment_diagnostic(std::uint64_t p, std::size_t d, std::size_t k, unsigned s,
                               std::uint64_t trials, std::uint64_t seed,
                               std::optional<unsigned> degree = std::nullopt,
                               const Budget& budget = {});

/// Recomputes moment statistics of order s, and the gap, from a histogram.
void fill_moment_statistics(MomentReport& report);

struct Baseline {
  PointSet set;
  std::optional<EvasivenessCertificate> certificate;
  std::optional<std::string> certificate_skipped;
};

/// `size` distinct uniform points of F_p^d (Floyd's sampling), with the
/// affine k-flat certificate when affordable.
Baseline random_baseline(std::uint64_t p, std::size_t d, std::size_t k, std::uint64_t size,
                         std::uint64_t seed, const Budget& budget = {});

}  // namespace evasive
