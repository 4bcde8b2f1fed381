#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evasive {

/// A residue in [0, p). The modulus lives in the surrounding PrimeField.
using Residue = std::uint64_t;
using FieldVector = std::vector<Residue>;
using IntVector = std::vector<std::int64_t>;

__extension__ using Wide = unsigned __int128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Arithmetic context for F_p. Products go through 128-bit intermediates.
class PrimeField {
 public:
  /// Throws DomainError unless p is prime.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<Wide>(a) * b) % p_);
  }
  Residue pow(Residue base, std::uint64_t exp) const noexcept;
  /// Throws DomainError on zero.
  Residue inv(Residue a) const;

  /// Maps any integer to its residue class.
  Residue reduce(std::int64_t v) const noexcept;
  /// Representative y of a with -p/2 < y <= p/2.
  std::int64_t centered(Residue a) const noexcept;

  FieldVector reduce(std::span<const std::int64_t> v) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Self-describing field element, for callers that do not carry a PrimeField.
struct FieldElement {
  Residue value = 0;
  std::uint64_t modulus = 2;
};

enum class FieldOp { add, sub, mul, inv };

/// `b` is ignored for inv. Throws DomainError on modulus mismatch or inv(0).
FieldElement field_arithmetic(FieldElement a, FieldElement b, FieldOp op);

std::int64_t centered_residue(FieldElement a);

/// Dense row-major matrix over F_p.
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  /// Every row must have length `cols`; an empty row list yields a 0 x cols matrix.
  static FieldMatrix from_rows(PrimeField field, const std::vector<FieldVector>& rows,
                               std::size_t cols);
  static FieldMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  FieldVector row_vector(std::size_t r) const;

  /// Keeps the first `n` rows.
  void truncate_rows(std::size_t n);

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct RrefResult {
  FieldMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; pivots are normalised to 1.
RrefResult rref(FieldMatrix m);

std::size_t rank(const FieldMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in column order.
std::vector<FieldVector> kernel_basis(const FieldMatrix& m);

/// Largest prime in (lo, hi]. Throws Error if there is none.
std::uint64_t bertrand_prime(std::uint64_t lo, std::uint64_t hi);

/// Incrementally maintained echelon basis over F_p, for span-membership tests
/// inside search loops.
class FieldSpan {
 public:
  FieldSpan(PrimeField field, std::size_t dim) : field_(field), dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  bool contains(std::span<const Residue> v) const;
  /// Returns true when the rank grew.
  bool insert(std::span<const Residue> v);

 private:
  void reduce(FieldVector& v) const;

  PrimeField field_;
  std::size_t dim_;
  std::vector<FieldVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace evasive
