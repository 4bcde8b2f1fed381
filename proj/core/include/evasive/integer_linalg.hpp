#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "evasive/error.hpp"
#include "evasive/finite_field.hpp"

namespace evasive {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination. Equals the rank over R.
std::size_t integer_rank(IntegerMatrix m);

std::size_t integer_rank(const std::vector<IntVector>& rows, std::size_t cols);

/// Dimension of the affine span of the points over R (0 for one point).
/// Throws DomainError on empty input.
std::size_t integer_affine_dim(const std::vector<IntVector>& points);
std::size_t integer_linear_dim(const std::vector<IntVector>& points, std::size_t dim);

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in span");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in span");
  return r;
}
inline std::int64_t int_gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t int_abs(std::int64_t a) { return a < 0 ? -a : a; }

inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt int_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt int_abs(const BigInt& a) { return boost::multiprecision::abs(a); }

}  // namespace detail

/// Incremental echelon basis of a subspace of Q^dim spanned by integer
/// vectors. Rows are kept primitive (content 1) so entries stay small.
/// With Scalar = int64_t every operation is overflow-checked and throws
/// std::overflow_error; callers retry with Scalar = BigInt.
template <class Scalar>
class IntegerSpan {
 public:
  explicit IntegerSpan(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  bool contains(std::span<const std::int64_t> v) const {
    auto w = load(v);
    reduce(w);
    for (const auto& x : w) {
      if (x != 0) return false;
    }
    return true;
  }

  bool insert(std::span<const std::int64_t> v) {
    auto w = load(v);
    reduce(w);
    std::size_t pivot = dim_;
    Scalar content = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (w[j] == 0) continue;
      if (pivot == dim_) pivot = j;
      content = detail::int_gcd(content, detail::int_abs(w[j]));
    }
    if (pivot == dim_) return false;
    if (w[pivot] < 0) content = -content;
    for (auto& x : w) x /= content;
    rows_.push_back(std::move(w));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  std::vector<Scalar> load(std::span<const std::int64_t> v) const {
    if (v.size() != dim_) throw DomainError("span dimension mismatch");
    return std::vector<Scalar>(v.begin(), v.end());
  }

  void reduce(std::vector<Scalar>& w) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (w[c] == 0) continue;
      const Scalar a = rows_[i][c];
      const Scalar b = w[c];
      const Scalar g = detail::int_gcd(detail::int_abs(a), detail::int_abs(b));
      const Scalar fa = a / g;
      const Scalar fb = b / g;
      Scalar content = 0;
      for (std::size_t j = 0; j < dim_; ++j) {
        w[j] = detail::checked_sub(detail::checked_mul(fa, w[j]), detail::checked_mul(fb, rows_[i][j]));
        if (w[j] != 0) content = detail::int_gcd(content, detail::int_abs(w[j]));
      }
      if (content > 1) {
        for (auto& x : w) x /= content;
      }
    }
  }

  std::size_t dim_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace evasive
