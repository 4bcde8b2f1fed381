#include "evasive/finite_field.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "evasive/error.hpp"

namespace evasive {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<Wide>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3e24.
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
}

Residue PrimeField::pow(Residue base, std::uint64_t exp) const noexcept {
  return powmod(base, exp, p_);
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  return powmod(a, p_ - 2, p_);
}

Residue PrimeField::reduce(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

std::int64_t PrimeField::centered(Residue a) const noexcept {
  // y <= p/2  <=>  2y <= p
  if (2 * a <= p_) return static_cast<std::int64_t>(a);
  return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_);
}

FieldVector PrimeField::reduce(std::span<const std::int64_t> v) const {
  FieldVector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [this](std::int64_t x) { return reduce(x); });
  return out;
}

FieldElement field_arithmetic(FieldElement a, FieldElement b, FieldOp op) {
  const PrimeField f(a.modulus);
  if (op != FieldOp::inv && a.modulus != b.modulus) {
    throw DomainError("modulus mismatch: " + std::to_string(a.modulus) + " vs " +
                      std::to_string(b.modulus));
  }
  const Residue x = a.value % f.modulus();
  const Residue y = b.value % f.modulus();
  switch (op) {
    case FieldOp::add:
      return {f.add(x, y), f.modulus()};
    case FieldOp::sub:
      return {f.sub(x, y), f.modulus()};
    case FieldOp::mul:
      return {f.mul(x, y), f.modulus()};
    case FieldOp::inv:
      return {f.inv(x), f.modulus()};
  }
  throw DomainError("unknown field operation");
}

std::int64_t centered_residue(FieldElement a) {
  const PrimeField f(a.modulus);
  return f.centered(a.value % f.modulus());
}

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::from_rows(PrimeField field, const std::vector<FieldVector>& rows,
                                   std::size_t cols) {
  FieldMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DomainError("row " + std::to_string(r) + " has length " +
                        std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c] % field.modulus();
  }
  return m;
}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldVector FieldMatrix::row_vector(std::size_t r) const {
  auto view = row(r);
  return {view.begin(), view.end()};
}

void FieldMatrix::truncate_rows(std::size_t n) {
  rows_ = std::min(rows_, n);
  data_.resize(rows_ * cols_);
}

RrefResult rref(FieldMatrix m) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pr = lead;
    while (pr < m.rows() && m(pr, c) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead) {
      auto a = m.row(pr);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Residue scale = f.inv(m(lead, c));
    for (auto& x : m.row(lead)) x = f.mul(x, scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Residue factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead, j)));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  const std::size_t r = pivots.size();
  return {std::move(m), r, std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return rref(m).rank; }

std::vector<FieldVector> kernel_basis(const FieldMatrix& m) {
  const auto [reduced, r, pivots] = rref(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = f.neg(reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::uint64_t bertrand_prime(std::uint64_t lo, std::uint64_t hi) {
  for (std::uint64_t n = hi; n > lo; --n) {
    if (is_prime(n)) return n;
  }
  throw Error("no prime in (" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void FieldSpan::reduce(FieldVector& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue coeff = v[pivots_[i]];
    if (coeff == 0) continue;
    const FieldVector& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j) {
      if (row[j] != 0) v[j] = field_.sub(v[j], field_.mul(coeff, row[j]));
    }
  }
}

bool FieldSpan::contains(std::span<const Residue> v) const {
  if (v.size() != dim_) throw DomainError("span dimension mismatch");
  FieldVector w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

bool FieldSpan::insert(std::span<const Residue> v) {
  if (v.size() != dim_) throw DomainError("span dimension mismatch");
  FieldVector w(v.begin(), v.end());
  reduce(w);
  auto it = std::find_if(w.begin(), w.end(), [](Residue x) { return x != 0; });
  if (it == w.end()) return false;
  const auto pivot = static_cast<std::size_t>(it - w.begin());
  const Residue scale = field_.inv(w[pivot]);
  for (auto& x : w) x = field_.mul(x, scale);
  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

}  // namespace evasive
