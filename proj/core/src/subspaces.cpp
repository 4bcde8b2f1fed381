#include "evasive/subspaces.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "evasive/error.hpp"

namespace evasive {

namespace {

void check_vector(const PrimeField& field, std::size_t dim, std::span<const Residue> x) {
  if (x.size() != dim) {
    throw DomainError("vector of length " + std::to_string(x.size()) + " in ambient dimension " +
                      std::to_string(dim));
  }
  for (Residue c : x) {
    if (c >= field.modulus()) {
      throw DomainError("coordinate " + std::to_string(c) + " is not a residue mod " +
                        std::to_string(field.modulus()));
    }
  }
}

std::uint64_t to_u64_capped(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

LinearSubspace LinearSubspace::span(PrimeField field, std::size_t ambient_dim,
                                    const std::vector<FieldVector>& generators) {
  auto [reduced, r, pivots] = rref(FieldMatrix::from_rows(field, generators, ambient_dim));
  reduced.truncate_rows(r);
  return LinearSubspace(std::move(reduced), std::move(pivots));
}

FieldVector LinearSubspace::coset_representative(std::span<const Residue> x) const {
  check_vector(field(), ambient_dim(), x);
  const PrimeField& f = field();
  FieldVector r(x.begin(), x.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Residue coeff = x[pivots_[i]];
    if (coeff == 0) continue;
    auto row = basis_.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (row[j] != 0) r[j] = f.sub(r[j], f.mul(coeff, row[j]));
    }
  }
  return r;
}

bool LinearSubspace::contains(std::span<const Residue> x) const {
  const FieldVector r = coset_representative(x);
  return std::all_of(r.begin(), r.end(), [](Residue c) { return c == 0; });
}

AffineFlat::AffineFlat(LinearSubspace direction, std::span<const Residue> through)
    : direction_(std::move(direction)), base_(direction_.coset_representative(through)) {}

std::vector<FieldVector> AffineFlat::points() const {
  const PrimeField& f = field();
  const std::size_t k = dim();
  std::vector<Residue> coeffs(k, 0);
  std::vector<FieldVector> out;
  while (true) {
    FieldVector x = base_;
    for (std::size_t i = 0; i < k; ++i) {
      if (coeffs[i] == 0) continue;
      auto row = direction_.basis().row(i);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.add(x[j], f.mul(coeffs[i], row[j]));
    }
    out.push_back(std::move(x));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++coeffs[i] < f.modulus()) break;
      coeffs[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

bool contains(const AffineFlat& flat, std::span<const Residue> x) {
  return flat.direction().coset_representative(x) == flat.base();
}

std::size_t affine_dim(const PrimeField& field, const std::vector<FieldVector>& points) {
  if (points.empty()) throw DomainError("affine dimension of an empty point list");
  const std::size_t d = points.front().size();
  std::vector<FieldVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    check_vector(field, d, points[i]);
    FieldVector v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = field.sub(points[i][j], points[0][j]);
    diffs.push_back(std::move(v));
  }
  return rank(FieldMatrix::from_rows(field, diffs, d));
}

std::size_t linear_dim(const PrimeField& field, const std::vector<FieldVector>& points) {
  if (points.empty()) return 0;
  const std::size_t d = points.front().size();
  for (const auto& x : points) check_vector(field, d, x);
  return rank(FieldMatrix::from_rows(field, points, d));
}

BigInt gaussian_binomial(std::size_t d, std::size_t k, std::uint64_t p) {
  if (k > d) return 0;
  BigInt num = 1;
  BigInt den = 1;
  const BigInt q = p;
  for (std::size_t i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(q, static_cast<unsigned>(d - i)) - 1;
    den *= boost::multiprecision::pow(q, static_cast<unsigned>(k - i)) - 1;
  }
  return num / den;
}

BigInt affine_flat_count(std::size_t d, std::size_t k, std::uint64_t p) {
  if (k > d) return 0;
  return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d - k)) *
         gaussian_binomial(d, k, p);
}

SubspaceEnumerator::SubspaceEnumerator(PrimeField field, std::size_t d, std::size_t k)
    : field_(field), d_(d), k_(k) {
  if (k_ > d_) {
    done_ = true;
    return;
  }
  pivots_.resize(k_);
  std::iota(pivots_.begin(), pivots_.end(), std::size_t{0});
}

std::vector<std::vector<std::size_t>> SubspaceEnumerator::pivot_sets(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > d) return out;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == d - k + i - 1) --i;
    if (i == 0) return out;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

void SubspaceEnumerator::restrict_to(const std::vector<std::size_t>& pivots) {
  if (pivots.size() != k_ || !std::is_sorted(pivots.begin(), pivots.end()) ||
      (!pivots.empty() && pivots.back() >= d_)) {
    throw DomainError("invalid pivot set");
  }
  pivots_ = pivots;
  single_pivot_set_ = true;
  started_ = false;
  done_ = false;
}

void SubspaceEnumerator::load_pivot_set() {
  free_.clear();
  std::vector<bool> is_pivot(d_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t c = pivots_[i] + 1; c < d_; ++c) {
      if (!is_pivot[c]) free_.emplace_back(i, c);
    }
  }
  odometer_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::advance_pivots() {
  if (single_pivot_set_) return false;
  std::size_t i = k_;
  while (i > 0 && pivots_[i - 1] == d_ - k_ + i - 1) --i;
  if (i == 0) return false;
  ++pivots_[i - 1];
  for (std::size_t j = i; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  return true;
}

bool SubspaceEnumerator::advance_odometer() {
  std::size_t i = odometer_.size();
  while (i > 0) {
    --i;
    if (++odometer_[i] < field_.modulus()) return true;
    odometer_[i] = 0;
  }
  return false;
}

LinearSubspace SubspaceEnumerator::build() const {
  FieldMatrix basis(field_, k_, d_);
  for (std::size_t i = 0; i < k_; ++i) basis(i, pivots_[i]) = 1;
  for (std::size_t f = 0; f < free_.size(); ++f) basis(free_[f].first, free_[f].second) = odometer_[f];
  return LinearSubspace(std::move(basis), pivots_);
}

std::optional<LinearSubspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    load_pivot_set();
    return build();
  }
  if (!advance_odometer()) {
    if (!advance_pivots()) {
      done_ = true;
      return std::nullopt;
    }
    load_pivot_set();
  }
  return build();
}

void for_each_linear(PrimeField field, std::size_t d, std::size_t k, std::uint64_t max_flats,
                     const std::function<bool(const LinearSubspace&)>& fn) {
  const BigInt count = gaussian_binomial(d, k, field.modulus());
  if (count > max_flats) {
    throw BudgetExceeded("enumerating " + std::to_string(k) + "-subspaces of F_" +
                             std::to_string(field.modulus()) + "^" + std::to_string(d),
                         to_u64_capped(count), max_flats);
  }
  SubspaceEnumerator it(field, d, k);
  while (auto s = it.next()) {
    if (!fn(*s)) return;
  }
}

void for_each_affine(PrimeField field, std::size_t d, std::size_t k, std::uint64_t max_flats,
                     const std::function<bool(const AffineFlat&)>& fn) {
  const BigInt count = affine_flat_count(d, k, field.modulus());
  if (count > max_flats) {
    throw BudgetExceeded("enumerating " + std::to_string(k) + "-flats of F_" +
                             std::to_string(field.modulus()) + "^" + std::to_string(d),
                         to_u64_capped(count), max_flats);
  }
  SubspaceEnumerator it(field, d, k);
  while (auto s = it.next()) {
    // Coset bases range over the non-pivot coordinates.
    std::vector<bool> is_pivot(d, false);
    for (auto c : s->pivots()) is_pivot[c] = true;
    std::vector<std::size_t> free_coords;
    for (std::size_t c = 0; c < d; ++c) {
      if (!is_pivot[c]) free_coords.push_back(c);
    }
    FieldVector base(d, 0);
    while (true) {
      if (!fn(AffineFlat(*s, base))) return;
      std::size_t i = free_coords.size();
      bool advanced = false;
      while (i > 0) {
        --i;
        if (++base[free_coords[i]] < field.modulus()) {
          advanced = true;
          break;
        }
        base[free_coords[i]] = 0;
      }
      if (!advanced) break;
    }
  }
}

std::vector<LinearSubspace> enumerate_linear(std::uint64_t p, std::size_t d, std::size_t k,
                                             std::uint64_t max_flats) {
  std::vector<LinearSubspace> out;
  for_each_linear(PrimeField(p), d, k, max_flats, [&](const LinearSubspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::vector<AffineFlat> enumerate_affine(std::uint64_t p, std::size_t d, std::size_t k,
                                         std::uint64_t max_flats) {
  std::vector<AffineFlat> out;
  for_each_affine(PrimeField(p), d, k, max_flats, [&](const AffineFlat& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

}  // namespace evasive
