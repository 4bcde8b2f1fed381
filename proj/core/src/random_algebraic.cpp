#include "evasive/random_algebraic.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <set>
#include <sstream>

#include "evasive/error.hpp"
#include "evasive/integer_linalg.hpp"
#include "evasive/subspaces.hpp"

namespace evasive {

namespace {

void append_exponents(std::size_t k, unsigned remaining, ExponentVector& prefix,
                      std::vector<ExponentVector>& out) {
  if (prefix.size() == k) {
    out.push_back(prefix);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    prefix.push_back(e);
    append_exponents(k, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap,
                            const std::string& what) {
  const BigInt v = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
  if (v > cap) {
    const std::uint64_t shown =
        v > BigInt(std::numeric_limits<std::uint64_t>::max()) ? std::numeric_limits<std::uint64_t>::max()
                                                              : static_cast<std::uint64_t>(v);
    throw BudgetExceeded(what, shown, cap);
  }
  return static_cast<std::uint64_t>(v);
}

/// Advances a base-p odometer (last coordinate fastest). False on wrap.
bool advance(FieldVector& x, std::uint64_t p) {
  std::size_t i = x.size();
  while (i > 0) {
    --i;
    if (++x[i] < p) return true;
    x[i] = 0;
  }
  return false;
}

template <class Int>
Int parse_number(std::string_view token, std::size_t line_no, std::string_view what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError(line_no, "invalid " + std::string(what) + " '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

std::vector<ExponentVector> exponent_set(std::size_t k, unsigned degree) {
  std::vector<ExponentVector> out;
  ExponentVector prefix;
  append_exponents(k, degree, prefix, out);
  return out;
}

std::uint64_t exponent_set_size(std::size_t k, unsigned degree) {
  // binomial(D + k, k), built incrementally so every step is exact.
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (degree + i) / i;
  return static_cast<std::uint64_t>(r);
}

unsigned construction_degree(std::size_t d, std::size_t k) {
  return static_cast<unsigned>((d + 1) * k + 1);
}

void SparsePolynomial::set(const ExponentVector& alpha, Residue value) {
  if (alpha.size() != num_vars_) {
    throw DomainError("exponent vector has " + std::to_string(alpha.size()) + " entries, expected " +
                      std::to_string(num_vars_));
  }
  std::uint64_t total = 0;
  for (auto e : alpha) total += e;
  if (total > degree_bound_) {
    throw DomainError("monomial of degree " + std::to_string(total) + " exceeds bound " +
                      std::to_string(degree_bound_));
  }
  if (value == 0) {
    coeffs_.erase(alpha);
  } else {
    coeffs_[alpha] = value;
  }
}

Residue SparsePolynomial::coefficient(const ExponentVector& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? 0 : it->second;
}

SparsePolynomial sample_polynomial(const PrimeField& field, std::size_t k, unsigned degree, Rng& rng) {
  SparsePolynomial q(k, degree);
  for (const auto& alpha : exponent_set(k, degree)) q.set(alpha, rng.uniform(field.modulus()));
  return q;
}

Residue evaluate(const PrimeField& field, const SparsePolynomial& q, std::span<const Residue> z) {
  if (z.size() != q.num_vars()) {
    throw DomainError("polynomial in " + std::to_string(q.num_vars()) + " variables evaluated at a point of length " +
                      std::to_string(z.size()));
  }
  Residue acc = 0;
  for (const auto& [alpha, coeff] : q.coefficients()) {
    Residue term = coeff;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i]) term = field.mul(term, field.pow(z[i] % field.modulus(), alpha[i]));
    }
    acc = field.add(acc, term);
  }
  return acc;
}

PolynomialMap sample_map(std::uint64_t p, std::size_t d, std::size_t k, unsigned degree, Rng& rng) {
  PolynomialMap q{p, k, degree, {}};
  const PrimeField field(p);
  q.components.reserve(d);
  for (std::size_t i = 0; i < d; ++i) q.components.push_back(sample_polynomial(field, k, degree, rng));
  return q;
}

BatchEvaluator::BatchEvaluator(PrimeField field, std::span<const SparsePolynomial> polys)
    : field_(field), num_vars_(0), degree_(0), num_polys_(polys.size()) {
  if (!polys.empty()) num_vars_ = polys.front().num_vars();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].num_vars() != num_vars_) throw DomainError("polynomials with different arities");
    degree_ = std::max(degree_, polys[i].degree_bound());
    for (const auto& [alpha, coeff] : polys[i].coefficients()) terms_.push_back({i, coeff, alpha});
  }
  powers_.assign(num_vars_ * (degree_ + 1), 0);
}

void BatchEvaluator::evaluate(std::span<const Residue> z, std::span<Residue> out) {
  if (z.size() != num_vars_) throw DomainError("evaluation point has the wrong arity");
  if (out.size() != num_polys_) throw DomainError("output span has the wrong length");
  const std::size_t stride = degree_ + 1;
  for (std::size_t i = 0; i < num_vars_; ++i) {
    Residue v = 1;
    const Residue zi = z[i] % field_.modulus();
    for (std::size_t e = 0; e <= degree_; ++e) {
      powers_[i * stride + e] = v;
      v = field_.mul(v, zi);
    }
  }
  std::fill(out.begin(), out.end(), 0);
  for (const auto& t : terms_) {
    Residue v = t.coeff;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (t.alpha[i]) v = field_.mul(v, powers_[i * stride + t.alpha[i]]);
    }
    out[t.poly] = field_.add(out[t.poly], v);
  }
}

PointSet image_set(const PolynomialMap& q, std::uint64_t max_points) {
  const PrimeField field = q.field();
  checked_power(q.modulus, q.k, max_points, "image of F_" + std::to_string(q.modulus) + "^" + std::to_string(q.k));
  BatchEvaluator eval(field, q.components);
  FieldVector x(q.k, 0);
  FieldVector y(q.d());
  std::vector<IntVector> pts;
  do {
    eval.evaluate(x, y);
    pts.emplace_back(y.begin(), y.end());
  } while (advance(x, q.modulus));
  return PointSet::from_points(Domain::prime_field(q.modulus), q.d(), std::move(pts));
}

std::string format_polynomial_map(const PolynomialMap& q) {
  std::ostringstream os;
  os << "poly p=" << q.modulus << " k=" << q.k << " D=" << q.degree << " d=" << q.d() << '\n';
  for (const auto& comp : q.components) {
    bool first = true;
    for (const auto& [alpha, coeff] : comp.coefficients()) {
      if (!first) os << ' ';
      first = false;
      os << coeff << ':';
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) os << ',';
        os << alpha[i];
      }
    }
    os << '\n';
  }
  return os.str();
}

PolynomialMap parse_polynomial_map(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool found = false;
  while (!found && std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto b = raw.find_first_not_of(" \t");
    found = b != std::string::npos && raw[b] != '#';
  }
  if (!found) throw ParseError(line_no + 1, "missing poly header");

  PolynomialMap q;
  std::size_t d = 0;
  int seen = 0;
  for (const auto& [key, value] : parse_header_fields(raw, "poly", line_no)) {
    if (key == "p") {
      q.modulus = parse_number<std::uint64_t>(value, line_no, "modulus");
      if (!is_prime(q.modulus)) throw ParseError(line_no, "modulus is not prime");
    } else if (key == "k") {
      q.k = parse_number<std::size_t>(value, line_no, "k");
    } else if (key == "D") {
      q.degree = parse_number<unsigned>(value, line_no, "D");
    } else if (key == "d") {
      d = parse_number<std::size_t>(value, line_no, "d");
    } else {
      throw ParseError(line_no, "unknown header field '" + key + "'");
    }
    ++seen;
  }
  if (seen != 4) throw ParseError(line_no, "header needs p=, k=, D= and d=");

  while (q.components.size() < d && std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    SparsePolynomial comp(q.k, q.degree);
    std::istringstream terms(raw);
    std::string term;
    while (terms >> term) {
      const auto colon = term.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "term '" + term + "' lacks ':'");
      const auto coeff = parse_number<std::uint64_t>(std::string_view(term).substr(0, colon), line_no, "coefficient");
      if (coeff >= q.modulus) throw ParseError(line_no, "coefficient " + std::to_string(coeff) + " is not reduced");
      ExponentVector alpha;
      std::string_view rest = std::string_view(term).substr(colon + 1);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        alpha.push_back(parse_number<std::uint32_t>(rest.substr(0, comma), line_no, "exponent"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      try {
        comp.set(alpha, coeff);
      } catch (const DomainError& e) {
        throw ParseError(line_no, e.what());
      }
    }
    q.components.push_back(std::move(comp));
  }
  if (q.components.size() != d) {
    throw ParseError(line_no, "expected " + std::to_string(d) + " component lines");
  }
  return q;
}

Construction construct_evasive(std::uint64_t p, std::size_t d, std::size_t k, std::uint64_t seed,
                               const Budget& budget) {
  if (k > d) throw DomainError("construction needs k <= d");
  Construction c;
  c.degree = construction_degree(d, k);
  c.flat_dim = d - k;
  Rng rng(derive_seed(seed, "construct"));
  c.map = sample_map(p, d, k, c.degree, rng);
  c.set = image_set(c.map, budget.max_flats);

  const BigInt domain_size = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k));
  c.small_image = BigInt(c.set.size()) * 3 < domain_size;

  if (affine_flat_count(d, c.flat_dim, p) <= budget.max_flats) {
    c.certificate = max_intersection_enum(c.set, c.flat_dim, Flavor::affine, budget.max_flats);
  } else {
    c.certificate_skipped = "number of " + std::to_string(c.flat_dim) + "-flats exceeds max_flats";
  }
  return c;
}

std::pair<std::uint64_t, Construction> construct_best_of_seeds(std::uint64_t p, std::size_t d,
                                                               std::size_t k,
                                                               std::uint64_t first_seed,
                                                               std::size_t count,
                                                               const Budget& budget) {
  if (count == 0) throw DomainError("need at least one seed");
  std::optional<std::pair<std::uint64_t, Construction>> best;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    Construction c = construct_evasive(p, d, k, seed, budget);
    auto key = [](const Construction& x) {
      const std::size_t cmax = x.certificate ? x.certificate->c_max : std::numeric_limits<std::size_t>::max();
      return std::pair<std::size_t, std::ptrdiff_t>(cmax, -static_cast<std::ptrdiff_t>(x.set.size()));
    };
    if (!best || key(c) < key(best->second)) best.emplace(seed, std::move(c));
  }
  return std::move(*best);
}

std::uint64_t variety_count(const PrimeField& field, std::span<const SparsePolynomial> polys,
                            std::uint64_t max_points) {
  if (polys.empty()) throw DomainError("variety of an empty system needs an explicit arity");
  const std::size_t k = polys.front().num_vars();
  checked_power(field.modulus(), k, max_points,
                "variety scan of F_" + std::to_string(field.modulus()) + "^" +
                    std::to_string(k));
  BatchEvaluator eval(field, polys);
  FieldVector x(k, 0);
  FieldVector y(polys.size());
  std::uint64_t zeros = 0;
  do {
    eval.evaluate(x, y);
    if (std::all_of(y.begin(), y.end(), [](Residue v) { return v == 0; })) ++zeros;
  } while (advance(x, field.modulus()));
  return zeros;
}

void fill_moment_statistics(MomentReport& r) {
  BigInt sum = 0, sum_sq = 0, sum_n = 0, sum_n_sq = 0;
  r.gap = 0;
  for (const auto& [n, count] : r.histogram) {
    if (count > 0) r.gap = std::max(r.gap, std::min(n, n < r.p ? r.p - n : 0));
    const BigInt x = boost::multiprecision::pow(BigInt(n), r.s);
    sum += x * count;
    sum_sq += x * x * count;
    sum_n += BigInt(n) * count;
    sum_n_sq += BigInt(n) * n * count;
  }
  const auto to_double = [](const BigInt& v) { return v.convert_to<double>(); };
  const auto trials = r.trials;
  r.moment_numerator = sum;
  r.bound = boost::multiprecision::pow(BigInt(r.s), r.s + 1);
  if (trials == 0) return;
  r.empirical_moment = to_double(sum) / static_cast<double>(trials);
  r.mean = to_double(sum_n) / static_cast<double>(trials);
  if (trials > 1) {
    // Sample variance (n sum x^2 - (sum x)^2) / (n (n - 1)), computed exactly.
    const BigInt n = trials;
    const double var = to_double(n * sum_sq - sum * sum) / to_double(n * (n - 1));
    const double var_n = to_double(n * sum_n_sq - sum_n * sum_n) / to_double(n * (n - 1));
    r.std_error = std::sqrt(var / static_cast<double>(trials));
    r.mean_std_error = std::sqrt(var_n / static_cast<double>(trials));
  }
}

MomentReport moment_diagnostic(std::uint64_t p, std::size_t d, std::size_t k, unsigned s,
                               std::uint64_t trials, std::uint64_t seed,
                               std::optional<unsigned> degree, const Budget& budget) {
  if (trials > budget.max_trials) throw BudgetExceeded("moment diagnostic", trials, budget.max_trials);
  if (k == 0) throw DomainError("moment diagnostic needs k >= 1");
  const PrimeField field(p);
  MomentReport r;
  r.p = p;
  r.d = d;
  r.k = k;
  r.degree = degree.value_or(construction_degree(d, k));
  r.s = s;
  r.trials = trials;
  r.in_regime = s <= r.degree && static_cast<std::uint64_t>(s) * s <= p;

  std::vector<SparsePolynomial> system;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, "moment", t));
    system.clear();
    for (std::size_t i = 0; i < k; ++i) system.push_back(sample_polynomial(field, k, r.degree, rng));
    ++r.histogram[variety_count(field, system, budget.max_flats)];
  }
  fill_moment_statistics(r);
  return r;
}

Baseline random_baseline(std::uint64_t p, std::size_t d, std::size_t k, std::uint64_t size,
                         std::uint64_t seed, const Budget& budget) {
  const BigInt universe = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d));
  if (BigInt(size) > universe) {
    throw DomainError("cannot draw " + std::to_string(size) + " distinct points from F_" +
                      std::to_string(p) + "^" + std::to_string(d));
  }
  if (universe > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw DomainError("F_p^d too large to index with 64 bits");
  }
  const PrimeField field(p);
  const auto n = static_cast<std::uint64_t>(universe);
  Rng rng(derive_seed(seed, "baseline"));
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = n - size; j < n; ++j) {
    const std::uint64_t t = rng.uniform(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<IntVector> pts;
  pts.reserve(size);
  for (std::uint64_t index : chosen) {
    IntVector x(d);
    for (std::size_t i = d; i > 0; --i) {
      x[i - 1] = static_cast<std::int64_t>(index % p);
      index /= p;
    }
    pts.push_back(std::move(x));
  }
  Baseline b{PointSet::from_points(Domain::prime_field(p), d, std::move(pts)), std::nullopt, std::nullopt};
  if (k <= d && affine_flat_count(d, k, p) <= budget.max_flats) {
    b.certificate = max_intersection_enum(b.set, k, Flavor::affine, budget.max_flats);
  } else {
    b.certificate_skipped = "number of " + std::to_string(k) + "-flats exceeds max_flats";
  }
  return b;
}

}  // namespace evasive
