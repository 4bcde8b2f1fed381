#include "evasive/lattice_lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "evasive/error.hpp"
#include "evasive/integer_linalg.hpp"
#include "evasive/random_algebraic.hpp"
#include "evasive/subspaces.hpp"

namespace evasive {

namespace {

BigInt big_pow(std::uint64_t base, std::size_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

void add_integer_certificate(LiftReport& r, Flavor flavor, const Budget& budget) {
  try {
    r.integer_certificate = max_intersection_subsets(r.lifted, r.k, flavor, budget.max_subsets);
  } catch (const BudgetExceeded& e) {
    r.certificate_skipped = std::string("integer certificate: ") + e.what();
  }
}

}  // namespace

IntVector short_representative(const PrimeField& field, std::span<const Residue> x, std::uint64_t n) {
  const std::uint64_t p = field.modulus();
  if (std::all_of(x.begin(), x.end(), [](Residue v) { return v == 0; })) {
    throw DomainError("the zero vector has no projective class");
  }
  for (auto v : x) {
    if (v >= p) throw DomainError("coordinate is not a residue mod " + std::to_string(p));
  }
  IntVector y(x.size());
  for (Residue lambda = 1; lambda < p; ++lambda) {
    bool fits = true;
    for (std::size_t i = 0; i < x.size() && fits; ++i) {
      y[i] = field.centered(field.mul(lambda, x[i]));
      fits = static_cast<std::uint64_t>(y[i] < 0 ? -y[i] : y[i]) <= n;
    }
    if (fits) return y;
  }
  throw Error("no multiple of the vector has all centered residues within [-" + std::to_string(n) + ", " +
              std::to_string(n) + "]");
}

std::uint64_t projective_prime(std::uint64_t n, std::size_t d) {
  if (d < 2) throw DomainError("the projective prime window needs d >= 2");
  if (n < 2) throw DomainError("the projective prime window needs n >= 2");
  const BigInt nd = big_pow(n, d);
  // Start from the floating estimate of n^{d/(d-1)} and correct exactly.
  auto hi = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<double>(n), static_cast<double>(d) / static_cast<double>(d - 1))));
  while (hi > 0 && big_pow(hi, d - 1) >= nd) --hi;
  while (big_pow(hi + 1, d - 1) < nd) ++hi;
  for (std::uint64_t q = hi; q >= 2; --q) {
    if (big_pow(2 * q, d - 1) <= nd) break;
    if (is_prime(q)) return q;
  }
  throw Error("no prime strictly between n^{d/(d-1)}/2 and n^{d/(d-1)} for n = " + std::to_string(n) +
              ", d = " + std::to_string(d));
}

LiftReport lift_affine(std::uint64_t n, std::size_t d, std::size_t k, std::uint64_t seed, const Budget& budget) {
  if (n < 4) throw DomainError("the affine lift needs n >= 4");
  if (k > d) throw DomainError("the affine lift needs k <= d");
  LiftReport r;
  r.n = n;
  r.d = d;
  r.k = k;
  r.seed = seed;
  r.p = bertrand_prime(n / 2, n);

  // A map from F_p^{d-k} has flats of dimension d - (d - k) = k to evade.
  Construction c = construct_evasive(r.p, d, d - k, seed, budget);
  r.source = c.set;
  r.source_size = c.set.size();
  r.field_certificate = c.certificate;
  if (c.certificate_skipped) r.certificate_skipped = "field certificate: " + *c.certificate_skipped;

  std::vector<IntVector> pts;
  pts.reserve(c.set.size());
  for (const auto& x : c.set.points()) {
    IntVector y(x);
    for (auto& v : y) ++v;
    pts.push_back(std::move(y));
  }
  r.lifted = PointSet::from_points(Domain::integers(), d, std::move(pts));
  add_integer_certificate(r, Flavor::affine, budget);
  return r;
}

LiftReport lift_linear(std::uint64_t n, std::size_t d, std::size_t k, std::uint64_t seed, const Budget& budget) {
  if (n < 2) throw DomainError("the linear lift needs n >= 2");
  if (k >= d) throw DomainError("the linear lift needs k < d");
  LiftReport r;
  r.n = n;
  r.d = d;
  r.k = k;
  r.seed = seed;
  r.p = projective_prime(n, d);
  const PrimeField field(r.p);

  Construction c = construct_evasive(r.p, d, d - k, seed, budget);
  r.source = c.set;
  r.source_size = c.set.size();
  r.field_certificate = c.certificate;
  if (c.certificate_skipped) r.certificate_skipped = "field certificate: " + *c.certificate_skipped;

  std::map<std::vector<int>, std::vector<IntVector>> buckets;
  for (const auto& fx : c.set.field_points()) {
    if (std::all_of(fx.begin(), fx.end(), [](Residue v) { return v == 0; })) continue;
    IntVector y = short_representative(field, fx, n);
    std::vector<int> sign(d);
    for (std::size_t i = 0; i < d; ++i) sign[i] = (y[i] > 0) - (y[i] < 0);
    buckets[std::move(sign)].push_back(std::move(y));
  }
  // std::map iterates patterns lexicographically, so strict > keeps the first on ties.
  const std::vector<IntVector>* best = nullptr;
  for (const auto& [sign, members] : buckets) {
    if (!best || members.size() > best->size()) {
      best = &members;
      r.sign_pattern = sign;
    }
  }
  std::vector<IntVector> pts;
  if (best) {
    for (IntVector y : *best) {
      for (auto& v : y) v = v == 0 ? 1 : (v < 0 ? -v : v);
      pts.push_back(std::move(y));
    }
  }
  r.lifted = PointSet::from_points(Domain::integers(), d, std::move(pts));

  const BigInt num = big_pow(r.p, d - k);
  const BigInt den = big_pow(3, d);
  r.bucket_bound = static_cast<std::uint64_t>((num + den - 1) / den);
  r.grid_bound = std::pow(static_cast<double>(n), static_cast<double>(d * (d - k)) / static_cast<double>(d - 1)) /
                 std::pow(6.0, static_cast<double>(d));
  add_integer_certificate(r, Flavor::linear, budget);
  return r;
}

ProjectiveWitness covering_witness(std::uint64_t n, std::size_t d, std::uint64_t max_points) {
  return covering_witness_with_prime(projective_prime(n, d), d, n, max_points);
}

ProjectiveWitness covering_witness_with_prime(std::uint64_t p, std::size_t d, std::uint64_t n,
                                              std::uint64_t max_points) {
  const PrimeField field(p);
  if (d == 0) throw DomainError("covering witness needs d >= 1");
  const BigInt count = (big_pow(p, d) - 1) / (p - 1);
  if (count > max_points) {
    throw BudgetExceeded("projective classes of F_" + std::to_string(p) + "^" + std::to_string(d),
                         count > BigInt(std::numeric_limits<std::uint64_t>::max())
                             ? std::numeric_limits<std::uint64_t>::max()
                             : static_cast<std::uint64_t>(count),
                         max_points);
  }
  ProjectiveWitness w{p, d, n, {}, {}};
  // Classes with leading 1 at position `lead`, free tail after it; lead
  // descending gives lexicographic order.
  for (std::size_t lead = d; lead-- > 0;) {
    FieldVector x(d, 0);
    x[lead] = 1;
    while (true) {
      w.classes.push_back(x);
      w.representatives.push_back(short_representative(field, x, n));
      std::size_t i = d;
      bool wrapped = true;
      while (i > lead + 1) {
        --i;
        if (++x[i] < p) {
          wrapped = false;
          break;
        }
        x[i] = 0;
      }
      if (wrapped) break;
    }
  }
  return w;
}

CoveringBound covering_bound_certificate(const ProjectiveWitness& w, std::size_t k, std::uint64_t max_flats) {
  if (k == 0 || k > w.d) throw DomainError("covering bound needs 1 <= k <= d");
  const PrimeField field(w.p);
  std::vector<FieldVector> reps;
  reps.reserve(w.representatives.size());
  for (const auto& y : w.representatives) reps.push_back(field.reduce(y));

  CoveringBound b;
  b.k = k;
  b.per_subspace_limit = static_cast<std::uint64_t>((big_pow(w.p, k) - 1) / (w.p - 1));
  for_each_linear(field, w.d, k, max_flats, [&](const LinearSubspace& sub) {
    std::uint64_t inside = 0;
    for (const auto& x : reps) inside += sub.contains(x) ? 1 : 0;
    b.per_subspace_max = std::max(b.per_subspace_max, inside);
    ++b.subspaces;
    return true;
  });
  const std::uint64_t total = reps.size();
  b.lower_bound = b.per_subspace_max == 0 ? 0 : (total + b.per_subspace_max - 1) / b.per_subspace_max;
  return b;
}

}  // namespace evasive
