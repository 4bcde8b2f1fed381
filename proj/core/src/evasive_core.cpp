#include "evasive/evasive_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "evasive/error.hpp"
#include "evasive/integer_linalg.hpp"

namespace evasive {

std::string_view to_string(Flavor f) { return f == Flavor::affine ? "affine" : "linear"; }

std::string_view to_string(Oracle o) {
  return o == Oracle::flat_enumeration ? "enum" : "subset";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "affine") return Flavor::affine;
  if (s == "linear") return Flavor::linear;
  throw DomainError("unknown flavor '" + std::string(s) + "'");
}

EvasivenessCertificate max_intersection_enum(const PointSet& s, std::size_t k, Flavor flavor,
                                             std::uint64_t max_flats) {
  EvasivenessCertificate cert;
  cert.k = k;
  cert.flavor = flavor;
  cert.oracle = Oracle::flat_enumeration;
  if (s.empty()) return cert;
  if (!s.domain().is_field()) {
    throw DomainError("flat enumeration needs a prime-field point set; use the subset oracle");
  }
  if (k > s.dim()) throw DomainError("flat dimension exceeds ambient dimension");

  const PrimeField field = s.field();
  const auto pts = s.field_points();
  const FieldVector zero(s.dim(), 0);
  const std::uint64_t universe =
      flavor == Flavor::affine ? static_cast<std::uint64_t>(std::min<BigInt>(
                                     affine_flat_count(s.dim(), k, field.modulus()), BigInt(max_flats) + 1))
                               : static_cast<std::uint64_t>(std::min<BigInt>(
                                     gaussian_binomial(s.dim(), k, field.modulus()), BigInt(max_flats) + 1));
  if (universe > max_flats) {
    throw BudgetExceeded("flat enumeration over F_" + std::to_string(field.modulus()) + "^" +
                             std::to_string(s.dim()),
                         universe, max_flats);
  }
  cert.work = universe;

  // Each direction is scanned once; its cosets are the buckets of the
  // coset representative, visited in the same order as for_each_affine.
  for_each_linear(field, s.dim(), k, max_flats, [&](const LinearSubspace& dir) {
    std::map<FieldVector, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      FieldVector rep = dir.coset_representative(pts[i]);
      if (flavor == Flavor::linear && rep != zero) continue;
      buckets[std::move(rep)].push_back(i);
    }
    for (auto& [rep, members] : buckets) {
      if (members.size() > cert.c_max) {
        cert.c_max = members.size();
        cert.flat.emplace(dir, rep);
        cert.subset = members;
      }
    }
    return true;
  });
  if (!cert.flat) {
    // Only reachable for the zero subspace (k = 0, linear) when 0 is not in S.
    SubspaceEnumerator it(field, s.dim(), k);
    cert.flat.emplace(*it.next(), zero);
  }
  return cert;
}

namespace {

struct SearchResult {
  std::vector<std::size_t> best;
  std::uint64_t nodes = 0;
};

/// Depth-first growth of independent tuples. `vec(j)` is point j relative to
/// the current root (or the point itself for linear spans).
template <class Tracker, class VecFn>
class SpanSearch {
 public:
  SpanSearch(std::size_t n, std::size_t k, std::uint64_t budget, VecFn vec, SearchResult& out)
      : n_(n), k_(k), budget_(budget), vec_(std::move(vec)), out_(out) {}

  void run(Tracker tracker, std::ptrdiff_t last, std::size_t depth) {
    if (++out_.nodes > budget_) {
      throw BudgetExceeded("subset search reached subsets of " + std::to_string(depth) +
                               " generators (largest closed subset so far " +
                               std::to_string(out_.best.size()) + ")",
                           out_.nodes, budget_);
    }
    if (tracker.rank() >= k_) {
      close(tracker);
      return;
    }
    bool extended = false;
    for (std::size_t j = static_cast<std::size_t>(last + 1); j < n_; ++j) {
      const auto& v = vec_(j);
      if (tracker.contains(v)) continue;
      Tracker child = tracker;
      child.insert(v);
      run(std::move(child), static_cast<std::ptrdiff_t>(j), depth + 1);
      extended = true;
    }
    if (!extended) close(tracker);
  }

 private:
  void close(const Tracker& tracker) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < n_; ++j) {
      if (tracker.contains(vec_(j))) members.push_back(j);
    }
    if (members.size() > out_.best.size()) out_.best = std::move(members);
  }

  std::size_t n_;
  std::size_t k_;
  std::uint64_t budget_;
  VecFn vec_;
  SearchResult& out_;
};

template <class Tracker, class Point, class Diff>
SearchResult search_subsets(const std::vector<Point>& pts, std::size_t dim, std::size_t k,
                            Flavor flavor, std::uint64_t budget, const Tracker& empty,
                            const Diff& diff) {
  SearchResult result;
  const std::size_t n = pts.size();
  if (flavor == Flavor::linear) {
    auto vec = [&](std::size_t j) -> const Point& { return pts[j]; };
    SpanSearch<Tracker, decltype(vec)> search(n, k, budget, vec, result);
    search.run(empty, -1, 0);
    return result;
  }
  std::vector<Point> rel(n, Point(dim));
  for (std::size_t root = 0; root < n; ++root) {
    for (std::size_t j = 0; j < n; ++j) rel[j] = diff(pts[j], pts[root]);
    auto vec = [&](std::size_t j) -> const Point& { return rel[j]; };
    SpanSearch<Tracker, decltype(vec)> search(n, k, budget, vec, result);
    search.run(empty, static_cast<std::ptrdiff_t>(root), 1);
  }
  return result;
}

SearchResult search_integer(const PointSet& s, std::size_t k, Flavor flavor, std::uint64_t budget) {
  auto diff = [](const IntVector& a, const IntVector& b) {
    IntVector v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (__builtin_sub_overflow(a[i], b[i], &v[i])) throw std::overflow_error("coordinate difference");
    }
    return v;
  };
  try {
    return search_subsets(s.points(), s.dim(), k, flavor, budget, IntegerSpan<std::int64_t>(s.dim()),
                          diff);
  } catch (const std::overflow_error&) {
    // Entries outgrew 64 bits; redo the whole search exactly.
  }
  return search_subsets(s.points(), s.dim(), k, flavor, budget, IntegerSpan<BigInt>(s.dim()), diff);
}

SearchResult search_field(const PointSet& s, std::size_t k, Flavor flavor, std::uint64_t budget) {
  const PrimeField field = s.field();
  auto diff = [field](const FieldVector& a, const FieldVector& b) {
    FieldVector v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = field.sub(a[i], b[i]);
    return v;
  };
  return search_subsets(s.field_points(), s.dim(), k, flavor, budget, FieldSpan(field, s.dim()),
                        diff);
}

}  // namespace

EvasivenessCertificate max_intersection_subsets(const PointSet& s, std::size_t k, Flavor flavor,
                                                std::uint64_t max_subsets) {
  EvasivenessCertificate cert;
  cert.k = k;
  cert.flavor = flavor;
  cert.oracle = Oracle::subset_search;
  if (s.empty()) return cert;
  if (k >= s.dim()) {
    cert.subset.resize(s.size());
    std::iota(cert.subset.begin(), cert.subset.end(), std::size_t{0});
    cert.c_max = s.size();
    return cert;
  }
  SearchResult r = s.domain().is_field() ? search_field(s, k, flavor, max_subsets)
                                         : search_integer(s, k, flavor, max_subsets);
  cert.subset = std::move(r.best);
  cert.c_max = cert.subset.size();
  cert.work = r.nodes;
  return cert;
}

EvasivenessVerdict is_evasive(const PointSet& s, std::size_t k, std::size_t c, Flavor flavor,
                              Oracle oracle, const Budget& budget) {
  EvasivenessVerdict v;
  v.certificate = oracle == Oracle::flat_enumeration
                      ? max_intersection_enum(s, k, flavor, budget.max_flats)
                      : max_intersection_subsets(s, k, flavor, budget.max_subsets);
  v.evasive = v.certificate.c_max <= c;
  if (!v.evasive) {
    v.witness.assign(v.certificate.subset.begin(),
                     v.certificate.subset.begin() + static_cast<std::ptrdiff_t>(c + 1));
  }
  return v;
}

std::size_t subset_span_dim(const PointSet& s, const std::vector<std::size_t>& indices,
                            Flavor flavor) {
  if (indices.empty()) {
    if (flavor == Flavor::affine) throw DomainError("affine dimension of an empty subset");
    return 0;
  }
  for (auto i : indices) {
    if (i >= s.size()) throw DomainError("subset index out of range");
  }
  if (s.domain().is_field()) {
    const PrimeField field = s.field();
    std::vector<FieldVector> pts;
    for (auto i : indices) pts.emplace_back(s[i].begin(), s[i].end());
    return flavor == Flavor::affine ? affine_dim(field, pts) : linear_dim(field, pts);
  }
  std::vector<IntVector> pts;
  for (auto i : indices) pts.push_back(s[i]);
  return flavor == Flavor::affine ? integer_affine_dim(pts) : integer_linear_dim(pts, s.dim());
}

bool verify_certificate(const PointSet& s, const EvasivenessCertificate& cert) {
  if (cert.subset.size() != cert.c_max) return false;
  std::vector<std::size_t> sorted = cert.subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (cert.c_max == 0) return true;
  if (subset_span_dim(s, cert.subset, cert.flavor) > cert.k) return false;
  if (cert.flat) {
    if (cert.flat->dim() != cert.k) return false;
    if (cert.flavor == Flavor::linear &&
        std::any_of(cert.flat->base().begin(), cert.flat->base().end(), [](Residue x) { return x != 0; })) {
      return false;
    }
    std::vector<std::size_t> inside;
    const auto pts = s.field_points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (contains(*cert.flat, pts[i])) inside.push_back(i);
    }
    if (inside != sorted) return false;
  }
  return true;
}

}  // namespace evasive
