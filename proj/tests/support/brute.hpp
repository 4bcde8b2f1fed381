#pragma once

// Brute-force oracles for tests. They share no code with the library beyond
// the PointSet container: spans are materialised as explicit sets of
// vectors, and real collinearity uses 2x2 minors.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "evasive/point_set.hpp"
#include "evasive/rng.hpp"

namespace evasive::testing {

using Vec = std::vector<std::int64_t>;

/// Every linear combination of `gens` mod p.
inline std::set<Vec> brute_span(const std::vector<Vec>& gens, std::int64_t p, std::size_t d) {
  std::set<Vec> span{Vec(d, 0)};
  for (const auto& g : gens) {
    std::set<Vec> next;
    for (const auto& s : span) {
      for (std::int64_t c = 0; c < p; ++c) {
        Vec y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = (s[i] + c * g[i]) % p;
        next.insert(std::move(y));
      }
    }
    span = std::move(next);
  }
  return span;
}

/// Dimension from the size of the materialised span.
inline std::size_t brute_dim(const std::vector<Vec>& gens, std::int64_t p, std::size_t d) {
  std::size_t size = brute_span(gens, p, d).size();
  std::size_t dim = 0;
  while (size > 1) {
    size /= static_cast<std::size_t>(p);
    ++dim;
  }
  return dim;
}

inline std::size_t brute_affine_dim(const std::vector<Vec>& pts, std::int64_t p, std::size_t d) {
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = ((pts[i][j] - pts[0][j]) % p + p) % p;
    diffs.push_back(v);
  }
  return brute_dim(diffs, p, d);
}

/// Largest subset of a field point set with span dimension <= k, over all
/// 2^|S| subsets.
inline std::size_t brute_max_intersection(const PointSet& s, std::size_t k, bool affine) {
  const auto p = static_cast<std::int64_t>(s.domain().modulus);
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) pts.push_back(s[i]);
    }
    const std::size_t dim = affine ? brute_affine_dim(pts, p, s.dim()) : brute_dim(pts, p, s.dim());
    if (dim <= k) best = size;
  }
  return best;
}

/// u and v are parallel over R: every 2x2 minor vanishes.
inline bool parallel(const Vec& u, const Vec& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (static_cast<__int128>(u[i]) * v[j] != static_cast<__int128>(u[j]) * v[i]) return false;
    }
  }
  return true;
}

/// Most points of an integer set on one real line, from all point pairs.
inline std::size_t brute_max_collinear(const PointSet& s) {
  const std::size_t n = s.size();
  if (n <= 2) return n;
  std::size_t best = 2;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      Vec dir(s.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) dir[i] = s[b][i] - s[a][i];
      std::size_t count = 0;
      for (std::size_t c = 0; c < n; ++c) {
        Vec w(s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i) w[i] = s[c][i] - s[a][i];
        count += parallel(dir, w) ? 1 : 0;
      }
      best = std::max(best, count);
    }
  }
  return best;
}

/// Most points of an integer set on one real line through 0 (the origin
/// itself counts when present).
inline std::size_t brute_max_on_origin_line(const PointSet& s) {
  std::size_t best = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const bool zero = std::all_of(s[a].begin(), s[a].end(), [](std::int64_t v) { return v == 0; });
    if (zero) {
      best = std::max<std::size_t>(best, 1);
      continue;
    }
    std::size_t count = 0;
    for (std::size_t c = 0; c < s.size(); ++c) count += parallel(s[a], s[c]) ? 1 : 0;
    best = std::max(best, count);
  }
  return best;
}

/// `size` distinct random points of F_p^d (size <= p^d).
inline PointSet random_field_set(Rng& rng, std::uint64_t p, std::size_t d, std::size_t size) {
  std::set<Vec> pts;
  while (pts.size() < size) {
    Vec x(d);
    for (auto& v : x) v = static_cast<std::int64_t>(rng.uniform(p));
    pts.insert(std::move(x));
  }
  return PointSet::from_points(Domain::prime_field(p), d, {pts.begin(), pts.end()});
}

/// `size` distinct random points of [-range, range]^d.
inline PointSet random_integer_set(Rng& rng, std::int64_t range, std::size_t d, std::size_t size) {
  std::set<Vec> pts;
  while (pts.size() < size) {
    Vec x(d);
    for (auto& v : x) v = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(2 * range + 1))) - range;
    pts.insert(std::move(x));
  }
  return PointSet::from_points(Domain::integers(), d, {pts.begin(), pts.end()});
}

/// All of F_p^d.
inline PointSet full_space(std::uint64_t p, std::size_t d) {
  std::vector<Vec> pts;
  Vec x(d, 0);
  while (true) {
    pts.push_back(x);
    std::size_t i = d;
    while (i > 0 && ++x[i - 1] == static_cast<std::int64_t>(p)) x[--i] = 0;
    if (i == 0) break;
  }
  return PointSet::from_points(Domain::prime_field(p), d, std::move(pts));
}

}  // namespace evasive::testing
