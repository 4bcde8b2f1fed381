#include "evasive/incidence.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "evasive/error.hpp"
#include "evasive/integer_linalg.hpp"
#include "evasive/rng.hpp"

namespace evasive {

namespace {

BigInt dot(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  BigInt s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += BigInt(x[i]) * y[i];
  return s;
}

std::int64_t parse_i64(std::string_view token, std::size_t line_no) {
  std::int64_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (first == last || ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "invalid integer '" + std::string(token) + "'");
  }
  return v;
}

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

}  // namespace

bool Hyperplane::contains(std::span<const std::int64_t> x) const {
  if (x.size() != normal.size()) throw DomainError("point and hyperplane dimensions differ");
  return dot(x, normal) == offset;
}

std::string format_hyperplanes(std::size_t d, const std::vector<Hyperplane>& hs) {
  std::ostringstream os;
  os << "hyperplanes d=" << d << '\n';
  for (const auto& h : hs) {
    for (auto y : h.normal) os << y << ' ';
    os << ": " << h.offset << '\n';
  }
  return os.str();
}

std::vector<Hyperplane> parse_hyperplanes(std::string_view text, std::size_t* dim) {
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> d;
  std::vector<Hyperplane> out;
  while (std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto b = raw.find_first_not_of(" \t");
    if (b == std::string::npos || raw[b] == '#') continue;
    if (!d) {
      for (const auto& [key, value] : parse_header_fields(raw, "hyperplanes", line_no)) {
        if (key != "d") throw ParseError(line_no, "unknown header field '" + key + "'");
        d = static_cast<std::size_t>(parse_i64(value, line_no));
      }
      if (!d) throw ParseError(line_no, "header needs d=");
      continue;
    }
    const auto colon = raw.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'y1 ... yd : t'");
    std::istringstream lhs(raw.substr(0, colon));
    std::istringstream rhs(raw.substr(colon + 1));
    Hyperplane h;
    std::string tok;
    while (lhs >> tok) h.normal.push_back(parse_i64(tok, line_no));
    if (h.normal.size() != *d) {
      throw ParseError(line_no, "expected " + std::to_string(*d) + " normal coordinates, found " +
                                    std::to_string(h.normal.size()));
    }
    if (std::all_of(h.normal.begin(), h.normal.end(), [](std::int64_t v) { return v == 0; })) {
      throw ParseError(line_no, "zero normal");
    }
    if (!(rhs >> tok)) throw ParseError(line_no, "missing offset");
    h.offset = parse_i64(tok, line_no);
    if (rhs >> tok) throw ParseError(line_no, "trailing text after offset");
    out.push_back(std::move(h));
  }
  if (!d) throw ParseError(line_no + 1, "missing hyperplanes header");
  if (dim) *dim = *d;
  return out;
}

std::uint64_t ceil_root_ratio(const BigInt& num, const BigInt& den, std::size_t e) {
  if (e == 0 || den <= 0) throw DomainError("ceil_root_ratio needs e >= 1 and den > 0");
  auto ok = [&](std::uint64_t x) {
    return boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(e)) * den >= num;
  };
  std::uint64_t lo = 1, hi = 1;
  while (!ok(hi)) hi *= 2;
  if (hi == 1) return 1;
  lo = hi / 2;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

IncidenceConfig build_config(std::size_t d, std::uint64_t n, std::uint64_t m, std::uint64_t seed,
                             const Budget& budget) {
  if (d < 3) throw DomainError("incidence configurations need d >= 3");
  if (n == 0 || m == 0) throw DomainError("n and m must be positive");
  IncidenceConfig cfg;
  cfg.d = d;
  cfg.k = d / 2 - 1;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = seed;
  cfg.normal_seed = derive_seed(seed, "normals");
  cfg.n0 = ceil_root_ratio(BigInt(n), BigInt(1), d - cfg.k);
  const std::size_t e = d * cfg.k + 2 * d - 1;
  cfg.m0 = ceil_root_ratio(boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(d - 1)),
                           boost::multiprecision::pow(BigInt(cfg.n0), static_cast<unsigned>(d - 1)), e);

  cfg.point_lift = lift_affine(cfg.n0, d, cfg.k, seed, budget);
  cfg.normal_lift = lift_linear(cfg.m0, d, d - cfg.k - 1, cfg.normal_seed, budget);
  cfg.points = cfg.point_lift.lifted;
  cfg.normals = cfg.normal_lift.lifted;
  if (cfg.point_lift.integer_certificate) cfg.c1 = cfg.point_lift.integer_certificate->c_max;
  if (cfg.normal_lift.integer_certificate) cfg.c2 = cfg.normal_lift.integer_certificate->c_max;

  std::set<Hyperplane> hs;
  for (const auto& y : cfg.normals.points()) {
    for (const auto& x : cfg.points.points()) {
      const BigInt t = dot(x, y);
      hs.insert({y, static_cast<std::int64_t>(t)});
    }
  }
  cfg.hyperplanes.assign(hs.begin(), hs.end());
  return cfg;
}

std::uint64_t count_incidences(const PointSet& points, const std::vector<Hyperplane>& hyperplanes) {
  std::uint64_t total = 0;
  for (const auto& h : hyperplanes) {
    for (const auto& x : points.points()) total += h.contains(x) ? 1 : 0;
  }
  return total;
}

std::uint64_t count_incidences(const IncidenceConfig& cfg) { return count_incidences(cfg.points, cfg.hyperplanes); }

BipartiteCheck check_bipartite_free(const PointSet& points, const std::vector<Hyperplane>& hyperplanes,
                                    std::size_t a, std::size_t b, std::uint64_t max_nodes) {
  if (a == 0 || b == 0) throw DomainError("K_{a,b} needs a, b >= 1");
  BipartiteCheck out;
  const std::size_t words = (points.size() + 63) / 64;
  std::vector<Bits> on(hyperplanes.size(), Bits(words, 0));
  std::vector<std::size_t> candidates;
  for (std::size_t h = 0; h < hyperplanes.size(); ++h) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (hyperplanes[h].contains(points[i])) on[h][i / 64] |= std::uint64_t{1} << (i % 64);
    }
    if (popcount(on[h]) >= a) candidates.push_back(h);
  }

  std::vector<std::size_t> chosen;
  const std::function<bool(std::size_t, const Bits&)> grow = [&](std::size_t start, const Bits& common) -> bool {
    if (chosen.size() == b) {
      out.free = false;
      out.witness_hyperplanes = chosen;
      for (std::size_t i = 0; i < points.size() && out.witness_points.size() < a; ++i) {
        if (common[i / 64] >> (i % 64) & 1) out.witness_points.push_back(i);
      }
      return true;
    }
    for (std::size_t j = start; j + (b - chosen.size()) <= candidates.size(); ++j) {
      if (++out.nodes > max_nodes) {
        throw BudgetExceeded("K_{" + std::to_string(a) + "," + std::to_string(b) + "} search at depth " +
                                 std::to_string(chosen.size() + 1),
                             out.nodes, max_nodes);
      }
      const std::size_t h = candidates[j];
      Bits next(words);
      for (std::size_t w = 0; w < words; ++w) next[w] = common[w] & on[h][w];
      if (popcount(next) < a) continue;
      chosen.push_back(h);
      if (grow(j + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  Bits all(words, ~std::uint64_t{0});
  if (words) all.back() = points.size() % 64 ? (std::uint64_t{1} << (points.size() % 64)) - 1 : ~std::uint64_t{0};
  grow(0, all);
  return out;
}

BipartiteCheck check_bipartite_free(const IncidenceConfig& cfg, std::size_t a, std::size_t b,
                                    std::uint64_t max_nodes) {
  return check_bipartite_free(cfg.points, cfg.hyperplanes, a, b, max_nodes);
}

double incidence_target_exponent(std::size_t d) {
  const double x = static_cast<double>(d);
  if (d % 2 == 1) return 1.0 - (2 * x + 3) / ((x + 2) * (x + 3));
  return 1.0 - (2 * x * x + x - 2) / ((x + 2) * (x * x + 2 * x - 2));
}

ExponentReport incidence_exponent_report(const IncidenceConfig& cfg) {
  ExponentReport r;
  r.incidences = count_incidences(cfg);
  r.points = cfg.points.size();
  r.hyperplanes = cfg.hyperplanes.size();
  r.target_exponent = incidence_target_exponent(cfg.d);
  const double mn = static_cast<double>(r.points) * static_cast<double>(r.hyperplanes);
  r.realized_exponent = mn > 1.0 && r.incidences > 0 ? std::log(static_cast<double>(r.incidences)) / std::log(mn) : 0.0;
  r.hyperplane_budget = cfg.d * cfg.m0 * cfg.n0 * cfg.normals.size();
  r.point_slack = static_cast<double>(r.points) / static_cast<double>(cfg.n);
  r.hyperplane_slack = static_cast<double>(r.hyperplanes) / static_cast<double>(cfg.m);
  return r;
}

}  // namespace evasive
