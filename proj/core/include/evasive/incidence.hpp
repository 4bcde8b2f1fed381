#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/lattice_lift.hpp"
#include "evasive/point_set.hpp"

namespace evasive {

/// {x : <x, normal> = offset}
struct Hyperplane {
  IntVector normal;
  std::int64_t offset = 0;

  bool contains(std::span<const std::int64_t> x) const;
  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

/// Text form: "hyperplanes d=<d>", then "y1 ... yd : t" per line.
std::string format_hyperplanes(std::size_t d, const std::vector<Hyperplane>& hs);
std::vector<Hyperplane> parse_hyperplanes(std::string_view text, std::size_t* dim = nullptr);

struct IncidenceConfig {
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t n0 = 0;
  std::uint64_t m0 = 0;
  std::uint64_t seed = 0;
  std::uint64_t normal_seed = 0;
  PointSet points;
  PointSet normals;
  /// Sorted and deduplicated.
  std::vector<Hyperplane> hyperplanes;
  /// Evasiveness of the points (affine k-flats) and the normals (linear
  /// (d-k-1)-subspaces) over the integers; empty when over budget.
  std::optional<std::size_t> c1;
  std::optional<std::size_t> c2;
  LiftReport point_lift;
  LiftReport normal_lift;
};

/// k = floor(d/2) - 1, n0 = ceil(n^{1/(d-k)}),
/// m0 = ceil((m/n0)^{(d-1)/(dk+2d-1)}); points from the affine lift at n0,
/// normals from the linear lift at m0, and every hyperplane with a normal
/// in N through at least one point. Throws DomainError for d < 3.
IncidenceConfig build_config(std::size_t d, std::uint64_t n, std::uint64_t m, std::uint64_t seed,
                             const Budget& budget = {});

/// Smallest x with x^e >= num / den (all positive).
std::uint64_t ceil_root_ratio(const BigInt& num, const BigInt& den, std::size_t e);

std::uint64_t count_incidences(const PointSet& points, const std::vector<Hyperplane>& hyperplanes);
std::uint64_t count_incidences(const IncidenceConfig& cfg);

struct BipartiteCheck {
  bool free = true;
  /// On violation: a point indices and b hyperplane indices, all incident.
  std::vector<std::size_t> witness_points;
  std::vector<std::size_t> witness_hyperplanes;
  std::uint64_t nodes = 0;
};

/// Whether no a points lie on b common hyperplanes. Searches b-subsets of
/// hyperplanes, pruned once fewer than a common points remain. Throws
/// BudgetExceeded past max_nodes.
BipartiteCheck check_bipartite_free(const PointSet& points, const std::vector<Hyperplane>& hyperplanes,
                                    std::size_t a, std::size_t b, std::uint64_t max_nodes = kDefaultBudget);
BipartiteCheck check_bipartite_free(const IncidenceConfig& cfg, std::size_t a, std::size_t b,
                                    std::uint64_t max_nodes = kDefaultBudget);

struct ExponentReport {
  std::uint64_t incidences = 0;
  std::uint64_t points = 0;
  std::uint64_t hyperplanes = 0;
  /// Lower-bound exponent of (mn) for this d.
  double target_exponent = 0.0;
  /// log I / log(|P| |H|)
  double realized_exponent = 0.0;
  /// |H| against the d m0 n0 |N| budget.
  std::uint64_t hyperplane_budget = 0;
  /// |P| / n and |H| / m, the sizing slack of the rounded parameters.
  double point_slack = 0.0;
  double hyperplane_slack = 0.0;
};

/// 1 - (2d+3)/((d+2)(d+3)) for odd d, 1 - (2d^2+d-2)/((d+2)(d^2+2d-2)) for even d.
double incidence_target_exponent(std::size_t d);
ExponentReport incidence_exponent_report(const IncidenceConfig& cfg);

}  // namespace evasive
