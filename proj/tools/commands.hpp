#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evasive/budget.hpp"

namespace evasive::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Exit codes.
inline constexpr int kExitPassed = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// A report plus the data files it produced, keyed by file suffix
/// (".points", ".poly", ...). Contents are fully determined by the
/// arguments and seed.
struct CommandResult {
  Json report;
  std::map<std::string, std::string> files;
  bool passed = true;
};

/// Budget defaults: EVASIVE_BUDGET if set to a positive integer, else 10^7.
Budget default_budget();

struct ConstructArgs {
  std::uint64_t p = 7;
  std::size_t d = 3;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  /// Seeds tried (seed, seed+1, ...); the best is kept.
  std::size_t seeds = 1;
};
CommandResult cmd_construct(const ConstructArgs& a, const Budget& budget);

struct VerifyArgs {
  std::string input;
  std::size_t k = 1;
  std::string flavor = "affine";
  std::string oracle = "subset";
  /// When set, also decide (k, c)-evasiveness.
  std::optional<std::size_t> c;
};
CommandResult cmd_verify(const VerifyArgs& a, const Budget& budget);

struct LiftArgs {
  std::string mode = "affine";
  std::uint64_t n = 20;
  std::size_t d = 3;
  std::size_t k = 1;
  std::uint64_t seed = 1;
};
CommandResult cmd_lift(const LiftArgs& a, const Budget& budget);

struct CoverArgs {
  std::uint64_t n = 3;
  std::size_t d = 3;
  std::size_t k = 2;
  std::optional<std::uint64_t> prime;
};
CommandResult cmd_cover(const CoverArgs& a, const Budget& budget);

struct IncidenceArgs {
  std::size_t d = 4;
  std::uint64_t n = 100;
  std::uint64_t m = 1000;
  std::uint64_t seed = 1;
  bool check_free = true;
};
CommandResult cmd_incidence(const IncidenceArgs& a, const Budget& budget);

struct WitnessArgs {
  std::string mode = "box";
  std::string input;
  /// box: side sizes.
  std::vector<std::size_t> sizes;
  bool exhaustive = false;
  std::size_t k = 1;
  double eps = 0.125;
  std::size_t c = 0;
};
CommandResult cmd_witness(const WitnessArgs& a, const Budget& budget);

struct MomentsArgs {
  std::uint64_t p = 53;
  std::size_t d = 3;
  std::size_t k = 1;
  unsigned s = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<unsigned> degree;
};
CommandResult cmd_moments(const MomentsArgs& a, const Budget& budget);

/// Throws evasive::Error when the file cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace evasive::cli
