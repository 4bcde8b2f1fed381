#pragma once

#include <cstdint>

namespace evasive {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Work caps for the exhaustive routines. Units: flats visited, search nodes
/// expanded, Monte Carlo trials.
struct Budget {
  std::uint64_t max_flats = kDefaultBudget;
  std::uint64_t max_subsets = kDefaultBudget;
  std::uint64_t max_trials = kDefaultBudget;
};

}  // namespace evasive
