#pragma once

#include "ordmatch/model.hpp"

namespace ordmatch {

struct OptResult {
  Matching matching;  // complete, feasible for the instance
  double value;       // social_welfare(matching, V)
};

/// Maximum-welfare b-matching.
///
/// Each agent is expanded into b_i slots and the slot/item assignment problem
/// is solved with the Hungarian method. Items nobody values and agents who
/// value nothing are pruned first, so sparse profiles solve in time
/// proportional to their support.
OptResult optimal_matching(const Instance& inst, const ValuationProfile& values);

inline constexpr std::size_t kBruteForceMaxItems = 8;

/// Exhaustive maximum over all complete b-matchings. Requires m <= 8.
double brute_force_opt(const Instance& inst, const ValuationProfile& values);

}  // namespace ordmatch
