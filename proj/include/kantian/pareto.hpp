#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kantian/game.hpp"

namespace kantian {

// The undominated pure profiles, in lexicographic action-index order. All
// downstream tie-breaking references this order.
struct ParetoSet {
  std::vector<PureProfile> profiles;
  std::vector<Utility> payoffs;        // aligned with profiles
  std::vector<std::size_t> indices;    // flat profile indices, aligned

  std::size_t size() const { return profiles.size(); }

  bool contains(std::size_t profile_index) const {
    for (std::size_t idx : indices)
      if (idx == profile_index) return true;
    return false;
  }
};

// Pairwise strict-dominance filter over all pure profiles. Profiles with
// tied payoff vectors are all kept, so every optimal support survives for
// the LP stages. Strictly dominated profiles cannot help eliminate anything
// their dominator does not already eliminate, so they are skipped as
// comparison candidates.
inline ParetoSet pareto_optimal_profiles(const Game& game,
                                         std::size_t max_profiles = kDefaultMaxProfiles) {
  const std::size_t count = game.num_profiles();
  if (count > max_profiles)
    throw domain_error("game has " + std::to_string(count) +
                       " pure profiles, above the cap of " + std::to_string(max_profiles));

  std::vector<Utility> payoffs(count);
  for (std::size_t idx = 0; idx < count; ++idx) payoffs[idx] = game.utility_at(idx);

  std::vector<bool> dominated(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (dominated[i]) continue;
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j || dominated[j]) continue;
      if (dominates(payoffs[i], payoffs[j]) == Dominance::strict) dominated[j] = true;
    }
  }

  ParetoSet result;
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (dominated[idx]) continue;
    result.profiles.push_back(game.profile_at(idx));
    result.payoffs.push_back(payoffs[idx]);
    result.indices.push_back(idx);
  }
  return result;
}

}  // namespace kantian
