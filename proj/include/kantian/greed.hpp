#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kantian/game.hpp"

namespace kantian {

// Per-player self-regard parameters. lambda = infinity is the fully Kantian
// agent (greed 0); lambda = 1 is maximally greedy (greed infinity).
struct GreedParams {
  std::vector<double> lambda;

  static double greed_index(double lambda) {
    if (lambda == 1.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(lambda)) return 0.0;
    return 1.0 / (lambda - 1.0);
  }

  void validate(int num_players) const {
    if (static_cast<int>(lambda.size()) != num_players)
      throw domain_error("greed parameters need one lambda per player");
    for (double l : lambda)
      if (!(l >= 1.0)) throw domain_error("lambda must lie in [1, infinity]");
  }
};

struct TransformedGame {
  Game game;                        // perceived utilities
  int kantian_action = 0;           // designated reference action
  std::vector<double> kantian_payoff;  // per player, at the all-Kantian profile
  std::vector<bool> tempted;           // per player; see greed_transform
};

namespace greed_detail {

// Lexicographically first diagonal profile that is optimal for every player.
inline int designated_kantian_action(const Game& game) {
  const int n = game.num_players();
  const int m = game.num_actions(0);
  std::vector<Utility> diag(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    PureProfile p;
    p.choices.assign(static_cast<std::size_t>(n), a);
    diag[static_cast<std::size_t>(a)] = game.utility(p);
  }
  for (int a = 0; a < m; ++a) {
    bool optimal = true;
    for (int i = 0; i < n && optimal; ++i)
      for (int r = 0; r < m; ++r)
        if (diag[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] <
            diag[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]) {
          optimal = false;
          break;
        }
    if (optimal) return a;
  }
  throw domain_error("game has no pure Kantian action (no common diagonal optimum)");
}

}  // namespace greed_detail

// Perceived-utility transform for agents of bounded greed. With x* the
// designated Kantian action and pi_i its payoff when everyone plays x*:
//
//   * an agent with no deviation cell paying more than lambda_i * pi_i keeps
//     the Kantian evaluation: its x* cells are worth pi_i regardless of the
//     others, every other action is worth 0;
//   * an agent that does have such a cell ("tempted") stops universalizing
//     and perceives its material payoffs everywhere.
//
// The second clause is what lets two sufficiently greedy agents settle on
// the materially self-interested outcome: with the Kantian evaluation still
// in place, x* would remain worth pi_i > 0 against any opponent play and no
// profile of greedy agents could be stable.
inline TransformedGame greed_transform(const Game& game, const GreedParams& params) {
  kantian::detail::require_identical_actions(game, "greed_transform");
  const int n = game.num_players();
  params.validate(n);
  const int star = greed_detail::designated_kantian_action(game);

  PureProfile all_star;
  all_star.choices.assign(static_cast<std::size_t>(n), star);
  const Utility kantian_payoff = game.utility(all_star);

  std::vector<bool> tempted(static_cast<std::size_t>(n), false);
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile profile = game.profile_at(idx);
    for (int i = 0; i < n; ++i) {
      if (profile.choices[static_cast<std::size_t>(i)] == star) continue;
      const double threshold =
          params.lambda[static_cast<std::size_t>(i)] * kantian_payoff[static_cast<std::size_t>(i)];
      if (game.payoff(idx, i) > threshold) tempted[static_cast<std::size_t>(i)] = true;
    }
  }

  std::vector<double> payoffs(game.num_profiles() * static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile profile = game.profile_at(idx);
    for (int i = 0; i < n; ++i) {
      double value;
      if (tempted[static_cast<std::size_t>(i)]) {
        value = game.payoff(idx, i);
      } else if (profile.choices[static_cast<std::size_t>(i)] == star) {
        value = kantian_payoff[static_cast<std::size_t>(i)];
      } else {
        value = 0.0;
      }
      payoffs[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = value;
    }
  }

  std::vector<std::vector<std::string>> actions;
  for (int p = 0; p < n; ++p) actions.push_back(game.actions(p));
  TransformedGame out{Game(std::move(actions), std::move(payoffs)), star, kantian_payoff,
                      std::move(tempted)};
  return out;
}

// Moral-blend utilities u_i(x, y) = (1-kappa) pi_i(x, y) + kappa pi_i(x, x):
// each player mixes its material payoff with the payoff of its own action
// universalized. kappa = 0 is the original game, kappa = 1 evaluates every
// cell by the player's own diagonal.
inline TransformedGame homo_moralis_transform(const Game& game, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw domain_error("kappa must lie in [0, 1]");
  const StructureReport structure = classify(game);
  if (game.num_players() != 2 || !structure.symmetric_two_player)
    throw domain_error("homo_moralis_transform needs a two-player symmetric game");

  const int m = game.num_actions(0);
  std::vector<double> payoffs(game.num_profiles() * 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const std::size_t idx = game.index_of(PureProfile{{i, j}});
      const double diag1 = game.utility(PureProfile{{i, i}})[0];
      const double diag2 = game.utility(PureProfile{{j, j}})[1];
      payoffs[idx * 2] = (1.0 - kappa) * game.payoff(idx, 0) + kappa * diag1;
      payoffs[idx * 2 + 1] = (1.0 - kappa) * game.payoff(idx, 1) + kappa * diag2;
    }

  TransformedGame out{Game({game.actions(0), game.actions(1)}, std::move(payoffs)),
                      greed_detail::designated_kantian_action(game),
                      {},
                      std::vector<bool>(2, false)};
  PureProfile all_star;
  all_star.choices.assign(2, out.kantian_action);
  out.kantian_payoff = game.utility(all_star);
  return out;
}

// Exhaustive pure Nash enumeration: a profile survives when no player has a
// strictly improving unilateral deviation.
inline std::vector<PureProfile> pure_nash(const Game& game) {
  std::vector<PureProfile> result;
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile profile = game.profile_at(idx);
    bool stable = true;
    for (int i = 0; i < game.num_players() && stable; ++i) {
      const double current = game.payoff(idx, i);
      PureProfile deviated = profile;
      for (int alt = 0; alt < game.num_actions(i); ++alt) {
        if (alt == profile.choices[static_cast<std::size_t>(i)]) continue;
        deviated.choices[static_cast<std::size_t>(i)] = alt;
        if (game.utility(deviated)[static_cast<std::size_t>(i)] > current) {
          stable = false;
          break;
        }
      }
    }
    if (stable) result.push_back(profile);
  }
  return result;
}

}  // namespace kantian
