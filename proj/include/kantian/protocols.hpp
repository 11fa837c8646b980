#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kantian/game.hpp"
#include "kantian/lp.hpp"
#include "kantian/pareto.hpp"
#include "kantian/rng.hpp"

namespace kantian {

struct ProtocolRun {
  std::string protocol;  // bos_xor | anticoord_xor | choose_winner
  int n_agents = 0;
  std::uint64_t seed = 0;
  long trials = 0;
  JointDistribution exact_distribution;
  Utility exact_expected_utilities;
  std::vector<double> empirical_means;   // empty when trials == 0
  std::vector<double> standard_errors;   // empty when trials == 0
  long min_submitters = -1;              // choose_winner only
  long max_submitters = -1;
};

struct CandidateVerdict {
  bool supported_on_pareto = false;  // condition (a)
  bool undominated = false;          // condition (c)
  double improvement = 0.0;          // optimal total-utility gain of a dominating q
  std::optional<JointDistribution> witness;
  std::string note = "condition (b), common program, is not machine-checked";
};

namespace protocol_detail {

inline void require_actions(const Game& game, const std::vector<std::string>& wanted,
                            const char* who) {
  if (game.num_players() != 2)
    throw domain_error(std::string(who) + " needs a two-player game");
  for (int p = 0; p < 2; ++p)
    if (game.actions(p) != wanted)
      throw domain_error(std::string(who) + " needs action set {" + wanted[0] + "," +
                         wanted[1] + "} for both players");
}

struct Accumulator {
  std::vector<double> sum, sum_sq;

  explicit Accumulator(int agents)
      : sum(static_cast<std::size_t>(agents), 0.0),
        sum_sq(static_cast<std::size_t>(agents), 0.0) {}

  void add(const Utility& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      sum[i] += u[i];
      sum_sq[i] += u[i] * u[i];
    }
  }

  void finish(long trials, ProtocolRun& run) const {
    if (trials <= 0) return;
    const double t = static_cast<double>(trials);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const double mean = sum[i] / t;
      run.empirical_means.push_back(mean);
      const double var = trials > 1 ? (sum_sq[i] - t * mean * mean) / (t - 1.0) : 0.0;
      run.standard_errors.push_back(std::sqrt(std::max(0.0, var) / t));
    }
  }
};

}  // namespace protocol_detail

// Both agents draw a fair bit and exchange them; XOR 0 plays the first
// action for both, XOR 1 the second. One trusted sampler draws per trial and
// hands each agent the full bit vector, which is the shared-randomness model
// all three protocols use.
inline ProtocolRun run_bos_protocol(const Game& game, std::uint64_t seed, long trials) {
  protocol_detail::require_actions(game, {"B", "S"}, "bos protocol");
  ProtocolRun run{"bos_xor", 2, seed, trials, {}, {}, {}, {}};

  run.exact_distribution.support = {{PureProfile{{0, 0}}, 0.5}, {PureProfile{{1, 1}}, 0.5}};
  run.exact_distribution.validate();
  run.exact_expected_utilities = expected_utility(game, run.exact_distribution);

  SplitMix64 rng(seed);
  protocol_detail::Accumulator acc(2);
  for (long t = 0; t < trials; ++t) {
    const int b1 = rng.bit(), b2 = rng.bit();
    const int action = (b1 ^ b2) == 0 ? 0 : 1;  // 0 = B, 1 = S
    acc.add(game.utility(PureProfile{{action, action}}));
  }
  acc.finish(trials, run);
  return run;
}

// Anti-coordination by ID parity: agent i plays C when the XOR of the shared
// bits is congruent to i mod 2, S otherwise, so exactly one agent plays C.
inline ProtocolRun run_anticoord_protocol(const Game& game, std::uint64_t seed, long trials) {
  protocol_detail::require_actions(game, {"C", "S"}, "anticoord protocol");
  ProtocolRun run{"anticoord_xor", 2, seed, trials, {}, {}, {}, {}};

  run.exact_distribution.support = {{PureProfile{{0, 1}}, 0.5}, {PureProfile{{1, 0}}, 0.5}};
  run.exact_distribution.validate();
  run.exact_expected_utilities = expected_utility(game, run.exact_distribution);

  SplitMix64 rng(seed);
  protocol_detail::Accumulator acc(2);
  for (long t = 0; t < trials; ++t) {
    const int x = rng.bit() ^ rng.bit();
    // agent 1 plays C iff x == 1, agent 2 iff x == 0
    const PureProfile profile = x == 1 ? PureProfile{{0, 1}} : PureProfile{{1, 0}};
    acc.add(game.utility(profile));
  }
  acc.finish(trials, run);
  return run;
}

// The single-winner submission game, payoffs built in: agents 1..n each draw
// b_i uniform in Z_n, and the agent whose ID matches the sum mod n (residue
// 0 standing for agent n) submits. Exactly one agent submits per trial, so
// each wins with probability 1/n.
inline ProtocolRun run_choose_winner(int n, std::uint64_t seed, long trials) {
  if (n < 1) throw domain_error("choose-winner needs n >= 1");
  ProtocolRun run{"choose_winner", n, seed, trials, {}, {}, {}, {}};

  // Induced distribution: probability 1/n on "agent i submits, others don't".
  for (int winner = 0; winner < n; ++winner) {
    PureProfile profile;
    profile.choices.assign(static_cast<std::size_t>(n), 1);  // 1 = don't submit
    profile.choices[static_cast<std::size_t>(winner)] = 0;   // 0 = submit
    run.exact_distribution.support.emplace_back(std::move(profile),
                                                1.0 / static_cast<double>(n));
  }
  run.exact_distribution.validate();
  run.exact_expected_utilities.assign(static_cast<std::size_t>(n),
                                      1.0 / static_cast<double>(n));

  SplitMix64 rng(seed);
  protocol_detail::Accumulator acc(n);
  std::vector<std::uint64_t> draws(static_cast<std::size_t>(n));
  Utility utilities(static_cast<std::size_t>(n));
  for (long t = 0; t < trials; ++t) {
    std::uint64_t total = 0;
    for (auto& b : draws) {
      b = rng.below(static_cast<std::uint64_t>(n));
      total += b;
    }
    long submitters = 0;
    int winner = -1;
    for (int i = 1; i <= n; ++i) {
      // agent i runs the same predicate on the shared draws
      if (total % static_cast<std::uint64_t>(n) ==
          static_cast<std::uint64_t>(i % n)) {
        ++submitters;
        winner = i - 1;
      }
    }
    run.min_submitters = run.min_submitters < 0 ? submitters
                                                : std::min(run.min_submitters, submitters);
    run.max_submitters = std::max(run.max_submitters, submitters);
    for (int i = 0; i < n; ++i)
      utilities[static_cast<std::size_t>(i)] = (submitters == 1 && i == winner) ? 1.0 : 0.0;
    acc.add(utilities);
  }
  acc.finish(trials, run);
  return run;
}

// Conditions (a) and (c) of the program-equilibrium definition for a
// candidate correlated distribution: support on the Pareto frontier, and no
// Pareto-supported distribution q with E[u(q)] >= E[u(p)] componentwise and
// a strictly larger utility total. Condition (b) is certified only for the
// built-in protocols (identical code by construction) and reported as
// unchecked here.
inline CandidateVerdict verify_candidate(const Game& game, const JointDistribution& candidate,
                                         std::size_t max_profiles = kDefaultMaxProfiles) {
  candidate.validate();
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);

  CandidateVerdict verdict;
  verdict.supported_on_pareto = true;
  for (const auto& [profile, p] : candidate.support) {
    if (p <= 0.0) continue;
    if (!pareto.contains(game.index_of(profile))) {
      verdict.supported_on_pareto = false;
      break;
    }
  }

  const Utility base = expected_utility(game, candidate);
  const int n = game.num_players();

  LinearProgram lp;
  lp.objective.assign(pareto.size(), 0.0);
  for (std::size_t a = 0; a < pareto.size(); ++a)
    for (double u : pareto.payoffs[a]) lp.objective[a] += u;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(pareto.size(), 0.0);
    for (std::size_t a = 0; a < pareto.size(); ++a)
      row[a] = pareto.payoffs[a][static_cast<std::size_t>(i)];
    lp.add(std::move(row), Relation::ge, base[static_cast<std::size_t>(i)]);
  }
  {
    std::vector<double> row(pareto.size(), 1.0);
    lp.add(std::move(row), Relation::eq, 1.0);
  }

  const LpSolution solution = solve(lp);
  if (solution.status == LpStatus::infeasible) {
    // No Pareto-supported distribution weakly dominates the candidate.
    verdict.undominated = true;
    verdict.improvement = 0.0;
    return verdict;
  }
  if (solution.status != LpStatus::optimal)
    throw numeric_error("domination LP failed: " + std::string(to_string(solution.status)));

  double base_total = 0.0;
  for (double u : base) base_total += u;
  verdict.improvement = solution.value - base_total;
  verdict.undominated = verdict.improvement <= 1e-7;
  if (!verdict.undominated) {
    JointDistribution witness;
    double sum = 0.0;
    for (std::size_t a = 0; a < pareto.size(); ++a)
      if (solution.x[a] > 1e-10) {
        witness.support.emplace_back(pareto.profiles[a], solution.x[a]);
        sum += solution.x[a];
      }
    for (auto& [profile, p] : witness.support) p /= sum;
    witness.validate();
    verdict.witness = std::move(witness);
  }
  return verdict;
}

}  // namespace kantian
