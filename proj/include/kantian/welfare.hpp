#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kantian/game.hpp"
#include "kantian/lp.hpp"
#include "kantian/pareto.hpp"

namespace kantian {

enum class WelfareKind { rawlsian, bentham_harsanyi, best_off, rawlsian_percentile, aspiration };

inline const char* to_string(WelfareKind kind) {
  switch (kind) {
    case WelfareKind::rawlsian: return "rawlsian";
    case WelfareKind::bentham_harsanyi: return "bentham_harsanyi";
    case WelfareKind::best_off: return "best_off";
    case WelfareKind::rawlsian_percentile: return "rawlsian_percentile";
    case WelfareKind::aspiration: return "aspiration";
  }
  return "unknown";
}

// perc[a][i]: share (in percent) of the other Pareto-optimal profiles that
// pay player i strictly more than profile a. The denominator excludes the
// profile itself, which is what makes a two-profile frontier come out as
// (0,100)/(100,0).
struct PercentileData {
  std::vector<std::vector<double>> perc;  // [pareto profile][player]
};

// Natural expectation point: per-player median payoff over the Pareto set
// (mean of the two middle values for even counts). A player is happy where
// its payoff reaches its expectation point.
struct AspirationData {
  std::vector<double> nep;                 // [player]
  std::vector<std::vector<bool>> happy;    // [pareto profile][player]
};

struct EquilibriumReport {
  WelfareKind kind = WelfareKind::rawlsian;
  JointDistribution distribution;
  Utility expected_utilities;
  double stage1_value = 0.0;
  std::vector<std::string> lp_statuses;
  std::optional<PercentileData> percentiles;
  std::optional<AspirationData> aspiration;
};

inline PercentileData percentile_data(const ParetoSet& pareto, int num_players) {
  const std::size_t count = pareto.size();
  const double denom = static_cast<double>(std::max<std::size_t>(1, count - 1));
  PercentileData data;
  data.perc.assign(count, std::vector<double>(static_cast<std::size_t>(num_players), 0.0));
  for (std::size_t a = 0; a < count; ++a)
    for (int i = 0; i < num_players; ++i) {
      std::size_t better = 0;
      for (std::size_t b = 0; b < count; ++b)
        if (b != a && pareto.payoffs[b][static_cast<std::size_t>(i)] >
                          pareto.payoffs[a][static_cast<std::size_t>(i)])
          ++better;
      data.perc[a][static_cast<std::size_t>(i)] = 100.0 * static_cast<double>(better) / denom;
    }
  return data;
}

inline AspirationData aspiration_data(const ParetoSet& pareto, int num_players) {
  AspirationData data;
  const std::size_t count = pareto.size();
  data.nep.assign(static_cast<std::size_t>(num_players), 0.0);
  for (int i = 0; i < num_players; ++i) {
    std::vector<double> values(count);
    for (std::size_t a = 0; a < count; ++a) values[a] = pareto.payoffs[a][static_cast<std::size_t>(i)];
    std::sort(values.begin(), values.end());
    const std::size_t mid = count / 2;
    data.nep[static_cast<std::size_t>(i)] =
        count % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  }
  data.happy.assign(count, std::vector<bool>(static_cast<std::size_t>(num_players), false));
  for (std::size_t a = 0; a < count; ++a)
    for (int i = 0; i < num_players; ++i)
      data.happy[a][static_cast<std::size_t>(i)] =
          pareto.payoffs[a][static_cast<std::size_t>(i)] >= data.nep[static_cast<std::size_t>(i)];
  return data;
}

namespace detail {

// Stage-2 bounds are relaxed by this much so the stage-1 optimum itself
// stays feasible under floating-point noise. Kept below the support cutoff
// so the relaxation cannot smuggle visible mass onto extra profiles.
inline constexpr double kStageSlack = 1e-11;
inline constexpr double kSupportCutoff = 1e-8;

inline std::vector<double> utility_row(const ParetoSet& pareto, int player,
                                       std::size_t num_vars) {
  std::vector<double> row(num_vars, 0.0);
  for (std::size_t a = 0; a < pareto.size(); ++a)
    row[a] = pareto.payoffs[a][static_cast<std::size_t>(player)];
  return row;
}

inline std::vector<double> sum_row(const ParetoSet& pareto, std::size_t num_vars) {
  std::vector<double> row(num_vars, 0.0);
  for (std::size_t a = 0; a < pareto.size(); ++a) {
    double total = 0.0;
    for (double u : pareto.payoffs[a]) total += u;
    row[a] = total;
  }
  return row;
}

inline std::vector<double> simplex_row(std::size_t count, std::size_t num_vars) {
  std::vector<double> row(num_vars, 0.0);
  for (std::size_t a = 0; a < count; ++a) row[a] = 1.0;
  return row;
}

inline LpSolution checked_solve(const LinearProgram& lp, EquilibriumReport& report,
                                const char* stage) {
  LpSolution solution = solve(lp);
  report.lp_statuses.push_back(std::string(stage) + ": " + to_string(solution.status) +
                               (solution.degenerate ? " (degenerate basis)" : ""));
  if (solution.status != LpStatus::optimal)
    throw numeric_error(std::string("welfare ") + stage + " LP is " +
                        to_string(solution.status));
  return solution;
}

inline void attach_distribution(const Game& game, const ParetoSet& pareto,
                                const std::vector<double>& weights,
                                EquilibriumReport& report) {
  JointDistribution dist;
  double sum = 0.0;
  for (std::size_t a = 0; a < pareto.size(); ++a) {
    const double w = weights[a];
    if (w > kSupportCutoff) {
      dist.support.emplace_back(pareto.profiles[a], w);
      sum += w;
    }
  }
  for (auto& [profile, p] : dist.support) p /= sum;
  dist.validate();
  report.distribution = std::move(dist);
  report.expected_utilities = expected_utility(game, report.distribution);
}

}  // namespace detail

// Every computation below optimizes over correlated distributions p on the
// Pareto set; expectations are linear in p, which is what makes each notion
// a (pair of) linear programs. The second stage maximizes the total utility
// subject to the stage-1 optimum: any feasible strictly dominating
// distribution would have a strictly larger total, so a stage-2 optimum is
// undominated among distributions with the stage-1 property.
inline EquilibriumReport rawlsian(const Game& game,
                                  std::size_t max_profiles = kDefaultMaxProfiles) {
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);
  const int n = game.num_players();
  const std::size_t vars = pareto.size() + 2;  // p(a), t+, t-

  EquilibriumReport report;
  report.kind = WelfareKind::rawlsian;

  LinearProgram stage1;
  stage1.objective.assign(vars, 0.0);
  stage1.objective[pareto.size()] = 1.0;
  stage1.objective[pareto.size() + 1] = -1.0;
  for (int i = 0; i < n; ++i) {
    auto row = detail::utility_row(pareto, i, vars);
    row[pareto.size()] = -1.0;
    row[pareto.size() + 1] = 1.0;
    stage1.add(std::move(row), Relation::ge, 0.0);  // E[u_i] >= t
  }
  stage1.add(detail::simplex_row(pareto.size(), vars), Relation::eq, 1.0);
  const LpSolution first = detail::checked_solve(stage1, report, "stage1");
  report.stage1_value = first.value;

  LinearProgram stage2;
  stage2.objective = detail::sum_row(pareto, pareto.size());
  for (int i = 0; i < n; ++i)
    stage2.add(detail::utility_row(pareto, i, pareto.size()), Relation::ge,
               report.stage1_value - detail::kStageSlack);
  stage2.add(detail::simplex_row(pareto.size(), pareto.size()), Relation::eq, 1.0);
  const LpSolution second = detail::checked_solve(stage2, report, "stage2");

  detail::attach_distribution(game, pareto, second.x, report);
  return report;
}

inline EquilibriumReport bentham_harsanyi(const Game& game,
                                          std::size_t max_profiles = kDefaultMaxProfiles) {
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);

  EquilibriumReport report;
  report.kind = WelfareKind::bentham_harsanyi;

  LinearProgram lp;
  lp.objective = detail::sum_row(pareto, pareto.size());
  lp.add(detail::simplex_row(pareto.size(), pareto.size()), Relation::eq, 1.0);
  const LpSolution solution = detail::checked_solve(lp, report, "stage1");
  report.stage1_value = solution.value;

  // The optimum of a linear objective over the simplex is a point mass; ties
  // among optimal vertices break to the lexicographically first profile.
  std::vector<double> weights(pareto.size(), 0.0);
  for (std::size_t a = 0; a < pareto.size(); ++a) {
    if (lp.objective[a] >= report.stage1_value - detail::kStageSlack) {
      weights[a] = 1.0;
      break;
    }
  }
  detail::attach_distribution(game, pareto, weights, report);
  return report;
}

inline EquilibriumReport best_off(const Game& game,
                                  std::size_t max_profiles = kDefaultMaxProfiles) {
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);
  const int n = game.num_players();

  EquilibriumReport report;
  report.kind = WelfareKind::best_off;

  // Stage 1 needs no LP: the largest expected payoff over distributions on
  // the frontier is the largest frontier payoff of some player.
  int best_player = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < pareto.size(); ++a)
      v = std::max(v, pareto.payoffs[a][static_cast<std::size_t>(i)]);
    if (v > best_value) {
      best_value = v;
      best_player = i;
    }
  }
  report.stage1_value = best_value;
  report.lp_statuses.push_back("stage1: direct maximum, player " + std::to_string(best_player));

  LinearProgram stage2;
  stage2.objective = detail::sum_row(pareto, pareto.size());
  stage2.add(detail::utility_row(pareto, best_player, pareto.size()), Relation::ge,
             best_value - detail::kStageSlack);
  stage2.add(detail::simplex_row(pareto.size(), pareto.size()), Relation::eq, 1.0);
  const LpSolution second = detail::checked_solve(stage2, report, "stage2");

  detail::attach_distribution(game, pareto, second.x, report);
  return report;
}

inline EquilibriumReport rawlsian_percentile(const Game& game,
                                             std::size_t max_profiles = kDefaultMaxProfiles) {
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);
  const int n = game.num_players();
  const PercentileData data = percentile_data(pareto, n);
  const std::size_t vars = pareto.size() + 1;  // p(a), t

  EquilibriumReport report;
  report.kind = WelfareKind::rawlsian_percentile;
  report.percentiles = data;

  LinearProgram stage1;
  stage1.objective.assign(vars, 0.0);
  stage1.objective[pareto.size()] = -1.0;  // minimize t
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t a = 0; a < pareto.size(); ++a) row[a] = data.perc[a][static_cast<std::size_t>(i)];
    row[pareto.size()] = -1.0;
    stage1.add(std::move(row), Relation::le, 0.0);  // E[perc_i] <= t
  }
  stage1.add(detail::simplex_row(pareto.size(), vars), Relation::eq, 1.0);
  const LpSolution first = detail::checked_solve(stage1, report, "stage1");
  report.stage1_value = -first.value;

  LinearProgram stage2;
  stage2.objective = detail::sum_row(pareto, pareto.size());
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(pareto.size(), 0.0);
    for (std::size_t a = 0; a < pareto.size(); ++a) row[a] = data.perc[a][static_cast<std::size_t>(i)];
    stage2.add(std::move(row), Relation::le, report.stage1_value + detail::kStageSlack);
  }
  stage2.add(detail::simplex_row(pareto.size(), pareto.size()), Relation::eq, 1.0);
  const LpSolution second = detail::checked_solve(stage2, report, "stage2");

  detail::attach_distribution(game, pareto, second.x, report);
  return report;
}

inline EquilibriumReport aspiration(const Game& game,
                                    std::size_t max_profiles = kDefaultMaxProfiles) {
  const ParetoSet pareto = pareto_optimal_profiles(game, max_profiles);
  const int n = game.num_players();
  const AspirationData data = aspiration_data(pareto, n);
  const std::size_t vars = pareto.size() + 1;  // p(a), t

  EquilibriumReport report;
  report.kind = WelfareKind::aspiration;
  report.aspiration = data;

  LinearProgram stage1;
  stage1.objective.assign(vars, 0.0);
  stage1.objective[pareto.size()] = -1.0;  // minimize t
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t a = 0; a < pareto.size(); ++a)
      row[a] = data.happy[a][static_cast<std::size_t>(i)] ? 0.0 : 1.0;
    row[pareto.size()] = -1.0;
    stage1.add(std::move(row), Relation::le, 0.0);  // P[unhappy_i] <= t
  }
  stage1.add(detail::simplex_row(pareto.size(), vars), Relation::eq, 1.0);
  const LpSolution first = detail::checked_solve(stage1, report, "stage1");
  report.stage1_value = -first.value;

  LinearProgram stage2;
  stage2.objective = detail::sum_row(pareto, pareto.size());
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(pareto.size(), 0.0);
    for (std::size_t a = 0; a < pareto.size(); ++a)
      row[a] = data.happy[a][static_cast<std::size_t>(i)] ? 0.0 : 1.0;
    stage2.add(std::move(row), Relation::le, report.stage1_value + detail::kStageSlack);
  }
  stage2.add(detail::simplex_row(pareto.size(), pareto.size()), Relation::eq, 1.0);
  const LpSolution second = detail::checked_solve(stage2, report, "stage2");

  detail::attach_distribution(game, pareto, second.x, report);
  return report;
}

inline EquilibriumReport welfare_equilibrium(const Game& game, WelfareKind kind,
                                             std::size_t max_profiles = kDefaultMaxProfiles) {
  switch (kind) {
    case WelfareKind::rawlsian: return rawlsian(game, max_profiles);
    case WelfareKind::bentham_harsanyi: return bentham_harsanyi(game, max_profiles);
    case WelfareKind::best_off: return best_off(game, max_profiles);
    case WelfareKind::rawlsian_percentile: return rawlsian_percentile(game, max_profiles);
    case WelfareKind::aspiration: return aspiration(game, max_profiles);
  }
  throw domain_error("unknown welfare kind");
}

}  // namespace kantian
