#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kantian/game.hpp"
#include "kantian/rng.hpp"

namespace kantian {

struct KantianResult {
  std::vector<PureProfile> equilibria;
  std::vector<Utility> payoffs;
};

enum class MixedKantianMethod { support_enumeration, replicator };

inline const char* to_string(MixedKantianMethod m) {
  return m == MixedKantianMethod::support_enumeration ? "support_enumeration" : "replicator";
}

struct MixedKantianResult {
  MixedStrategy strategy;
  double value = 0.0;
  MixedKantianMethod method = MixedKantianMethod::support_enumeration;
  double kkt_lambda = 0.0;
  double max_off_support_violation = 0.0;  // max_j 2(Ax)_j - lambda off support
};

struct MiscoordinationReport {
  std::vector<int> kantian_actions;
  double kantian_payoff = 0.0;  // common diagonal optimum
  double worst_payoff = 0.0;    // min over pure profiles of Kantian actions, all players
  double price = 0.0;           // kantian_payoff / worst_payoff (+inf when worst is 0)
  Utility uniform_expected_utilities;  // everyone mixes uniformly over Kantian actions
  double uniform_ratio = 0.0;          // kantian_payoff / min_i uniform expectation
  double range_low = 1.0;
  double range_high = 1.0;             // r^(k-1)
};

struct PlatoniaResult {
  double p = 0.0;
  double expected_payoff = 0.0;
};

namespace detail {

inline PureProfile apply_variation(const PureProfile& profile, const std::vector<int>& map) {
  PureProfile deviated = profile;
  for (int& choice : deviated.choices) choice = map[static_cast<std::size_t>(choice)];
  return deviated;
}

// Player 1's payoff matrix symmetrized: (A + A^T)/2. The quadratic form is
// unchanged and the KKT systems below need a symmetric matrix.
inline std::vector<double> symmetrized_matrix(const Game& game) {
  const std::size_t m = static_cast<std::size_t>(game.num_actions(0));
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a[i * m + j] = game.utility(PureProfile{{static_cast<int>(i), static_cast<int>(j)}})[0];
  std::vector<double> sym(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sym[i * m + j] = 0.5 * (a[i * m + j] + a[j * m + i]);
  return sym;
}

inline double quadratic_form(const std::vector<double>& a, const std::vector<double>& x) {
  const std::size_t m = x.size();
  double v = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += a[i * m + j] * x[j];
    v += x[i] * row;
  }
  return v;
}

// Gaussian elimination with partial pivoting; returns false when a pivot is
// too small to trust (singular system).
inline bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n,
                        std::vector<double>& out) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
    if (std::abs(a[best * n + col]) < 1e-12) return false;
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[best * n + j]);
      std::swap(b[col], b[best]);
    }
    const double pivot = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / pivot;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= factor * a[col * n + j];
      b[r] -= factor * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double sum = b[row];
    for (std::size_t j = row + 1; j < n; ++j) sum -= a[row * n + j] * out[j];
    out[row] = sum / a[row * n + row];
  }
  return true;
}

inline MixedKantianResult finish_mixed_result(const std::vector<double>& sym,
                                              std::vector<double> x,
                                              MixedKantianMethod method) {
  const std::size_t m = x.size();
  double sum = 0.0;
  for (double& xi : x) {
    if (xi < 0.0) xi = 0.0;
    sum += xi;
  }
  for (double& xi : x) xi /= sum;

  MixedKantianResult result;
  result.method = method;
  result.strategy.weights = x;
  result.value = quadratic_form(sym, x);
  result.kkt_lambda = 2.0 * result.value;
  result.max_off_support_violation = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (x[j] > 1e-9) continue;
    double grad = 0.0;
    for (std::size_t k = 0; k < m; ++k) grad += 2.0 * sym[j * m + k] * x[k];
    result.max_off_support_violation =
        std::max(result.max_off_support_violation, grad - result.kkt_lambda);
  }
  return result;
}

}  // namespace detail

// Checks the defining inequality of a Kantian profile: no parameterized joint
// deviation improves any player's payoff.
inline bool is_kantian_profile(const Game& game, const PureProfile& profile,
                               const VariationFamily& family) {
  detail::require_identical_actions(game, "is_kantian_profile");
  family.validate(game.num_actions(0));
  const Utility base = game.utility(profile);
  for (const auto& map : family.maps) {
    const Utility deviated = game.utility(detail::apply_variation(profile, map));
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i] + kSolverTol < deviated[i]) return false;
  }
  return true;
}

// Diagonal profiles that are optimal for every player under every joint
// deviation of the family. Off-diagonal candidates can be screened with
// is_kantian_profile directly.
inline KantianResult pure_kantian(const Game& game, const VariationFamily& family) {
  detail::require_identical_actions(game, "pure_kantian");
  family.validate(game.num_actions(0));
  KantianResult result;
  for (int a = 0; a < game.num_actions(0); ++a) {
    const PureProfile profile = detail::diagonal_profile(game, a);
    if (is_kantian_profile(game, profile, family)) {
      result.equilibria.push_back(profile);
      result.payoffs.push_back(game.utility(profile));
    }
  }
  return result;
}

// Global maximization of x^T A x over the simplex by support enumeration.
// For every nonempty support S the interior critical points satisfy
//   2 A_S x_S = lambda 1,  sum x_S = 1,
// solved as one augmented linear system. Singular systems are skipped: on a
// degenerate face the objective is constant along the kernel, so the same
// value is attained on a sub-face whose system is regular. Vertices are the
// size-1 supports and always regular.
inline MixedKantianResult mixed_kantian_exact(const Game& game) {
  const StructureReport structure = classify(game);
  if (game.num_players() != 2 || !structure.symmetric_two_player)
    throw domain_error("mixed_kantian_exact needs a two-player symmetric game");
  const int m = game.num_actions(0);
  if (m > 20)
    throw domain_error("mixed_kantian_exact is limited to 20 actions; "
                       "use the replicator heuristic for larger games");

  const std::vector<double> sym = detail::symmetrized_matrix(game);
  const std::size_t mm = static_cast<std::size_t>(m);

  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<int> best_support;
  std::vector<double> best_x;

  std::vector<int> support;
  std::vector<double> system, rhs, solution;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    support.clear();
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) support.push_back(j);
    const std::size_t k = support.size();
    const std::size_t dim = k + 1;

    system.assign(dim * dim, 0.0);
    rhs.assign(dim, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c)
        system[r * dim + c] =
            2.0 * sym[static_cast<std::size_t>(support[r]) * mm +
                      static_cast<std::size_t>(support[c])];
      system[r * dim + k] = -1.0;  // -lambda
      system[k * dim + r] = 1.0;
    }
    rhs[k] = 1.0;
    if (!detail::solve_dense(system, rhs, dim, solution)) continue;

    bool feasible = true;
    for (std::size_t r = 0; r < k && feasible; ++r)
      if (solution[r] < -1e-10) feasible = false;
    if (!feasible) continue;

    std::vector<double> x(mm, 0.0);
    for (std::size_t r = 0; r < k; ++r)
      x[static_cast<std::size_t>(support[r])] = std::max(0.0, solution[r]);
    const double value = detail::quadratic_form(sym, x);

    const bool better = value > best_value + 1e-12;
    const bool tied = std::abs(value - best_value) <= 1e-12;
    if (better || (tied && std::lexicographical_compare(support.begin(), support.end(),
                                                        best_support.begin(),
                                                        best_support.end()))) {
      best_value = value;
      best_support = support;
      best_x = x;
    }
  }

  return detail::finish_mixed_result(sym, best_x, MixedKantianMethod::support_enumeration);
}

// Replicator dynamics x_i <- x_i (Bx)_i / (x^T B x) on a nonnegatively
// shifted matrix B = A + c (the argmax on the simplex is shift-invariant).
// Restarts from random interior points; no global guarantee.
inline MixedKantianResult mixed_kantian_replicator(const Game& game, std::uint64_t seed,
                                                   int restarts, int iterations) {
  const StructureReport structure = classify(game);
  if (game.num_players() != 2 || !structure.symmetric_two_player)
    throw domain_error("mixed_kantian_replicator needs a two-player symmetric game");
  if (restarts < 1 || iterations < 0)
    throw domain_error("replicator needs restarts >= 1 and iterations >= 0");

  const std::vector<double> sym = detail::symmetrized_matrix(game);
  const std::size_t m = static_cast<std::size_t>(game.num_actions(0));
  double min_entry = 0.0;
  for (double v : sym) min_entry = std::min(min_entry, v);
  const double shift = std::max(0.0, -min_entry) + 1.0;
  std::vector<double> shifted(sym);
  for (double& v : shifted) v += shift;

  SplitMix64 rng(seed);
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  std::vector<double> x(m), bx(m);
  for (int restart = 0; restart < restarts; ++restart) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = -std::log(1.0 - rng.uniform01()) + 1e-12;
      sum += x[i];
    }
    for (double& xi : x) xi /= sum;

    for (int it = 0; it < iterations; ++it) {
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += shifted[i * m + j] * x[j];
        bx[i] = x[i] * row;
        total += bx[i];
      }
      for (std::size_t i = 0; i < m; ++i) x[i] = bx[i] / total;
    }

    const double value = detail::quadratic_form(sym, x);
    if (value > best_value) {
      best_value = value;
      best_x = x;
    }
  }
  return detail::finish_mixed_result(sym, best_x, MixedKantianMethod::replicator);
}

// Price of miscoordination: ratio of the Kantian payoff to the worst payoff
// reachable when players independently mix over Kantian actions. By
// multilinearity that infimum sits at a pure profile of Kantian actions.
// Also reports the common-uniform-mixing expectation, whose ratio obeys the
// [1, r^(k-1)] range for symmetric diagonal games.
inline MiscoordinationReport price_of_miscoordination(const Game& game) {
  detail::require_identical_actions(game, "price_of_miscoordination");
  const int n = game.num_players();
  const int m = game.num_actions(0);
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx)
    for (int i = 0; i < n; ++i)
      if (game.payoff(idx, i) < 0.0)
        throw domain_error("price_of_miscoordination needs nonnegative payoffs");

  std::vector<Utility> diag(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a)
    diag[static_cast<std::size_t>(a)] = game.utility(detail::diagonal_profile(game, a));

  MiscoordinationReport report;
  for (int a = 0; a < m; ++a) {
    bool optimal = true;
    for (int i = 0; i < n && optimal; ++i)
      for (int r = 0; r < m; ++r)
        if (diag[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] <
            diag[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]) {
          optimal = false;
          break;
        }
    if (optimal) report.kantian_actions.push_back(a);
  }
  if (report.kantian_actions.empty())
    throw domain_error("game has no pure Kantian action (no common diagonal optimum)");

  const std::size_t r = report.kantian_actions.size();
  report.kantian_payoff = diag[static_cast<std::size_t>(report.kantian_actions[0])][0];
  if (report.kantian_payoff <= 0.0)
    throw domain_error("price_of_miscoordination needs a positive Kantian payoff");

  double cells = 1.0;
  for (int p = 1; p < n; ++p) cells *= static_cast<double>(r);
  if (cells * static_cast<double>(r) > static_cast<double>(kDefaultMaxProfiles))
    throw domain_error("too many Kantian-action profiles to enumerate");

  report.worst_payoff = std::numeric_limits<double>::infinity();
  report.uniform_expected_utilities.assign(static_cast<std::size_t>(n), 0.0);
  std::size_t total = 1;
  for (int p = 0; p < n; ++p) total *= r;
  PureProfile profile;
  profile.choices.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int p = n - 1; p >= 0; --p) {
      profile.choices[static_cast<std::size_t>(p)] = report.kantian_actions[rest % r];
      rest /= r;
    }
    const Utility u = game.utility(profile);
    for (int i = 0; i < n; ++i) {
      report.worst_payoff = std::min(report.worst_payoff, u[static_cast<std::size_t>(i)]);
      report.uniform_expected_utilities[static_cast<std::size_t>(i)] +=
          u[static_cast<std::size_t>(i)] / static_cast<double>(total);
    }
  }

  report.price = report.worst_payoff > 0.0
                     ? report.kantian_payoff / report.worst_payoff
                     : std::numeric_limits<double>::infinity();
  const double min_uniform = *std::min_element(report.uniform_expected_utilities.begin(),
                                               report.uniform_expected_utilities.end());
  report.uniform_ratio = min_uniform > 0.0
                             ? report.kantian_payoff / min_uniform
                             : std::numeric_limits<double>::infinity();
  report.range_low = 1.0;
  report.range_high = std::pow(static_cast<double>(r), n - 1);
  return report;
}

// Closed form for the n-player single-winner submission game: everyone
// submits with probability 1/n, yielding (1/n)(1 - 1/n)^(n-1) each.
inline PlatoniaResult platonia_mixed_kantian(int n) {
  if (n < 1) throw domain_error("platonia needs n >= 1");
  const double p = 1.0 / static_cast<double>(n);
  return {p, p * std::pow(1.0 - p, n - 1)};
}

}  // namespace kantian
