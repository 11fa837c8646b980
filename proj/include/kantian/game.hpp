#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kantian {

// Error taxonomy. The CLI maps these onto exit codes, so solver code should
// throw the most specific one that applies.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input documents or arguments.
class parse_error : public error {
 public:
  using error::error;
};

// Structurally valid input that a solver cannot handle
// (non-identical action sets, negative payoffs, size limits, ...).
class domain_error : public error {
 public:
  using error::error;
};

// Numerical failure inside a solver.
class numeric_error : public error {
 public:
  using error::error;
};

using Utility = std::vector<double>;  // one entry per player

inline constexpr double kSolverTol = 1e-9;
inline constexpr std::size_t kDefaultMaxProfiles = 1'000'000;

enum class Dominance { none, weak, strict };

// Componentwise comparison of utility vectors. "weak" means equal vectors,
// "strict" means >= everywhere and > somewhere. Stored payoffs are compared
// exactly; callers that work with computed quantities apply their own
// tolerances before calling.
inline Dominance dominates(const Utility& u, const Utility& v) {
  if (u.size() != v.size())
    throw domain_error("dominates: utility vectors differ in length");
  bool any_less = false;
  bool any_greater = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) any_less = true;
    if (u[i] > v[i]) any_greater = true;
  }
  if (any_less) return Dominance::none;
  return any_greater ? Dominance::strict : Dominance::weak;
}

struct PureProfile {
  std::vector<int> choices;  // one action index per player

  friend bool operator==(const PureProfile& a, const PureProfile& b) {
    return a.choices == b.choices;
  }
  friend auto operator<=>(const PureProfile& a, const PureProfile& b) {
    return a.choices <=> b.choices;
  }
};

struct MixedStrategy {
  std::vector<double> weights;  // probabilities over one player's actions

  void validate() const {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw domain_error("mixed strategy has a negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw domain_error("mixed strategy weights do not sum to 1");
  }

  static MixedStrategy point_mass(int action, int num_actions) {
    MixedStrategy s;
    s.weights.assign(static_cast<std::size_t>(num_actions), 0.0);
    s.weights.at(static_cast<std::size_t>(action)) = 1.0;
    return s;
  }
};

// A correlated distribution over pure profiles.
struct JointDistribution {
  std::vector<std::pair<PureProfile, double>> support;

  void validate() const {
    double sum = 0.0;
    for (const auto& [profile, p] : support) {
      if (!(p >= 0.0)) throw domain_error("joint distribution has a negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw domain_error("joint distribution probabilities do not sum to 1");
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i].first == sorted[i - 1].first)
        throw domain_error("joint distribution repeats a profile in its support");
  }

  static JointDistribution point_mass(PureProfile profile) {
    return JointDistribution{{{std::move(profile), 1.0}}};
  }
};

// Finite normal-form game: named actions per player and a dense payoff
// tensor in lexicographic profile order (player 0 varies slowest).
class Game {
 public:
  Game(std::vector<std::vector<std::string>> actions, std::vector<double> payoffs)
      : actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
    if (actions_.empty()) throw domain_error("game needs at least one player");
    num_profiles_ = 1;
    for (const auto& list : actions_) {
      if (list.empty()) throw domain_error("every player needs at least one action");
      auto names = list;
      std::sort(names.begin(), names.end());
      if (std::adjacent_find(names.begin(), names.end()) != names.end())
        throw domain_error("duplicate action name within one player's action set");
      if (num_profiles_ > kDefaultMaxProfiles * 64 / list.size())
        throw domain_error("profile count overflows the supported range");
      num_profiles_ *= list.size();
    }
    if (payoffs_.size() != num_profiles_ * actions_.size())
      throw domain_error("payoff tensor does not cover every pure profile exactly once");
    for (double v : payoffs_)
      if (!std::isfinite(v)) throw domain_error("payoffs must be finite");
  }

  int num_players() const { return static_cast<int>(actions_.size()); }
  int num_actions(int player) const {
    return static_cast<int>(actions_.at(static_cast<std::size_t>(player)).size());
  }
  const std::vector<std::string>& actions(int player) const {
    return actions_.at(static_cast<std::size_t>(player));
  }
  std::size_t num_profiles() const { return num_profiles_; }

  std::size_t index_of(const PureProfile& profile) const {
    if (profile.choices.size() != actions_.size())
      throw domain_error("profile has the wrong number of players");
    std::size_t index = 0;
    for (std::size_t p = 0; p < actions_.size(); ++p) {
      int a = profile.choices[p];
      if (a < 0 || a >= static_cast<int>(actions_[p].size()))
        throw domain_error("profile action index out of range for player " +
                           std::to_string(p));
      index = index * actions_[p].size() + static_cast<std::size_t>(a);
    }
    return index;
  }

  PureProfile profile_at(std::size_t index) const {
    PureProfile profile;
    profile.choices.assign(actions_.size(), 0);
    for (std::size_t p = actions_.size(); p-- > 0;) {
      profile.choices[p] = static_cast<int>(index % actions_[p].size());
      index /= actions_[p].size();
    }
    return profile;
  }

  double payoff(std::size_t profile_index, int player) const {
    return payoffs_[profile_index * actions_.size() + static_cast<std::size_t>(player)];
  }

  Utility utility(const PureProfile& profile) const { return utility_at(index_of(profile)); }

  Utility utility_at(std::size_t profile_index) const {
    Utility u(actions_.size());
    for (std::size_t i = 0; i < actions_.size(); ++i)
      u[i] = payoff(profile_index, static_cast<int>(i));
    return u;
  }

  std::vector<std::string> profile_names(const PureProfile& profile) const {
    std::vector<std::string> names;
    names.reserve(actions_.size());
    for (std::size_t p = 0; p < actions_.size(); ++p)
      names.push_back(actions_[p][static_cast<std::size_t>(profile.choices[p])]);
    return names;
  }

  // Two-player constructor from row-major payoff matrices.
  static Game bimatrix(std::vector<std::string> row_actions,
                       std::vector<std::string> col_actions,
                       const std::vector<double>& u1, const std::vector<double>& u2) {
    const std::size_t rows = row_actions.size(), cols = col_actions.size();
    if (u1.size() != rows * cols || u2.size() != rows * cols)
      throw domain_error("bimatrix payoff size mismatch");
    std::vector<double> payoffs;
    payoffs.reserve(rows * cols * 2);
    for (std::size_t k = 0; k < rows * cols; ++k) {
      payoffs.push_back(u1[k]);
      payoffs.push_back(u2[k]);
    }
    return Game({std::move(row_actions), std::move(col_actions)}, std::move(payoffs));
  }

  // Two-player symmetric game with u1 = A (row-major), u2(i,j) = A(j,i).
  static Game symmetric_bimatrix(std::vector<std::string> actions,
                                 const std::vector<double>& a) {
    const std::size_t m = actions.size();
    if (a.size() != m * m) throw domain_error("symmetric matrix size mismatch");
    std::vector<double> u2(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) u2[i * m + j] = a[j * m + i];
    auto cols = actions;
    return bimatrix(std::move(actions), std::move(cols), a, u2);
  }

 private:
  std::vector<std::vector<std::string>> actions_;
  std::vector<double> payoffs_;  // profile-major, player entries contiguous
  std::size_t num_profiles_ = 0;
};

inline Utility expected_utility(const Game& game, const JointDistribution& dist) {
  Utility total(static_cast<std::size_t>(game.num_players()), 0.0);
  for (const auto& [profile, p] : dist.support) {
    const std::size_t idx = game.index_of(profile);
    for (int i = 0; i < game.num_players(); ++i)
      total[static_cast<std::size_t>(i)] += p * game.payoff(idx, i);
  }
  return total;
}

// Expectation under independent mixing, one strategy per player.
inline Utility expected_utility_product(const Game& game,
                                        const std::vector<MixedStrategy>& strategies) {
  const int n = game.num_players();
  if (static_cast<int>(strategies.size()) != n)
    throw domain_error("expected one mixed strategy per player");
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(strategies[static_cast<std::size_t>(p)].weights.size()) !=
        game.num_actions(p))
      throw domain_error("mixed strategy length does not match action count for player " +
                         std::to_string(p));
    strategies[static_cast<std::size_t>(p)].validate();
  }
  Utility total(static_cast<std::size_t>(n), 0.0);
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile profile = game.profile_at(idx);
    double weight = 1.0;
    for (int p = 0; p < n; ++p)
      weight *= strategies[static_cast<std::size_t>(p)]
                    .weights[static_cast<std::size_t>(profile.choices[static_cast<std::size_t>(p)])];
    if (weight == 0.0) continue;
    for (int i = 0; i < n; ++i)
      total[static_cast<std::size_t>(i)] += weight * game.payoff(idx, i);
  }
  return total;
}

struct StructureReport {
  bool identical_actions = false;
  bool diagonal = false;
  bool coordination = false;
  bool symmetric_coordination = false;
  bool symmetric_two_player = false;
};

namespace detail {

inline void require_identical_actions(const Game& game, const char* who) {
  for (int p = 1; p < game.num_players(); ++p)
    if (game.actions(p) != game.actions(0))
      throw domain_error(std::string(who) + " needs identical action sets for all players");
}

inline bool is_diagonal_profile(const PureProfile& profile) {
  for (int c : profile.choices)
    if (c != profile.choices[0]) return false;
  return true;
}

inline PureProfile diagonal_profile(const Game& game, int action) {
  PureProfile p;
  p.choices.assign(static_cast<std::size_t>(game.num_players()), action);
  return p;
}

}  // namespace detail

// Structural predicates, all by exact comparison of stored payoffs.
//   identical_actions: all players share one ordered action-name list
//   diagonal: every profile is weakly Pareto dominated by a diagonal profile
//   coordination: diagonal and utilities are zero off the diagonal
//   symmetric_coordination: coordination with identical utilities on each
//     diagonal profile
//   symmetric_two_player: n = 2, identical actions, u2(i,j) = u1(j,i)
inline StructureReport classify(const Game& game) {
  StructureReport report;
  const int n = game.num_players();
  report.identical_actions = true;
  for (int p = 1; p < n; ++p)
    if (game.actions(p) != game.actions(0)) report.identical_actions = false;

  if (report.identical_actions) {
    const int m = game.num_actions(0);
    std::vector<Utility> diag(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
      diag[static_cast<std::size_t>(a)] = game.utility(detail::diagonal_profile(game, a));

    report.diagonal = true;
    report.coordination = true;
    report.symmetric_coordination = true;
    for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
      const PureProfile profile = game.profile_at(idx);
      const Utility u = game.utility_at(idx);
      if (detail::is_diagonal_profile(profile)) {
        for (int i = 1; i < n; ++i)
          if (u[static_cast<std::size_t>(i)] != u[0]) report.symmetric_coordination = false;
        continue;
      }
      bool covered = false;
      for (int a = 0; a < m && !covered; ++a)
        covered = dominates(diag[static_cast<std::size_t>(a)], u) != Dominance::none;
      if (!covered) report.diagonal = false;
      for (double v : u)
        if (v != 0.0) report.coordination = false;
    }
    report.coordination = report.coordination && report.diagonal;
    report.symmetric_coordination = report.symmetric_coordination && report.coordination;

    if (n == 2) {
      report.symmetric_two_player = true;
      const int m0 = game.num_actions(0);
      for (int i = 0; i < m0 && report.symmetric_two_player; ++i)
        for (int j = 0; j < m0; ++j) {
          const double u2_ij = game.utility(PureProfile{{i, j}})[1];
          const double u1_ji = game.utility(PureProfile{{j, i}})[0];
          if (u2_ij != u1_ji) {
            report.symmetric_two_player = false;
            break;
          }
        }
    }
  }
  return report;
}

// The (parameter set, action map) family of counterfactual deviations.
// Each map sends every action of the common action set to the action all
// players would jointly switch to under that parameter.
struct VariationFamily {
  std::vector<std::string> labels;        // one per parameter
  std::vector<std::vector<int>> maps;     // maps[r][a] = deviated action

  void validate(int num_actions) const {
    if (labels.size() != maps.size())
      throw domain_error("variation family labels and maps differ in size");
    for (const auto& map : maps) {
      if (static_cast<int>(map.size()) != num_actions)
        throw domain_error("variation map is not total on the action set");
      for (int target : map)
        if (target < 0 || target >= num_actions)
          throw domain_error("variation map target out of range");
    }
  }

  // "Change everyone's action to b", one parameter per action b.
  static VariationFamily replace_all(const std::vector<std::string>& actions) {
    VariationFamily family;
    const int m = static_cast<int>(actions.size());
    for (int b = 0; b < m; ++b) {
      family.labels.push_back(actions[static_cast<std::size_t>(b)]);
      family.maps.emplace_back(static_cast<std::size_t>(m), b);
    }
    return family;
  }

  static VariationFamily identity_only(int num_actions) {
    VariationFamily family;
    family.labels.push_back("identity");
    std::vector<int> id(static_cast<std::size_t>(num_actions));
    std::iota(id.begin(), id.end(), 0);
    family.maps.push_back(std::move(id));
    return family;
  }
};

}  // namespace kantian
