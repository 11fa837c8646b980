#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "kantian/equilibria.hpp"
#include "kantian/io.hpp"
#include "kantian/rng.hpp"
#include "oracles.hpp"

using namespace kantian;

namespace {

Game prisoners_dilemma() {
  return Game::bimatrix({"C", "D"}, {"C", "D"}, {2, 0, 3, 1}, {2, 3, 0, 1});
}

Game two_optima() {  // 3x3 game with two equally good Kantian equilibria
  return Game::bimatrix({"C", "D", "E"}, {"C", "D", "E"},
                        {5, 3, 1, 6, 4, 6, 2, 3, 5},
                        {5, 6, 2, 3, 4, 3, 1, 6, 5});
}

}  // namespace

TEST_CASE("pure Kantian equilibria of the dilemma") {
  const Game pd = prisoners_dilemma();
  const auto family = VariationFamily::replace_all(pd.actions(0));
  const KantianResult result = pure_kantian(pd, family);
  REQUIRE(result.equilibria.size() == 1);
  CHECK(result.equilibria[0] == PureProfile{{0, 0}});
  CHECK(result.payoffs[0] == Utility{2, 2});
}

TEST_CASE("two equally good Kantian equilibria") {
  const Game g = two_optima();
  const KantianResult result = pure_kantian(g, VariationFamily::replace_all(g.actions(0)));
  REQUIRE(result.equilibria.size() == 2);
  CHECK(result.equilibria[0] == PureProfile{{0, 0}});
  CHECK(result.equilibria[1] == PureProfile{{2, 2}});
}

TEST_CASE("identity-only family accepts everything") {
  const Game pd = prisoners_dilemma();
  const auto family = VariationFamily::identity_only(2);
  CHECK(pure_kantian(pd, family).equilibria.size() == 2);
  CHECK(is_kantian_profile(pd, PureProfile{{0, 1}}, family));
}

TEST_CASE("off-diagonal profile check") {
  const Game pd = prisoners_dilemma();
  const auto family = VariationFamily::replace_all(pd.actions(0));
  CHECK(is_kantian_profile(pd, PureProfile{{0, 0}}, family));
  CHECK_FALSE(is_kantian_profile(pd, PureProfile{{1, 1}}, family));

  const Game lopsided = Game::bimatrix({"a", "b"}, {"x", "y"}, {1, 0, 0, 1}, {1, 0, 0, 1});
  CHECK_THROWS_AS(pure_kantian(lopsided, family), domain_error);
}

TEST_CASE("pure Kantian results pass their own checker") {
  SplitMix64 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = oracles::random_symmetric_diagonal(rng, 2 + static_cast<int>(rng.below(4)));
    const auto family = VariationFamily::replace_all(g.actions(0));
    for (const auto& profile : pure_kantian(g, family).equilibria)
      CHECK(is_kantian_profile(g, profile, family));
  }
}

TEST_CASE("quadratic optimum on the 5-cycle") {
  const Game g = game_from_adjacency(oracles::cycle_graph(5));
  const MixedKantianResult result = mixed_kantian_exact(g);
  CHECK(result.value == Catch::Approx(0.5).margin(1e-9));
  // lexicographically smallest optimal support is the first edge
  CHECK(result.strategy.weights[0] == Catch::Approx(0.5));
  CHECK(result.strategy.weights[1] == Catch::Approx(0.5));
}

TEST_CASE("quadratic optimum on the complete graph is the uniform point") {
  const Game g = game_from_adjacency(oracles::complete_graph(4));
  const MixedKantianResult result = mixed_kantian_exact(g);
  CHECK(result.value == Catch::Approx(0.75).margin(1e-9));
  for (double w : result.strategy.weights) CHECK(w == Catch::Approx(0.25).margin(1e-9));
  CHECK(result.max_off_support_violation <= 1e-7);
}

TEST_CASE("coordination games put the mixed optimum on the best diagonal") {
  const Game g = Game::symmetric_bimatrix({"a", "b"}, {5, 0, 0, 3});
  const MixedKantianResult result = mixed_kantian_exact(g);
  CHECK(result.value == Catch::Approx(5.0).margin(1e-9));
  CHECK(result.strategy.weights[0] == Catch::Approx(1.0));
}

TEST_CASE("mixed solver enforces its preconditions") {
  const Game asym = Game::bimatrix({"a", "b"}, {"a", "b"}, {1, 0, 0, 1}, {2, 0, 0, 1});
  CHECK_THROWS_AS(mixed_kantian_exact(asym), domain_error);
  std::vector<std::string> many;
  for (int a = 0; a < 21; ++a) many.push_back("a" + std::to_string(a));
  const Game big = Game::symmetric_bimatrix(std::move(many), std::vector<double>(21 * 21, 1.0));
  CHECK_THROWS_AS(mixed_kantian_exact(big), domain_error);
}

TEST_CASE("clique connection on random graphs") {
  SplitMix64 rng(707);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(7));  // up to 9 vertices
    const auto adjacency = oracles::random_graph(rng, n);
    const Game g = game_from_adjacency(adjacency);
    const MixedKantianResult result = mixed_kantian_exact(g);
    const int clique = oracles::max_clique_brute(adjacency);
    CHECK(static_cast<int>(std::lround(1.0 / (1.0 - result.value))) == clique);
    CHECK(result.value ==
          Catch::Approx(1.0 - 1.0 / static_cast<double>(clique)).margin(1e-6));
  }
}

TEST_CASE("coordination optima are point masses on a best diagonal") {
  SplitMix64 rng(515);
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = oracles::random_symmetric_coordination(rng, 2 + static_cast<int>(rng.below(7)));
    const MixedKantianResult result = mixed_kantian_exact(g);
    double best_diag = 0.0;
    for (int a = 0; a < g.num_actions(0); ++a)
      best_diag = std::max(best_diag, g.utility(PureProfile{{a, a}})[0]);
    CHECK(result.value == Catch::Approx(best_diag).margin(1e-8));
    // support sits on payoff-tied diagonal maxima; here it is a point mass
    int support_size = 0, support_action = -1;
    for (int a = 0; a < g.num_actions(0); ++a)
      if (result.strategy.weights[static_cast<std::size_t>(a)] > 1e-9) {
        ++support_size;
        support_action = a;
      }
    CHECK(support_size == 1);
    CHECK(g.utility(PureProfile{{support_action, support_action}})[0] == best_diag);
    // reported value matches an independent evaluation of the quadratic form
    double recomputed = 0.0;
    for (int i = 0; i < g.num_actions(0); ++i)
      for (int j = 0; j < g.num_actions(0); ++j)
        recomputed += result.strategy.weights[static_cast<std::size_t>(i)] *
                      result.strategy.weights[static_cast<std::size_t>(j)] *
                      g.utility(PureProfile{{i, j}})[0];
    CHECK(result.value == Catch::Approx(recomputed).margin(1e-8));
  }
}

TEST_CASE("mixed value always reaches the best diagonal entry") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = oracles::random_symmetric_diagonal(rng, 2 + static_cast<int>(rng.below(5)));
    const MixedKantianResult result = mixed_kantian_exact(g);
    double best_diag = -1e300;
    for (int a = 0; a < g.num_actions(0); ++a)
      best_diag = std::max(best_diag, g.utility(PureProfile{{a, a}})[0]);
    CHECK(result.value >= best_diag - 1e-8);
  }
}

TEST_CASE("replicator heuristic tracks the exact solver") {
  SplitMix64 rng(909);
  const Game k4 = game_from_adjacency(oracles::complete_graph(4));
  const MixedKantianResult heur = mixed_kantian_replicator(k4, 7, 16, 3000);
  CHECK(heur.value == Catch::Approx(0.75).margin(1e-6));
  CHECK(heur.method == MixedKantianMethod::replicator);

  const Game solo = Game::symmetric_bimatrix({"a"}, {4.0});
  const MixedKantianResult single = mixed_kantian_replicator(solo, 1, 4, 100);
  CHECK(single.value == Catch::Approx(4.0));
  CHECK(single.strategy.weights[0] == Catch::Approx(1.0));

  for (int trial = 0; trial < 10; ++trial) {
    const Game g = oracles::random_symmetric_diagonal(rng, 2 + static_cast<int>(rng.below(7)));
    const double exact = mixed_kantian_exact(g).value;
    const double approx = mixed_kantian_replicator(g, 1000 + trial, 24, 3000).value;
    CHECK(approx <= exact + 1e-6);
  }
}

TEST_CASE("replicator is deterministic for a fixed seed") {
  const Game g = game_from_adjacency(oracles::cycle_graph(5));
  const auto a = mixed_kantian_replicator(g, 99, 8, 500);
  const auto b = mixed_kantian_replicator(g, 99, 8, 500);
  CHECK(a.value == b.value);
  CHECK(a.strategy.weights == b.strategy.weights);
}

TEST_CASE("price of miscoordination on the two-optimum game") {
  const MiscoordinationReport report = price_of_miscoordination(two_optima());
  REQUIRE(report.kantian_actions == std::vector<int>{0, 2});
  CHECK(report.kantian_payoff == Catch::Approx(5.0));
  CHECK(report.worst_payoff == Catch::Approx(1.0));
  CHECK(report.price == Catch::Approx(5.0).margin(1e-9));
  CHECK(report.uniform_expected_utilities[0] == Catch::Approx(3.25));
  CHECK(report.uniform_ratio == Catch::Approx(5.0 / 3.25).margin(1e-9));
  CHECK(report.range_high == Catch::Approx(2.0));
}

TEST_CASE("constant game has price one") {
  const Game flat = Game::symmetric_bimatrix({"a", "b"}, {1, 1, 1, 1});
  const MiscoordinationReport report = price_of_miscoordination(flat);
  CHECK(report.price == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("uniform mixing over two tied coordination optima hits the range bound") {
  const Game g = Game::symmetric_bimatrix({"a", "b"}, {1, 0, 0, 1});
  const MiscoordinationReport report = price_of_miscoordination(g);
  REQUIRE(report.kantian_actions.size() == 2);
  CHECK(report.uniform_expected_utilities[0] == Catch::Approx(0.5));
  CHECK(report.uniform_ratio == Catch::Approx(2.0).margin(1e-9));
  CHECK(report.range_high == Catch::Approx(2.0));
  CHECK(std::isinf(report.price));  // a zero off-diagonal cell, pure-profile reading
}

TEST_CASE("price preconditions") {
  const Game negative = Game::symmetric_bimatrix({"a", "b"}, {1, -1, -1, 1});
  CHECK_THROWS_AS(price_of_miscoordination(negative), domain_error);
  const Game lopsided = Game::bimatrix({"a", "b"}, {"x", "y"}, {1, 0, 0, 1}, {1, 0, 0, 1});
  CHECK_THROWS_AS(price_of_miscoordination(lopsided), domain_error);
}

TEST_CASE("uniform-mixing ratio respects the theoretical range on random diagonal games") {
  SplitMix64 rng(1010);
  for (int trial = 0; trial < 50; ++trial) {
    const Game g = oracles::random_symmetric_diagonal(
        rng, 2 + static_cast<int>(rng.below(4)), /*lo_off=*/1.0, /*integer_off=*/false);
    const MiscoordinationReport report = price_of_miscoordination(g);
    CHECK(report.uniform_ratio >= report.range_low - 1e-9);
    CHECK(report.uniform_ratio <= report.range_high + 1e-9);
    CHECK(report.price >= 1.0 - 1e-9);
  }
}

TEST_CASE("platonia closed form") {
  const PlatoniaResult twenty = platonia_mixed_kantian(20);
  CHECK(twenty.p == Catch::Approx(0.05));
  CHECK(twenty.expected_payoff == Catch::Approx(0.018867680126765363).margin(1e-12));

  const PlatoniaResult one = platonia_mixed_kantian(1);
  CHECK(one.p == Catch::Approx(1.0));
  CHECK(one.expected_payoff == Catch::Approx(1.0));

  const PlatoniaResult two = platonia_mixed_kantian(2);
  CHECK(two.p == Catch::Approx(0.5));
  CHECK(two.expected_payoff == Catch::Approx(0.25));

  CHECK_THROWS_AS(platonia_mixed_kantian(0), domain_error);
}

TEST_CASE("platonia probability beats every grid point") {
  for (int n : {1, 2, 3, 5, 20, 50}) {
    const PlatoniaResult result = platonia_mixed_kantian(n);
    double best = 0.0;
    for (int k = 0; k <= 10000; ++k) {
      const double p = static_cast<double>(k) / 10000.0;
      best = std::max(best, p * std::pow(1.0 - p, n - 1));
    }
    CHECK(result.expected_payoff >= best - 1e-12);
  }
}
