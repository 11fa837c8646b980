#include <catch2/catch_amalgamated.hpp>

#include "kantian/game.hpp"
#include "oracles.hpp"

using namespace kantian;

namespace {

Game prisoners_dilemma() {
  return Game::bimatrix({"C", "D"}, {"C", "D"}, {2, 0, 3, 1}, {2, 3, 0, 1});
}

Game coord2() {  // 2-action coordination game, diagonal (10,1) / (4,2)
  return Game::bimatrix({"C", "D"}, {"C", "D"}, {10, 0, 0, 4}, {1, 0, 0, 2});
}

Game anticoord() {
  return Game::bimatrix({"C", "S"}, {"C", "S"}, {10, 100, 200, 6}, {10, 200, 100, 6});
}

}  // namespace

TEST_CASE("utility reads the stored payoff vector") {
  const Game pd = prisoners_dilemma();
  CHECK(pd.utility(PureProfile{{0, 0}}) == Utility{2, 2});
  CHECK(pd.utility(PureProfile{{1, 0}}) == Utility{3, 0});

  const Game solo({{"only"}}, {7.5});
  CHECK(solo.utility(PureProfile{{0}}) == Utility{7.5});

  CHECK_THROWS_AS(pd.utility(PureProfile{{0, 2}}), domain_error);
  CHECK_THROWS_AS(pd.utility(PureProfile{{0}}), domain_error);
}

TEST_CASE("game construction rejects bad tensors") {
  CHECK_THROWS_AS(Game({{"a", "a"}}, {1.0, 1.0}), domain_error);  // duplicate name
  CHECK_THROWS_AS(Game({{"a", "b"}}, {1.0}), domain_error);       // coverage gap
  CHECK_THROWS_AS(Game({{"a"}}, {std::numeric_limits<double>::infinity()}), domain_error);
}

TEST_CASE("expected_utility averages over the support") {
  const Game g = coord2();
  JointDistribution half{{{PureProfile{{0, 0}}, 0.5}, {PureProfile{{1, 1}}, 0.5}}};
  const Utility u = expected_utility(g, half);
  CHECK(u[0] == Catch::Approx(7.0));
  CHECK(u[1] == Catch::Approx(1.5));

  const Game pd = prisoners_dilemma();
  CHECK(expected_utility(pd, JointDistribution::point_mass(PureProfile{{0, 0}})) ==
        Utility{2, 2});

  const Game anti = anticoord();
  JointDistribution mix{{{PureProfile{{0, 1}}, 0.5}, {PureProfile{{1, 0}}, 0.5}}};
  const Utility v = expected_utility(anti, mix);
  CHECK(v[0] == Catch::Approx(150.0));
  CHECK(v[1] == Catch::Approx(150.0));
}

TEST_CASE("expected_utility_product is multilinear in independent mixes") {
  // two-agent single-winner game: submit (S) wins iff alone
  const Game platonia2 =
      Game::bimatrix({"S", "D"}, {"S", "D"}, {0, 1, 0, 0}, {0, 0, 1, 0});
  std::vector<MixedStrategy> both_half{{{0.5, 0.5}}, {{0.5, 0.5}}};
  const Utility u = expected_utility_product(platonia2, both_half);
  CHECK(u[0] == Catch::Approx(0.25));
  CHECK(u[1] == Catch::Approx(0.25));

  const Game pd = prisoners_dilemma();
  std::vector<MixedStrategy> points{MixedStrategy::point_mass(1, 2),
                                    MixedStrategy::point_mass(0, 2)};
  CHECK(expected_utility_product(pd, points) == pd.utility(PureProfile{{1, 0}}));

  std::vector<MixedStrategy> mixed{{{0.5, 0.5}}, {{0.5, 0.5}}};
  const Utility v = expected_utility_product(pd, mixed);
  CHECK(v[0] == Catch::Approx(1.5));
  CHECK(v[1] == Catch::Approx(1.5));

  std::vector<MixedStrategy> bad{{{0.5, 0.5}}, {{1.0}}};
  CHECK_THROWS_AS(expected_utility_product(pd, bad), domain_error);
}

TEST_CASE("dominance classification") {
  CHECK(dominates({2, 2}, {1, 1}) == Dominance::strict);
  CHECK(dominates({2, 2}, {2, 2}) == Dominance::weak);
  CHECK(dominates({2, 2}, {0, 3}) == Dominance::none);
  CHECK(dominates({2, 2}, {2, 1}) == Dominance::strict);
  CHECK_THROWS_AS(dominates({1.0}, {1.0, 2.0}), domain_error);
}

TEST_CASE("dominance is a partial preorder") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Utility u(3), v(3);
    for (auto& x : u) x = static_cast<double>(rng.below(4));
    for (auto& x : v) x = static_cast<double>(rng.below(4));
    CHECK(dominates(u, u) == Dominance::weak);
    const bool uv = dominates(u, v) == Dominance::strict;
    const bool vu = dominates(v, u) == Dominance::strict;
    CHECK_FALSE((uv && vu));
  }
}

TEST_CASE("classify on the standard fixtures") {
  const StructureReport pd = classify(prisoners_dilemma());
  CHECK(pd.identical_actions);
  CHECK(pd.symmetric_two_player);
  CHECK_FALSE(pd.diagonal);
  CHECK_FALSE(pd.coordination);

  const StructureReport coord = classify(coord2());
  CHECK(coord.identical_actions);
  CHECK(coord.diagonal);
  CHECK(coord.coordination);
  CHECK_FALSE(coord.symmetric_coordination);

  const Game trivial({{"x"}, {"x"}}, {3, 3});
  const StructureReport t = classify(trivial);
  CHECK(t.identical_actions);
  CHECK(t.diagonal);
  CHECK(t.coordination);
  CHECK(t.symmetric_coordination);
  CHECK(t.symmetric_two_player);
}

TEST_CASE("classify flags are nested") {
  SplitMix64 rng(23);
  int coordination_games = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Game g = trial % 2 == 0
                       ? oracles::random_symmetric_coordination(rng, 2 + static_cast<int>(rng.below(3)))
                       : oracles::random_small_game(rng, 2 + static_cast<int>(rng.below(2)),
                                                    2 + static_cast<int>(rng.below(2)));
    const StructureReport r = classify(g);
    if (r.symmetric_coordination) CHECK(r.coordination);
    if (r.coordination) {
      CHECK(r.diagonal);
      ++coordination_games;
    }
    if (r.diagonal) CHECK(r.identical_actions);
  }
  CHECK(coordination_games >= 50);  // the generator really exercises the chain
}

TEST_CASE("point-mass expectations are exact") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const Game g = oracles::random_small_game(rng, 2 + static_cast<int>(rng.below(3)),
                                              2 + static_cast<int>(rng.below(3)));
    const std::size_t idx = rng.below(g.num_profiles());
    const PureProfile profile = g.profile_at(idx);
    CHECK(expected_utility(g, JointDistribution::point_mass(profile)) == g.utility(profile));
    std::vector<MixedStrategy> points;
    for (int p = 0; p < g.num_players(); ++p)
      points.push_back(MixedStrategy::point_mass(profile.choices[static_cast<std::size_t>(p)],
                                                 g.num_actions(p)));
    CHECK(expected_utility_product(g, points) == g.utility(profile));
  }
}

TEST_CASE("profile indexing round-trips in lexicographic order") {
  const Game g({{"a", "b"}, {"x", "y", "z"}}, std::vector<double>(12, 0.0));
  REQUIRE(g.num_profiles() == 6);
  PureProfile previous;
  for (std::size_t idx = 0; idx < g.num_profiles(); ++idx) {
    const PureProfile p = g.profile_at(idx);
    CHECK(g.index_of(p) == idx);
    if (idx > 0) CHECK(previous < p);
    previous = p;
  }
}

TEST_CASE("distribution validation") {
  JointDistribution bad{{{PureProfile{{0, 0}}, 0.6}, {PureProfile{{0, 0}}, 0.4}}};
  CHECK_THROWS_AS(bad.validate(), domain_error);
  JointDistribution negative{{{PureProfile{{0, 0}}, -0.1}, {PureProfile{{1, 1}}, 1.1}}};
  CHECK_THROWS_AS(negative.validate(), domain_error);
  JointDistribution short_sum{{{PureProfile{{0, 0}}, 0.5}}};
  CHECK_THROWS_AS(short_sum.validate(), domain_error);
}
