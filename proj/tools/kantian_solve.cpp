// kantian-solve: command-line front end for the equilibrium solvers.
// Reports are JSON on stdout; errors are JSON on stderr.
// Exit codes: 0 ok, 2 usage/parse error, 3 domain/unsupported game,
// 4 internal numeric failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kantian/equilibria.hpp"
#include "kantian/game.hpp"
#include "kantian/greed.hpp"
#include "kantian/io.hpp"
#include "kantian/pareto.hpp"
#include "kantian/protocols.hpp"
#include "kantian/welfare.hpp"

namespace {

using kantian::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kantian::parse_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t profile_cap() {
  if (const char* env = std::getenv("KANTIAN_SOLVE_MAX_PROFILES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw kantian::parse_error("KANTIAN_SOLVE_MAX_PROFILES must be a positive integer");
  }
  return kantian::kDefaultMaxProfiles;
}

kantian::Game load_game(const std::string& path) {
  return kantian::parse_game(read_file(path), profile_cap());
}

// JSON has no infinity; report unbounded ratios as null.
Json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json profile_json(const kantian::Game& game, const kantian::PureProfile& profile) {
  return Json(game.profile_names(profile));
}

Json distribution_json(const kantian::Game& game, const kantian::JointDistribution& dist) {
  Json out = Json::array();
  for (const auto& [profile, p] : dist.support) {
    Json entry;
    entry["profile"] = profile_json(game, profile);
    entry["p"] = p;
    entry["u"] = game.utility(profile);
    out.push_back(std::move(entry));
  }
  return out;
}

Json welfare_json(const kantian::Game& game, const kantian::EquilibriumReport& report) {
  Json out;
  out["kind"] = kantian::to_string(report.kind);
  out["stage1_value"] = report.stage1_value;
  out["support"] = distribution_json(game, report.distribution);
  out["expected_utilities"] = report.expected_utilities;
  if (report.percentiles) out["percentiles"] = report.percentiles->perc;
  if (report.aspiration) {
    out["nep"] = report.aspiration->nep;
    Json happy = Json::array();
    for (const auto& row : report.aspiration->happy) {
      Json r = Json::array();
      for (bool h : row) r.push_back(h);
      happy.push_back(std::move(r));
    }
    out["happy"] = std::move(happy);
  }
  out["diagnostics"] = report.lp_statuses;
  return out;
}

Json protocol_json(const kantian::ProtocolRun& run, const kantian::Game* game) {
  Json out;
  out["protocol"] = run.protocol;
  out["n_agents"] = run.n_agents;
  out["seed"] = run.seed;
  out["trials"] = run.trials;
  Json exact = Json::array();
  for (const auto& [profile, p] : run.exact_distribution.support) {
    Json entry;
    if (game != nullptr) {
      entry["profile"] = profile_json(*game, profile);
    } else {
      Json names = Json::array();
      for (int c : profile.choices) names.push_back(c == 0 ? "S" : "D");
      entry["profile"] = std::move(names);
    }
    entry["p"] = p;
    exact.push_back(std::move(entry));
  }
  out["exact_distribution"] = std::move(exact);
  out["exact_expected_utilities"] = run.exact_expected_utilities;
  if (run.trials > 0) {
    out["empirical_means"] = run.empirical_means;
    out["standard_errors"] = run.standard_errors;
  }
  if (run.min_submitters >= 0) {
    out["min_submitters"] = run.min_submitters;
    out["max_submitters"] = run.max_submitters;
  }
  return out;
}

int max_clique_size(const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  int best = 0;
  std::vector<int> clique;
  // plain branch and bound over candidate vertices in ascending order
  auto extend = [&](auto&& self, std::vector<int>& candidates) -> void {
    if (static_cast<int>(clique.size()) > best) best = static_cast<int>(clique.size());
    if (static_cast<int>(clique.size() + candidates.size()) <= best) return;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (static_cast<int>(clique.size() + candidates.size() - k) <= best) return;
      const int v = candidates[k];
      std::vector<int> next;
      for (std::size_t j = k + 1; j < candidates.size(); ++j)
        if (adjacency[static_cast<std::size_t>(v)][static_cast<std::size_t>(candidates[j])])
          next.push_back(candidates[j]);
      clique.push_back(v);
      self(self, next);
      clique.pop_back();
    }
  };
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  extend(extend, all);
  return best;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"Solvers for Kantian and other-regarding equilibria of finite normal-form games"};
  app.require_subcommand(1);

  std::string game_path, family_path, dist_path, graph_path, method = "exact", kind, name;
  std::string lambda_arg;
  std::uint64_t seed = 1;
  long trials = 0;
  int n = 0, restarts = 32, iterations = 2000;

  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto-optimal pure profiles");
  pareto_cmd->add_option("-g,--game", game_path, "game JSON file")->required();

  auto* kpure = app.add_subcommand("kantian-pure", "pure Kantian equilibria");
  kpure->add_option("-g,--game", game_path, "game JSON file")->required();
  kpure->add_option("--family", family_path, "variation family JSON (default: replace-all)");

  auto* kmixed = app.add_subcommand("kantian-mixed", "mixed Kantian equilibrium");
  kmixed->add_option("-g,--game", game_path, "game JSON file")->required();
  kmixed->add_option("--method", method, "exact | replicator")
      ->check(CLI::IsMember({"exact", "replicator"}));
  kmixed->add_option("--seed", seed, "replicator seed");
  kmixed->add_option("--restarts", restarts, "replicator restarts");
  kmixed->add_option("--iters", iterations, "replicator iterations");

  auto* pom_cmd = app.add_subcommand("pom", "price of miscoordination");
  pom_cmd->add_option("-g,--game", game_path, "game JSON file")->required();

  auto* welfare_cmd = app.add_subcommand("welfare", "other-regarding welfare equilibria");
  welfare_cmd->add_option("-g,--game", game_path, "game JSON file")->required();
  welfare_cmd->add_option("--kind", kind, "rawlsian | bentham | bestoff | percentile | aspiration")
      ->required()
      ->check(CLI::IsMember({"rawlsian", "bentham", "bestoff", "percentile", "aspiration"}));

  auto* greed_cmd = app.add_subcommand("greed", "bounded-greed transform and its pure Nash set");
  greed_cmd->add_option("-g,--game", game_path, "game JSON file")->required();
  greed_cmd->add_option("--lambda", lambda_arg, "comma-separated lambdas, one per player (inf allowed)")
      ->required();

  auto* nash_cmd = app.add_subcommand("nash", "pure Nash equilibria");
  nash_cmd->add_option("-g,--game", game_path, "game JSON file")->required();

  auto* platonia_cmd = app.add_subcommand("platonia", "closed-form mixed Kantian equilibrium");
  platonia_cmd->add_option("--n", n, "number of agents")->required();

  auto* protocol_cmd = app.add_subcommand("protocol", "run a program-equilibrium protocol");
  protocol_cmd->add_option("--name", name, "bos | anticoord | choose-winner")
      ->required()
      ->check(CLI::IsMember({"bos", "anticoord", "choose-winner"}));
  protocol_cmd->add_option("-g,--game", game_path, "game JSON file (bos/anticoord)");
  protocol_cmd->add_option("--n", n, "number of agents (choose-winner)");
  protocol_cmd->add_option("--seed", seed, "rng seed");
  protocol_cmd->add_option("--trials", trials, "simulation trials");

  auto* verify_cmd = app.add_subcommand("verify", "check program-equilibrium conditions (a), (c)");
  verify_cmd->add_option("-g,--game", game_path, "game JSON file")->required();
  verify_cmd->add_option("--dist", dist_path, "distribution JSON file")->required();

  auto* clique_cmd = app.add_subcommand("clique-demo",
                                        "quadratic simplex optimum vs maximum clique");
  clique_cmd->add_option("--graph", graph_path, "graph JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = std::string("usage: ") + e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }

  if (pareto_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    const kantian::ParetoSet pareto = kantian::pareto_optimal_profiles(game, profile_cap());
    Json out;
    out["count"] = pareto.size();
    Json set = Json::array();
    for (std::size_t a = 0; a < pareto.size(); ++a) {
      Json entry;
      entry["profile"] = profile_json(game, pareto.profiles[a]);
      entry["u"] = pareto.payoffs[a];
      set.push_back(std::move(entry));
    }
    out["pareto_set"] = std::move(set);
    emit(out);
  } else if (kpure->parsed()) {
    const kantian::Game game = load_game(game_path);
    kantian::VariationFamily family =
        family_path.empty() ? kantian::VariationFamily::replace_all(game.actions(0))
                            : kantian::parse_family(read_file(family_path), game);
    const kantian::KantianResult result = kantian::pure_kantian(game, family);
    Json out;
    out["family"] = family_path.empty() ? "replace_all" : family_path;
    Json eq = Json::array();
    for (std::size_t k = 0; k < result.equilibria.size(); ++k) {
      Json entry;
      entry["profile"] = profile_json(game, result.equilibria[k]);
      entry["u"] = result.payoffs[k];
      eq.push_back(std::move(entry));
    }
    out["equilibria"] = std::move(eq);
    emit(out);
  } else if (kmixed->parsed()) {
    const kantian::Game game = load_game(game_path);
    const kantian::MixedKantianResult result =
        method == "exact" ? kantian::mixed_kantian_exact(game)
                          : kantian::mixed_kantian_replicator(game, seed, restarts, iterations);
    Json out;
    out["method"] = kantian::to_string(result.method);
    out["actions"] = game.actions(0);
    out["strategy"] = result.strategy.weights;
    out["value"] = result.value;
    out["certificate"] = {{"lambda", result.kkt_lambda},
                          {"max_off_support_violation", result.max_off_support_violation}};
    emit(out);
  } else if (pom_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    const kantian::MiscoordinationReport report = kantian::price_of_miscoordination(game);
    Json out;
    Json actions = Json::array();
    for (int a : report.kantian_actions)
      actions.push_back(game.actions(0)[static_cast<std::size_t>(a)]);
    out["kantian_actions"] = std::move(actions);
    out["kantian_payoff"] = report.kantian_payoff;
    out["worst_payoff"] = report.worst_payoff;
    out["price"] = finite_or_null(report.price);
    out["uniform_mixing_expected_utilities"] = report.uniform_expected_utilities;
    out["uniform_ratio"] = finite_or_null(report.uniform_ratio);
    out["theoretical_range"] = {report.range_low, report.range_high};
    emit(out);
  } else if (welfare_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    kantian::WelfareKind which = kantian::WelfareKind::rawlsian;
    if (kind == "bentham") which = kantian::WelfareKind::bentham_harsanyi;
    else if (kind == "bestoff") which = kantian::WelfareKind::best_off;
    else if (kind == "percentile") which = kantian::WelfareKind::rawlsian_percentile;
    else if (kind == "aspiration") which = kantian::WelfareKind::aspiration;
    emit(welfare_json(game, kantian::welfare_equilibrium(game, which, profile_cap())));
  } else if (greed_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    kantian::GreedParams params;
    std::stringstream ss(lambda_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token == "inf" || token == "Inf" || token == "INF" || token == "infinity")
        params.lambda.push_back(std::numeric_limits<double>::infinity());
      else {
        try {
          params.lambda.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw kantian::parse_error("bad lambda value: " + token);
        }
      }
    }
    const kantian::TransformedGame transformed = kantian::greed_transform(game, params);
    Json out;
    out["lambda"] = Json::array();
    out["greed_index"] = Json::array();
    for (double l : params.lambda) {
      out["lambda"].push_back(finite_or_null(l));
      out["greed_index"].push_back(finite_or_null(kantian::GreedParams::greed_index(l)));
    }
    out["kantian_action"] =
        game.actions(0)[static_cast<std::size_t>(transformed.kantian_action)];
    out["kantian_payoff"] = transformed.kantian_payoff;
    Json tempted = Json::array();
    for (bool t : transformed.tempted) tempted.push_back(t);
    out["tempted"] = std::move(tempted);
    out["transformed_game"] = kantian::game_to_json(transformed.game);
    Json nash = Json::array();
    for (const auto& profile : kantian::pure_nash(transformed.game))
      nash.push_back(profile_json(game, profile));
    out["pure_nash"] = std::move(nash);
    emit(out);
  } else if (nash_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    Json out;
    Json nash = Json::array();
    for (const auto& profile : kantian::pure_nash(game))
      nash.push_back(profile_json(game, profile));
    out["pure_nash"] = std::move(nash);
    emit(out);
  } else if (platonia_cmd->parsed()) {
    const kantian::PlatoniaResult result = kantian::platonia_mixed_kantian(n);
    Json out;
    out["n"] = n;
    out["p"] = result.p;
    out["expected_payoff"] = result.expected_payoff;
    emit(out);
  } else if (protocol_cmd->parsed()) {
    if (name == "choose-winner") {
      if (n <= 0) throw kantian::parse_error("choose-winner needs --n");
      emit(protocol_json(kantian::run_choose_winner(n, seed, trials), nullptr));
    } else {
      if (game_path.empty()) throw kantian::parse_error("protocol " + name + " needs --game");
      const kantian::Game game = load_game(game_path);
      const kantian::ProtocolRun run = name == "bos"
                                           ? kantian::run_bos_protocol(game, seed, trials)
                                           : kantian::run_anticoord_protocol(game, seed, trials);
      emit(protocol_json(run, &game));
    }
  } else if (verify_cmd->parsed()) {
    const kantian::Game game = load_game(game_path);
    const kantian::JointDistribution dist =
        kantian::parse_distribution(read_file(dist_path), game);
    const kantian::CandidateVerdict verdict =
        kantian::verify_candidate(game, dist, profile_cap());
    Json out;
    out["supported_on_pareto"] = verdict.supported_on_pareto;
    out["undominated"] = verdict.undominated;
    out["improvement"] = verdict.improvement;
    out["witness"] = verdict.witness ? distribution_json(game, *verdict.witness) : Json(nullptr);
    out["note"] = verdict.note;
    emit(out);
  } else if (clique_cmd->parsed()) {
    const auto adjacency = kantian::parse_graph(read_file(graph_path));
    if (adjacency.size() > 20)
      throw kantian::domain_error("clique-demo is limited to 20 vertices");
    const kantian::Game game = kantian::game_from_adjacency(adjacency);
    const kantian::MixedKantianResult result = kantian::mixed_kantian_exact(game);
    Json out;
    out["n"] = adjacency.size();
    out["quadratic_optimum"] = result.value;
    out["implied_clique_size"] = 1.0 / (1.0 - result.value);
    out["clique_number"] = max_clique_size(adjacency);
    out["strategy"] = result.strategy.weights;
    emit(out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const kantian::parse_error& e) {
    Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const kantian::domain_error& e) {
    Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const kantian::numeric_error& e) {
    Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 4;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = std::string("internal: ") + e.what();
    std::cerr << err.dump() << "\n";
    return 4;
  }
}
