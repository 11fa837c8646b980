#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kantian/game.hpp"

namespace kantian {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string(what) + ": " + e.what());
  }
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + ")";
}

}  // namespace io_detail

// Game document:
//   {"players": n,
//    "actions": [[names for player 1], ...],
//    "payoffs": [{"profile": [action names], "u": [numbers]}, ...]}
// Every pure profile must appear exactly once.
inline Game parse_game(const std::string& text,
                       std::size_t max_profiles = kDefaultMaxProfiles) {
  const Json doc = io_detail::parse_json(text, "game document");
  if (!doc.is_object()) throw parse_error("game document: top level must be an object");
  if (!doc.contains("players") || !doc["players"].is_number_integer())
    throw parse_error("game document: missing integer field \"players\"");
  if (!doc.contains("actions") || !doc["actions"].is_array())
    throw parse_error("game document: missing array field \"actions\"");
  if (!doc.contains("payoffs") || !doc["payoffs"].is_array())
    throw parse_error("game document: missing array field \"payoffs\"");

  const int players = doc["players"].get<int>();
  if (players < 1) throw parse_error("game document: players must be >= 1");
  if (doc["actions"].size() != static_cast<std::size_t>(players))
    throw parse_error("game document: actions must list one action set per player");

  std::vector<std::vector<std::string>> actions;
  std::vector<std::map<std::string, int>> lookup(static_cast<std::size_t>(players));
  std::size_t profile_count = 1;
  for (int p = 0; p < players; ++p) {
    const Json& list = doc["actions"][static_cast<std::size_t>(p)];
    if (!list.is_array() || list.empty())
      throw parse_error("game document: player " + std::to_string(p + 1) +
                        " needs a nonempty action array");
    std::vector<std::string> names;
    for (const Json& name : list) {
      if (!name.is_string())
        throw parse_error("game document: action names must be strings");
      const std::string s = name.get<std::string>();
      if (!lookup[static_cast<std::size_t>(p)].emplace(s, static_cast<int>(names.size())).second)
        throw parse_error("game document: duplicate action name \"" + s + "\" for player " +
                          std::to_string(p + 1));
      names.push_back(s);
    }
    if (profile_count > max_profiles / names.size() + 1)
      throw domain_error("game document: profile count exceeds the cap of " +
                         std::to_string(max_profiles));
    profile_count *= names.size();
    actions.push_back(std::move(names));
  }
  if (profile_count > max_profiles)
    throw domain_error("game document: profile count " + std::to_string(profile_count) +
                       " exceeds the cap of " + std::to_string(max_profiles));

  std::vector<double> payoffs(profile_count * static_cast<std::size_t>(players), 0.0);
  std::vector<bool> seen(profile_count, false);

  for (const Json& entry : doc["payoffs"]) {
    if (!entry.is_object() || !entry.contains("profile") || !entry.contains("u"))
      throw parse_error("game document: each payoff entry needs \"profile\" and \"u\"");
    const Json& names = entry["profile"];
    const Json& u = entry["u"];
    if (!names.is_array() || names.size() != static_cast<std::size_t>(players))
      throw parse_error("game document: profile must list one action per player");
    if (!u.is_array() || u.size() != static_cast<std::size_t>(players))
      throw parse_error("game document: u must list one utility per player");

    std::vector<std::string> labels;
    std::size_t index = 0;
    for (int p = 0; p < players; ++p) {
      if (!names[static_cast<std::size_t>(p)].is_string())
        throw parse_error("game document: profile entries must be strings");
      const std::string s = names[static_cast<std::size_t>(p)].get<std::string>();
      labels.push_back(s);
      const auto it = lookup[static_cast<std::size_t>(p)].find(s);
      if (it == lookup[static_cast<std::size_t>(p)].end())
        throw parse_error("game document: unknown action name \"" + s + "\" for player " +
                          std::to_string(p + 1));
      index = index * actions[static_cast<std::size_t>(p)].size() +
              static_cast<std::size_t>(it->second);
    }
    if (seen[index])
      throw parse_error("game document: duplicate payoff entry for profile " +
                        io_detail::join_names(labels));
    seen[index] = true;
    for (int p = 0; p < players; ++p) {
      if (!u[static_cast<std::size_t>(p)].is_number())
        throw parse_error("game document: utilities must be numbers");
      payoffs[index * static_cast<std::size_t>(players) + static_cast<std::size_t>(p)] =
          u[static_cast<std::size_t>(p)].get<double>();
    }
  }

  for (std::size_t idx = 0; idx < profile_count; ++idx) {
    if (seen[idx]) continue;
    std::vector<std::string> labels;
    std::size_t rest = idx;
    std::vector<int> choices(static_cast<std::size_t>(players));
    for (int p = players - 1; p >= 0; --p) {
      choices[static_cast<std::size_t>(p)] =
          static_cast<int>(rest % actions[static_cast<std::size_t>(p)].size());
      rest /= actions[static_cast<std::size_t>(p)].size();
    }
    for (int p = 0; p < players; ++p)
      labels.push_back(
          actions[static_cast<std::size_t>(p)][static_cast<std::size_t>(choices[static_cast<std::size_t>(p)])]);
    throw parse_error("game document: missing payoff entry for profile " +
                      io_detail::join_names(labels));
  }

  return Game(std::move(actions), std::move(payoffs));
}

inline Json game_to_json(const Game& game) {
  Json doc;
  doc["players"] = game.num_players();
  Json actions = Json::array();
  for (int p = 0; p < game.num_players(); ++p) actions.push_back(game.actions(p));
  doc["actions"] = std::move(actions);
  Json payoffs = Json::array();
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    const PureProfile profile = game.profile_at(idx);
    Json entry;
    entry["profile"] = game.profile_names(profile);
    entry["u"] = game.utility_at(idx);
    payoffs.push_back(std::move(entry));
  }
  doc["payoffs"] = std::move(payoffs);
  return doc;
}

// Distribution document: [{"profile": [action names], "p": number}, ...]
inline JointDistribution parse_distribution(const std::string& text, const Game& game) {
  const Json doc = io_detail::parse_json(text, "distribution document");
  if (!doc.is_array())
    throw parse_error("distribution document: top level must be an array");
  JointDistribution dist;
  for (const Json& entry : doc) {
    if (!entry.is_object() || !entry.contains("profile") || !entry.contains("p"))
      throw parse_error("distribution document: entries need \"profile\" and \"p\"");
    if (!entry["p"].is_number())
      throw parse_error("distribution document: p must be a number");
    const Json& names = entry["profile"];
    if (!names.is_array() || names.size() != static_cast<std::size_t>(game.num_players()))
      throw parse_error("distribution document: profile must list one action per player");
    PureProfile profile;
    for (int p = 0; p < game.num_players(); ++p) {
      const std::string s = names[static_cast<std::size_t>(p)].get<std::string>();
      const auto& list = game.actions(p);
      const auto it = std::find(list.begin(), list.end(), s);
      if (it == list.end())
        throw parse_error("distribution document: unknown action name \"" + s + "\"");
      profile.choices.push_back(static_cast<int>(it - list.begin()));
    }
    dist.support.emplace_back(std::move(profile), entry["p"].get<double>());
  }
  try {
    dist.validate();
  } catch (const domain_error& e) {
    throw parse_error(std::string("distribution document: ") + e.what());
  }
  return dist;
}

// Variation family document:
//   {"family": [{"name": label, "map": {"from": "to", ...}}, ...]}
// Every map must be total on the game's common action set.
inline VariationFamily parse_family(const std::string& text, const Game& game) {
  detail::require_identical_actions(game, "variation family");
  const Json doc = io_detail::parse_json(text, "family document");
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_array())
    throw parse_error("family document: expected {\"family\": [...]}");
  const auto& names = game.actions(0);
  VariationFamily family;
  for (const Json& entry : doc["family"]) {
    if (!entry.is_object() || !entry.contains("map") || !entry["map"].is_object())
      throw parse_error("family document: each entry needs a \"map\" object");
    family.labels.push_back(entry.contains("name") && entry["name"].is_string()
                                ? entry["name"].get<std::string>()
                                : "r" + std::to_string(family.labels.size()));
    std::vector<int> map(names.size(), -1);
    for (const auto& [from, to] : entry["map"].items()) {
      const auto from_it = std::find(names.begin(), names.end(), from);
      if (from_it == names.end())
        throw parse_error("family document: unknown action \"" + from + "\"");
      if (!to.is_string())
        throw parse_error("family document: map targets must be action names");
      const auto to_it = std::find(names.begin(), names.end(), to.get<std::string>());
      if (to_it == names.end())
        throw parse_error("family document: unknown action \"" + to.get<std::string>() + "\"");
      map[static_cast<std::size_t>(from_it - names.begin())] =
          static_cast<int>(to_it - names.begin());
    }
    for (std::size_t a = 0; a < map.size(); ++a)
      if (map[a] < 0)
        throw parse_error("family document: map is missing action \"" + names[a] + "\"");
    family.maps.push_back(std::move(map));
  }
  if (family.maps.empty()) throw parse_error("family document: family must be nonempty");
  return family;
}

// Graph document, either form:
//   {"adj": [[neighbors of vertex 0], ...]}
//   {"n": vertices, "edges": [[u, v], ...]}
// Returns the symmetric 0/1 adjacency matrix, zero diagonal.
inline std::vector<std::vector<int>> parse_graph(const std::string& text) {
  const Json doc = io_detail::parse_json(text, "graph document");
  if (!doc.is_object()) throw parse_error("graph document: top level must be an object");
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  if (doc.contains("adj")) {
    if (!doc["adj"].is_array()) throw parse_error("graph document: adj must be an array");
    n = static_cast<int>(doc["adj"].size());
    for (int u = 0; u < n; ++u)
      for (const Json& v : doc["adj"][static_cast<std::size_t>(u)])
        edges.emplace_back(u, v.get<int>());
  } else if (doc.contains("n") && doc.contains("edges")) {
    n = doc["n"].get<int>();
    for (const Json& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw parse_error("graph document: edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } else {
    throw parse_error("graph document: expected \"adj\" or \"n\"+\"edges\"");
  }
  if (n < 1) throw parse_error("graph document: graph needs at least one vertex");
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n),
                                          std::vector<int>(static_cast<std::size_t>(n), 0));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw parse_error("graph document: vertex index out of range");
    if (u == v) continue;
    adjacency[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adjacency[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  return adjacency;
}

inline Game game_from_adjacency(const std::vector<std::vector<int>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::string> actions;
  for (std::size_t v = 0; v < n; ++v) actions.push_back("v" + std::to_string(v));
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = adjacency[i][j];
  return Game::symmetric_bimatrix(std::move(actions), a);
}

}  // namespace kantian
