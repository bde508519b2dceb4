#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "relaycon/consensus.hpp"
#include "relaycon/graph_io.hpp"

// Session config files: JSON with a graph path (resolved relative to the
// config file), relay depth, fault budget, faulty list, adversary block,
// initial states (explicit list or the "split:mu,U" shorthand), and the
// run controls. Unknown adversary kinds or malformed fields throw.

namespace relaycon {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::set<int> int_set(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be a list");
  std::set<int> r;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw ConfigError(std::string(what) + " must hold integers");
    r.insert(v.get<int>());
  }
  return r;
}

inline AdversaryConfig parse_adversary(const nlohmann::json& j) {
  AdversaryConfig a;
  if (!j.is_object()) throw ConfigError("adversary must be an object");
  std::string kind = j.value("kind", "honest");
  if (kind == "honest") {
    a.kind = AdversaryKind::Honest;
  } else if (kind == "split") {
    a.kind = AdversaryKind::Split;
    a.mu = j.value("mu", 0.0);
    a.range_max = j.value("U", 1.0);
    a.low_value = j.value("mu_minus", a.mu - 1.0);
    a.high_value = j.value("U_plus", a.range_max + 1.0);
    if (j.contains("L")) a.l_side = int_set(j.at("L"), "adversary.L");
    if (j.contains("R")) a.r_side = int_set(j.at("R"), "adversary.R");
    if (j.contains("C")) a.c_side = int_set(j.at("C"), "adversary.C");
  } else if (kind == "constant") {
    a.kind = AdversaryKind::Constant;
    a.value = j.value("value", 0.0);
  } else if (kind == "random") {
    a.kind = AdversaryKind::Random;
    a.lo = j.value("lo", 0.0);
    a.hi = j.value("hi", 1.0);
    if (!(a.lo <= a.hi)) throw ConfigError("random adversary needs lo <= hi");
  } else if (kind == "silent") {
    a.kind = AdversaryKind::Silent;
  } else {
    throw ConfigError("unknown adversary kind: " + kind);
  }
  return a;
}

}  // namespace detail

inline SessionConfig parse_session_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SessionConfig cfg;
  if (!j.contains("graph")) throw ConfigError("config needs a graph path");
  std::filesystem::path gp = j.at("graph").get<std::string>();
  if (gp.is_relative()) gp = std::filesystem::path(path).parent_path() / gp;
  std::ifstream gin(gp);
  if (!gin) throw ConfigError("cannot read graph " + gp.string());
  try {
    cfg.graph = read_graph(gin);
  } catch (const GraphFormatError& e) {
    throw ConfigError(gp.string() + ": " + e.what());
  }
  if (!j.contains("l") || !j.contains("f"))
    throw ConfigError("config needs l and f");
  cfg.l = j.at("l").get<int>();
  cfg.f = j.at("f").get<int>();
  if (j.contains("faulty")) cfg.faulty = detail::int_set(j.at("faulty"), "faulty");
  if (j.contains("adversary"))
    cfg.adversary = detail::parse_adversary(j.at("adversary"));
  cfg.max_rounds = j.value("max_rounds", 100);
  cfg.epsilon = j.value("epsilon", 1e-9);
  cfg.seed = j.value("seed", 0ull);
  cfg.freeze_window = j.value("freeze_window", 5);
  if (j.contains("default_value_policy")) {
    const auto& p = j.at("default_value_policy");
    std::string kind = p.is_object() ? p.value("kind", "previous")
                                     : p.get<std::string>();
    if (kind == "previous") {
      cfg.default_policy = DefaultPolicy::PreviousState;
    } else if (kind == "constant") {
      cfg.default_policy = DefaultPolicy::FixedValue;
      cfg.default_value = p.is_object() ? p.value("value", 0.0) : 0.0;
    } else if (kind == "initial-min") {
      cfg.default_policy = DefaultPolicy::InitialMinimum;
    } else {
      throw ConfigError("unknown default value policy: " + kind);
    }
  }
  int n = cfg.graph.size();
  if (!j.contains("initial")) throw ConfigError("config needs initial states");
  const auto& init = j.at("initial");
  if (init.is_string()) {
    std::string s = init.get<std::string>();
    if (s.rfind("split:", 0) != 0)
      throw ConfigError("initial shorthand must look like split:mu,U");
    if (cfg.adversary.kind != AdversaryKind::Split)
      throw ConfigError("split initial shorthand needs the split adversary");
    std::string rest = s.substr(6);
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw ConfigError("initial shorthand must look like split:mu,U");
    double mu = 0, top = 0;
    try {
      mu = std::stod(rest.substr(0, comma));
      top = std::stod(rest.substr(comma + 1));
    } catch (const std::exception&) {
      throw ConfigError("initial shorthand must look like split:mu,U");
    }
    cfg.initial.assign(n, (mu + top) / 2);
    for (int v : cfg.adversary.l_side)
      if (v >= 1 && v <= n) cfg.initial[v - 1] = mu;
    for (int v : cfg.adversary.r_side)
      if (v >= 1 && v <= n) cfg.initial[v - 1] = top;
  } else if (init.is_array()) {
    if (static_cast<int>(init.size()) != n)
      throw ConfigError("initial states must list every node");
    cfg.initial.clear();
    for (const auto& v : init) {
      if (!v.is_number()) throw ConfigError("initial states must be numbers");
      cfg.initial.push_back(v.get<double>());
    }
  } else {
    throw ConfigError("initial must be a list or a split shorthand");
  }
  return cfg;
}

}  // namespace relaycon
