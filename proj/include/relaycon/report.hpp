#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "relaycon/analysis.hpp"
#include "relaycon/conditions.hpp"
#include "relaycon/consensus.hpp"
#include "relaycon/messaging.hpp"
#include "relaycon/version.hpp"

// Report and trace serialization. Reports embed a manifest (command,
// parameters, input digests, seed, tool version) so a run can be reproduced;
// wall time is shown on stdout only, keeping report files byte-stable across
// reruns. Message values serialize as decimal strings to survive round
// trips exactly.

namespace relaycon {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  char hex[32];
  std::snprintf(hex, sizeof hex, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
  return hex;
}

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, std::string> inputs;  // path -> digest
  std::uint64_t seed = 0;
  double wall_ms = 0;  // stdout display only, never written to reports

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["inputs"] = inputs;
    j["seed"] = seed;
    j["version"] = version_string;
    return j;
  }
};

inline nlohmann::json to_json(const Message& m) {
  nlohmann::json j;
  j["value"] = format_double(m.value);
  j["path"] = m.path.nodes;
  return j;
}

inline nlohmann::json to_json(const MessageSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& m : s.items) j.push_back(to_json(m));
  return j;
}

inline nlohmann::json to_json(const TrimResult& t) {
  nlohmann::json j;
  j["low"] = to_json(t.low);
  j["high"] = to_json(t.high);
  j["kept"] = to_json(t.kept);
  j["low_cover"] = t.low_cover;
  j["high_cover"] = t.high_cover;
  return j;
}

inline nlohmann::json to_json(const Partition& p) {
  nlohmann::json j;
  j["L"] = p.l_side;
  j["C"] = p.c_side;
  j["R"] = p.r_side;
  j["F"] = p.f_side;
  return j;
}

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["holds"] = v.holds;
  j["checked"] = v.checked;
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Converged:
      return "converged";
    case Outcome::Frozen:
      return "frozen";
    case Outcome::BudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

inline nlohmann::json deep_trace_json(const RunResult& r,
                                      const SessionConfig& cfg,
                                      const RunManifest& manifest) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["manifest"] = manifest.to_json();
  j["outcome"] = outcome_name(r.outcome);
  j["rounds"] = r.rounds;
  j["fault_free"] = r.fault_free;
  j["faulty"] = cfg.faulty;
  nlohmann::json init = nlohmann::json::array();
  for (double v : r.initial) init.push_back(format_double(v));
  j["initial"] = init;
  j["final_spread"] = format_double(r.final_spread);
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& rec : r.trace) {
    nlohmann::json rj;
    rj["t"] = rec.t;
    rj["min"] = format_double(rec.min_state);
    rj["max"] = format_double(rec.max_state);
    rj["valid"] = rec.valid;
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [node, nr] : rec.nodes) {
      nlohmann::json nj;
      nj["before"] = format_double(nr.before);
      nj["after"] = format_double(nr.after);
      nj["a"] = format_double(nr.weight);
      nj["delivered"] = to_json(nr.delivered);
      nj["trim"] = to_json(nr.trim);
      nodes[std::to_string(node)] = std::move(nj);
    }
    rj["nodes"] = std::move(nodes);
    rounds.push_back(std::move(rj));
  }
  j["rounds_detail"] = std::move(rounds);
  return j;
}

// One row per (round, fault-free node); round 0 carries the initial states.
inline void write_trace_csv(std::ostream& out, const RunResult& r) {
  out << "round,node,state\n";
  for (int node : r.fault_free)
    out << 0 << "," << node << "," << format_double(r.initial[node - 1]) << "\n";
  for (const auto& rec : r.trace)
    for (const auto& [node, nr] : rec.nodes)
      out << rec.t << "," << node << "," << format_double(nr.after) << "\n";
}

struct RoundAnalysis {
  int t = 0;
  MatrixBuild build;
  RowConditionReport row_conditions;
  double reconstruction = 0;
};

inline nlohmann::json analysis_json(const std::vector<RoundAnalysis>& rounds,
                                    const ErgodicReport& ergodic,
                                    const RunManifest& manifest) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["manifest"] = manifest.to_json();
  nlohmann::json rj = nlohmann::json::array();
  bool all_pass = ergodic.all_ok;
  double worst_reconstruction = 0;
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    const RoundAnalysis& ra = rounds[i];
    nlohmann::json e;
    e["t"] = ra.t;
    nlohmann::json shapes = nlohmann::json::object();
    for (const auto& rep : ra.build.reps)
      shapes[std::to_string(rep.node)] = rep.shape();
    e["shapes"] = std::move(shapes);
    e["represented"] = ra.build.ok;
    e["stochastic"] = ra.row_conditions.stochastic.pass;
    e["diagonal"] = ra.row_conditions.diagonal.pass;
    e["support"] = ra.row_conditions.support.pass;
    e["dominated"] = ra.row_conditions.dominated.pass;
    e["constructive"] = ra.row_conditions.constructive;
    e["fallback"] = ra.row_conditions.fallback_used;
    e["alpha"] = format_double(ra.row_conditions.alpha);
    e["beta"] = format_double(ra.row_conditions.beta);
    e["reconstruction_error"] = format_double(ra.reconstruction);
    if (i < ergodic.lambdas.size()) {
      e["lambda"] = format_double(ergodic.lambdas[i]);
      e["delta_cum"] = format_double(ergodic.deltas[i]);
      e["bound_cum"] = format_double(ergodic.bounds[i]);
      e["margin"] = format_double(ergodic.bounds[i] - ergodic.deltas[i]);
    }
    if (!ra.build.ok || !ra.row_conditions.all_pass) all_pass = false;
    worst_reconstruction = std::max(worst_reconstruction, ra.reconstruction);
    rj.push_back(std::move(e));
  }
  j["rounds"] = std::move(rj);
  nlohmann::json wj = nlohmann::json::array();
  for (const auto& w : ergodic.windows) {
    nlohmann::json e;
    e["first"] = w.first_t;
    e["last"] = w.last_t;
    e["positive_column"] = w.positive_column;
    e["lambda"] = format_double(w.lambda);
    e["ok"] = w.ok;
    wj.push_back(std::move(e));
  }
  j["windows"] = std::move(wj);
  nlohmann::json summary;
  summary["all_pass"] = all_pass;
  summary["decay_ok"] = ergodic.decay_ok;
  summary["final_delta"] = format_double(ergodic.final_delta);
  summary["convergence_delta_ok"] = ergodic.convergence_delta_ok;
  summary["worst_reconstruction_error"] = format_double(worst_reconstruction);
  j["summary"] = std::move(summary);
  return j;
}

inline nlohmann::json verdict_report_json(const std::string& condition,
                                          const Verdict& v,
                                          const RunManifest& manifest) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["manifest"] = manifest.to_json();
  j["condition"] = condition;
  j["result"] = to_json(v);
  return j;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace relaycon
