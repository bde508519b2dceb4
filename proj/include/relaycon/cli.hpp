#pragma once

// Command line front end. Each subcommand maps onto one library entry point;
// all human-readable output goes to `out`, diagnostics to `err`, and every
// JSON report embeds a manifest with input digests so identical invocations
// produce byte-identical files.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "relaycon/analysis.hpp"
#include "relaycon/conditions.hpp"
#include "relaycon/consensus.hpp"
#include "relaycon/families.hpp"
#include "relaycon/graph.hpp"
#include "relaycon/graph_io.hpp"
#include "relaycon/reduced.hpp"
#include "relaycon/report.hpp"
#include "relaycon/session_io.hpp"
#include "relaycon/version.hpp"

namespace relaycon {

inline constexpr int exit_ok = 0;
inline constexpr int exit_condition_fails = 1;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_budget_exceeded = 3;
inline constexpr int exit_frozen = 4;
inline constexpr int exit_rounds_exhausted = 5;
inline constexpr int exit_not_well_defined = 6;

namespace cli_detail {

inline std::optional<DirectedGraph> load_graph(const std::string& path,
                                               std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot read " << path << "\n";
    return std::nullopt;
  }
  try {
    return read_graph(in);
  } catch (const GraphFormatError& e) {
    err << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline std::string set_text(const std::set<int>& s) {
  std::string text = "{";
  for (int v : s) {
    if (text.size() > 1) text += ",";
    text += std::to_string(v);
  }
  return text + "}";
}

inline std::string partition_text(const Partition& p) {
  return "L=" + set_text(p.l_side) + " C=" + set_text(p.c_side) +
         " R=" + set_text(p.r_side) + " F=" + set_text(p.f_side);
}

class Stopwatch {
 public:
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Deterministic graph sampler. Values are taken straight off the engine so
// the sequence never depends on the standard library's distribution
// implementation; the modulo bias is irrelevant at these ranges.
class GraphSampler {
 public:
  explicit GraphSampler(std::uint64_t seed) : rng_(seed) {}

  int pick_int(int lo, int hi) {
    return lo +
           static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool chance(double p) { return (rng_() >> 11) * 0x1.0p-53 < p; }

  DirectedGraph directed(int n, double p) {
    DirectedGraph g(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (u != v && chance(p)) g.add_edge(u, v);
    return g;
  }

  DirectedGraph undirected(int n, double p) {
    DirectedGraph g(n);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (chance(p)) g.add_undirected(u, v);
    return g;
  }

 private:
  std::mt19937_64 rng_;
};

inline int cmd_check(const std::string& graph_path, int f, int l,
                     const std::string& report_path, std::ostream& out,
                     std::ostream& err) {
  auto g = load_graph(graph_path, err);
  if (!g) return exit_input_error;
  Stopwatch watch;
  Verdict v;
  try {
    v = check_condition_nc(*g, f, l);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }
  out << "condition NC " << (v.holds ? "holds" : "fails") << " (n=" << g->size()
      << ", f=" << f << ", l=" << l << ", partitions=" << v.checked << ")\n";
  if (!v.holds && v.witness)
    out << "witness: " << partition_text(*v.witness) << "\n";
  out << "elapsed ms: " << watch.ms() << "\n";
  if (!report_path.empty()) {
    try {
      RunManifest man;
      man.command = "check";
      man.parameters = {{"f", f}, {"l", l}};
      man.inputs[graph_path] = file_digest(graph_path);
      write_json_file(report_path, verdict_report_json("nc", v, man));
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
  }
  return v.holds ? exit_ok : exit_condition_fails;
}

inline int cmd_l0(const std::string& graph_path, int f,
                  const std::string& report_path, std::ostream& out,
                  std::ostream& err) {
  auto g = load_graph(graph_path, err);
  if (!g) return exit_input_error;
  Stopwatch watch;
  std::optional<int> depth;
  try {
    depth = find_l0(*g, f);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }
  if (depth)
    out << *depth << "\n";
  else
    out << "not-satisfiable\n";
  out << "elapsed ms: " << watch.ms() << "\n";
  if (!report_path.empty()) {
    try {
      RunManifest man;
      man.command = "l0";
      man.parameters = {{"f", f}};
      man.inputs[graph_path] = file_digest(graph_path);
      nlohmann::json j;
      j["schema_version"] = 1;
      j["manifest"] = man.to_json();
      j["satisfiable"] = depth.has_value();
      if (depth)
        j["l0"] = *depth;
      else
        j["l0"] = nullptr;
      write_json_file(report_path, j);
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
  }
  return depth ? exit_ok : exit_condition_fails;
}

inline int sources_in(const ReducedGraph& rg, int n) {
  std::vector<NodeMask> rows(static_cast<std::size_t>(n) + 1, 0);
  NodeMask present = 0;
  for (int v : rg.nodes) {
    rows[v] = node_bit(v);
    present |= node_bit(v);
  }
  for (const auto& e : rg.edges) rows[e.head] |= node_bit(e.tail);
  auto comps = detail::strong_component_masks(rows, present, n);
  int sources = 0;
  for (NodeMask comp : comps) {
    NodeMask incoming = 0;
    for (int v : list_of(comp)) incoming |= rows[v];
    if (!(incoming & present & ~comp)) ++sources;
  }
  return sources;
}

inline int cmd_reduced(const std::string& graph_path, int f, int l,
                       const std::vector<int>& faulty, bool equivalence,
                       std::uint64_t budget, const std::string& report_path,
                       std::ostream& out, std::ostream& err) {
  auto g = load_graph(graph_path, err);
  if (!g) return exit_input_error;
  int n = g->size();
  Stopwatch watch;
  if (equivalence) {
    Verdict nc, us;
    try {
      nc = check_condition_nc(*g, f, l);
      us = unique_source_condition(*g, f, l, budget);
    } catch (const BudgetExceeded& e) {
      err << e.what() << " (more than " << (e.combinations - 1)
          << " combinations)\n";
      return exit_budget_exceeded;
    } catch (const std::invalid_argument& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
    out << "condition NC: " << (nc.holds ? "holds" : "fails") << "\n";
    out << "unique source everywhere: " << (us.holds ? "holds" : "fails")
        << " (" << us.checked << " reduced graphs)\n";
    bool agree = nc.holds == us.holds;
    out << (agree ? (nc.holds ? "agree: holds" : "agree: fails") : "disagree")
        << "\n";
    out << "elapsed ms: " << watch.ms() << "\n";
    if (!report_path.empty()) {
      try {
        RunManifest man;
        man.command = "reduced";
        man.parameters = {{"f", f},
                          {"l", l},
                          {"equivalence", true},
                          {"budget", budget}};
        man.inputs[graph_path] = file_digest(graph_path);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["manifest"] = man.to_json();
        j["nc"] = to_json(nc);
        j["unique_source"] = to_json(us);
        j["agree"] = agree;
        write_json_file(report_path, j);
      } catch (const std::exception& e) {
        err << e.what() << "\n";
        return exit_input_error;
      }
    }
    return agree && nc.holds ? exit_ok : exit_condition_fails;
  }

  std::vector<std::set<int>> fsets;
  if (!faulty.empty()) {
    std::set<int> fs(faulty.begin(), faulty.end());
    for (int v : fs)
      if (v < 1 || v > n) {
        err << "faulty node " << v << " is out of range\n";
        return exit_input_error;
      }
    if (static_cast<int>(fs.size()) > f) {
      err << "faulty set larger than f\n";
      return exit_input_error;
    }
    fsets.push_back(std::move(fs));
  } else {
    std::vector<int> all;
    for (int v = 1; v <= n; ++v) all.push_back(v);
    for (int k = 0; k <= f; ++k)
      detail::for_each_combination(all, k, [&](const std::vector<int>& pick) {
        fsets.emplace_back(pick.begin(), pick.end());
        return false;
      });
  }

  nlohmann::json per_fset = nlohmann::json::array();
  std::uint64_t total = 0;
  try {
    for (const auto& fs : fsets) {
      std::map<int, std::uint64_t> hist;
      std::uint64_t count =
          enumerate_reduced_graphs(*g, fs, l, f, budget,
                                   [&](const ReducedGraph& rg) {
                                     ++hist[sources_in(rg, n)];
                                   });
      total += count;
      out << "F=" << set_text(fs) << ": " << count
          << " reduced graphs, sources";
      for (const auto& [s, c] : hist) out << " " << s << ":" << c;
      out << "\n";
      nlohmann::json e;
      e["F"] = fs;
      e["reduced_graphs"] = count;
      nlohmann::json hj = nlohmann::json::object();
      for (const auto& [s, c] : hist) hj[std::to_string(s)] = c;
      e["sources"] = hj;
      per_fset.push_back(e);
    }
  } catch (const BudgetExceeded& e) {
    err << e.what() << " (more than " << (e.combinations - 1)
        << " combinations)\n";
    return exit_budget_exceeded;
  }
  out << "total: " << total << " reduced graphs over " << fsets.size()
      << " fault sets\n";
  out << "elapsed ms: " << watch.ms() << "\n";
  if (!report_path.empty()) {
    try {
      RunManifest man;
      man.command = "reduced";
      man.parameters = {{"f", f}, {"l", l}, {"budget", budget}};
      if (!faulty.empty()) man.parameters["faulty"] = faulty;
      man.inputs[graph_path] = file_digest(graph_path);
      nlohmann::json j;
      j["schema_version"] = 1;
      j["manifest"] = man.to_json();
      j["fault_sets"] = per_fset;
      j["total"] = total;
      write_json_file(report_path, j);
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
  }
  return exit_ok;
}

inline int cmd_simulate(const std::string& config_path,
                        const std::string& trace_path,
                        const std::string& deep_path,
                        const std::string& analyze_path, std::ostream& out,
                        std::ostream& err) {
  SessionConfig cfg;
  try {
    cfg = parse_session_config(config_path);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }
  RunManifest man;
  man.command = "simulate";
  man.seed = cfg.seed;
  man.parameters = {{"l", cfg.l},
                    {"f", cfg.f},
                    {"max_rounds", cfg.max_rounds},
                    {"epsilon", format_double(cfg.epsilon)},
                    {"freeze_window", cfg.freeze_window}};
  try {
    man.inputs[config_path] = file_digest(config_path);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  Stopwatch watch;
  RunResult res;
  try {
    res = run(cfg);
  } catch (const TrimNotWellDefined& e) {
    err << "trim not well defined at node " << e.receiver << ", round "
        << e.round << "\n";
    return exit_not_well_defined;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  out << "outcome: " << outcome_name(res.outcome) << "\n";
  out << "rounds: " << res.rounds << "\n";
  out << "final spread: " << format_double(res.final_spread) << "\n";
  int bad_round = 0;
  for (const auto& rec : res.trace)
    if (!rec.valid) {
      bad_round = rec.t;
      break;
    }
  if (bad_round)
    out << "validity: violated at round " << bad_round << "\n";
  else
    out << "validity: ok\n";

  try {
    if (!trace_path.empty()) {
      std::ofstream o(trace_path);
      if (!o) throw std::runtime_error("cannot write " + trace_path);
      write_trace_csv(o, res);
    }
    if (!deep_path.empty())
      write_json_file(deep_path, deep_trace_json(res, cfg, man));
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  bool analysis_failed = false;
  if (!analyze_path.empty()) {
    std::vector<RoundAnalysis> rounds;
    bool rep_ok = true, rows_ok = true;
    double worst_reconstruction = 0;
    for (const auto& rec : res.trace) {
      RoundAnalysis ra;
      ra.t = rec.t;
      ra.build =
          build_weight_matrix(rec, cfg.faulty, cfg.f, cfg.l, cfg.graph.size());
      if (ra.build.ok) {
        ra.row_conditions =
            verify_row_conditions(ra.build, rec, cfg.graph, cfg.faulty, cfg.f, cfg.l);
        ra.reconstruction = reconstruction_error(ra.build, rec);
        worst_reconstruction = std::max(worst_reconstruction, ra.reconstruction);
        if (!ra.row_conditions.all_pass) rows_ok = false;
      } else {
        rep_ok = false;
      }
      rounds.push_back(std::move(ra));
    }
    ErgodicReport erg = verify_ergodic_decay(res, cfg);
    try {
      write_json_file(analyze_path, analysis_json(rounds, erg, man));
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
    out << "analysis: representation " << (rep_ok ? "ok" : "failed")
        << ", row conditions " << (rows_ok ? "ok" : "failed") << ", decay "
        << (erg.all_ok ? "ok" : "failed") << ", worst reconstruction "
        << format_double(worst_reconstruction) << "\n";
    analysis_failed = !rep_ok || !rows_ok || !erg.all_ok;
  }
  out << "elapsed ms: " << watch.ms() << "\n";
  if (analysis_failed) return exit_condition_fails;
  switch (res.outcome) {
    case Outcome::Converged:
      return exit_ok;
    case Outcome::Frozen:
      return exit_frozen;
    case Outcome::BudgetExhausted:
    default:
      return exit_rounds_exhausted;
  }
}

inline int cmd_generate(const std::string& family, int n,
                        const std::string& out_path, std::ostream& out,
                        std::ostream& err) {
  DirectedGraph g(2);
  std::string comment;
  try {
    if (family == "fig1") {
      if (n != 0 && n != 5) throw std::invalid_argument("fig1 has 5 nodes");
      g = build_fig1();
      comment = "family=fig1 n=5";
    } else if (n == 0) {
      throw std::invalid_argument("--n is required for family " + family);
    } else if (family == "fig2") {
      g = build_fig2(n);
      comment = "family=fig2 n=" + std::to_string(n);
    } else if (family == "complete") {
      g = build_complete(n);
      comment = "family=complete n=" + std::to_string(n);
    } else {
      g = build_density_family(n);
      comment = "family=density n=" + std::to_string(n);
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }
  if (out_path.empty()) {
    write_graph(out, g, comment);
  } else {
    std::ofstream o(out_path);
    if (!o) {
      err << "cannot write " << out_path << "\n";
      return exit_input_error;
    }
    write_graph(o, g, comment);
    out << "wrote " << out_path << " (" << g.size() << " nodes, "
        << g.edge_count() << " directed edges)\n";
  }
  return exit_ok;
}

inline int cmd_equiv(const std::string& mode, int n_max, int f, int samples,
                     std::uint64_t seed, int l_opt, std::uint64_t budget,
                     const std::string& report_path, std::ostream& out,
                     std::ostream& err) {
  Stopwatch watch;
  long long total = 0, holds_count = 0, disagreements = 0;
  std::vector<std::string> repro;

  auto eval = [&](const DirectedGraph& g, const std::string& tag) {
    ++total;
    bool agree = true;
    std::string detail;
    if (mode == "undirected") {
      auto rep = check_undirected_equivalence(g, f);
      agree = rep.agree;
      if (rep.nc.holds) ++holds_count;
      detail = "size+connectivity=" +
               std::string(rep.size_and_connectivity ? "yes" : "no") +
               " nc=" + (rep.nc.holds ? "holds" : "fails");
    } else if (mode == "directed") {
      int ls = std::max(1, longest_path_length(g));
      bool a = check_condition_nc(g, f, ls).holds;
      bool b = check_condition_1(g, f).holds;
      bool c = check_propagate(g, f).holds;
      agree = a == b && b == c;
      if (a) ++holds_count;
      detail = std::string("nc=") + (a ? "1" : "0") + " edge-count=" +
               (b ? "1" : "0") + " propagate=" + (c ? "1" : "0");
    } else {
      int l = l_opt > 0 ? l_opt : std::max(1, longest_path_length(g));
      bool a = check_condition_nc(g, f, l).holds;
      bool b = unique_source_condition(g, f, l, budget).holds;
      agree = a == b;
      if (a) ++holds_count;
      detail = std::string("nc=") + (a ? "1" : "0") + " unique-source=" +
               (b ? "1" : "0");
    }
    if (!agree) {
      ++disagreements;
      if (repro.size() < 5) {
        std::ostringstream o;
        write_graph(o, g, tag + " " + detail);
        repro.push_back(o.str());
      }
    }
  };

  try {
    if (n_max <= 4) {
      int n = n_max;
      if (mode == "undirected") {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 1; u <= n; ++u)
          for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
        for (std::uint64_t bits = 0; bits < (1ull << pairs.size()); ++bits) {
          DirectedGraph g(n);
          for (std::size_t i = 0; i < pairs.size(); ++i)
            if (bits >> i & 1) g.add_undirected(pairs[i].first, pairs[i].second);
          eval(g, "exhaustive=" + std::to_string(bits));
        }
      } else {
        std::vector<std::pair<int, int>> arcs;
        for (int u = 1; u <= n; ++u)
          for (int v = 1; v <= n; ++v)
            if (u != v) arcs.emplace_back(u, v);
        for (std::uint64_t bits = 0; bits < (1ull << arcs.size()); ++bits) {
          DirectedGraph g(n);
          for (std::size_t i = 0; i < arcs.size(); ++i)
            if (bits >> i & 1) g.add_edge(arcs[i].first, arcs[i].second);
          eval(g, "exhaustive=" + std::to_string(bits));
        }
      }
    } else {
      GraphSampler sampler(seed);
      const double ps[3] = {0.3, 0.5, 0.7};
      for (int s = 0; s < samples; ++s) {
        int n = sampler.pick_int(4, n_max);
        double p = ps[sampler.pick_int(0, 2)];
        DirectedGraph g = mode == "undirected" ? sampler.undirected(n, p)
                                               : sampler.directed(n, p);
        eval(g, "sample=" + std::to_string(s));
      }
    }
  } catch (const BudgetExceeded& e) {
    err << e.what() << " (more than " << (e.combinations - 1)
        << " combinations)\n";
    return exit_budget_exceeded;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return exit_input_error;
  }

  out << "mode: " << mode << "\n";
  out << "graphs: " << total << ", condition holds on " << holds_count
      << ", disagreements: " << disagreements << "\n";
  for (const auto& r : repro) out << r;
  out << "elapsed ms: " << watch.ms() << "\n";
  if (!report_path.empty()) {
    try {
      RunManifest man;
      man.command = "equiv";
      man.seed = seed;
      man.parameters = {{"mode", mode},     {"n_max", n_max},
                        {"f", f},           {"samples", samples},
                        {"l", l_opt},       {"budget", budget}};
      nlohmann::json j;
      j["schema_version"] = 1;
      j["manifest"] = man.to_json();
      j["graphs"] = total;
      j["holds"] = holds_count;
      j["disagreements"] = disagreements;
      write_json_file(report_path, j);
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_input_error;
    }
  }
  return disagreements == 0 ? exit_ok : exit_condition_fails;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"bounded relay consensus toolkit"};
  app.set_version_flag("--version",
                       std::string("relaycon ") + version_string);
  app.require_subcommand(1);

  auto* c_check = app.add_subcommand(
      "check", "decide condition NC for a graph at a given f and relay depth");
  std::string check_graph, check_report;
  int check_f = 1, check_l = 1;
  c_check->add_option("graph", check_graph, "graph description file")
      ->required();
  c_check->add_option("--f", check_f, "fault budget")->check(CLI::Range(0, 61));
  c_check->add_option("--l", check_l, "relay depth")->check(CLI::Range(1, 61));
  c_check->add_option("--report", check_report, "write a JSON verdict here");

  auto* c_l0 = app.add_subcommand(
      "l0", "find the smallest relay depth at which condition NC holds");
  std::string l0_graph, l0_report;
  int l0_f = 1;
  c_l0->add_option("graph", l0_graph, "graph description file")->required();
  c_l0->add_option("--f", l0_f, "fault budget")->check(CLI::Range(0, 61));
  c_l0->add_option("--report", l0_report, "write a JSON verdict here");

  auto* c_reduced = app.add_subcommand(
      "reduced",
      "enumerate reduced graphs, or cross-check the single-source equivalence");
  std::string red_graph, red_report;
  int red_f = 1, red_l = 1;
  std::vector<int> red_faulty;
  bool red_equiv = false;
  std::uint64_t red_budget = 1ull << 22;
  c_reduced->add_option("graph", red_graph, "graph description file")
      ->required();
  c_reduced->add_option("--f", red_f, "fault budget")->check(CLI::Range(0, 61));
  c_reduced->add_option("--l", red_l, "relay depth")->check(CLI::Range(1, 61));
  c_reduced->add_option("--faulty", red_faulty,
                        "restrict to this fault set (node ids)");
  c_reduced->add_flag("--equivalence", red_equiv,
                      "compare condition NC against the unique-source check");
  c_reduced->add_option("--budget", red_budget,
                        "largest number of reduced graphs to walk");
  c_reduced->add_option("--report", red_report, "write a JSON report here");

  auto* c_sim = app.add_subcommand(
      "simulate", "run an iterative consensus session from a JSON config");
  std::string sim_config, sim_trace, sim_deep, sim_analyze;
  c_sim->add_option("config", sim_config, "session config file")->required();
  c_sim->add_option("--trace", sim_trace, "write a round/node/state CSV here");
  c_sim->add_option("--deep-trace", sim_deep,
                    "write a full per-round JSON trace here");
  c_sim->add_option("--analyze", sim_analyze,
                    "verify matrix representation and decay, write JSON here");

  auto* c_gen = app.add_subcommand("generate",
                                   "emit a built-in benchmark graph family");
  std::string gen_family, gen_out;
  int gen_n = 0;
  c_gen->add_option("--family", gen_family, "fig1, fig2, complete or density")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "complete", "density"}));
  c_gen->add_option("--n", gen_n, "node count")->check(CLI::Range(2, 62));
  c_gen->add_option("-o,--output", gen_out, "output file (stdout if absent)");

  auto* c_equiv = app.add_subcommand(
      "equiv", "cross-check condition characterizations on many graphs");
  std::string eq_mode, eq_report;
  int eq_nmax = 5, eq_f = 1, eq_samples = 300, eq_l = 0;
  std::uint64_t eq_seed = 1, eq_budget = 1ull << 22;
  c_equiv->add_option("--mode", eq_mode, "undirected, directed or theorem2")
      ->required()
      ->check(CLI::IsMember({"undirected", "directed", "theorem2"}));
  c_equiv
      ->add_option("--n-max", eq_nmax,
                   "largest node count; 4 or less runs exhaustively")
      ->check(CLI::Range(2, 12));
  c_equiv->add_option("--f", eq_f, "fault budget")->check(CLI::Range(0, 4));
  c_equiv->add_option("--samples", eq_samples, "graphs to sample")
      ->check(CLI::Range(1, 1000000));
  c_equiv->add_option("--seed", eq_seed, "sampler seed");
  c_equiv->add_option("--l", eq_l,
                      "relay depth for theorem2 (longest path if absent)")
      ->check(CLI::Range(0, 12));
  c_equiv->add_option("--budget", eq_budget,
                      "largest number of reduced graphs to walk");
  c_equiv->add_option("--report", eq_report, "write a JSON report here");

  try {
    std::vector<const char*> argv;
    argv.push_back("relaycon");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }

  if (app.got_subcommand(c_check))
    return cli_detail::cmd_check(check_graph, check_f, check_l, check_report,
                                 out, err);
  if (app.got_subcommand(c_l0))
    return cli_detail::cmd_l0(l0_graph, l0_f, l0_report, out, err);
  if (app.got_subcommand(c_reduced))
    return cli_detail::cmd_reduced(red_graph, red_f, red_l, red_faulty,
                                   red_equiv, red_budget, red_report, out, err);
  if (app.got_subcommand(c_sim))
    return cli_detail::cmd_simulate(sim_config, sim_trace, sim_deep,
                                    sim_analyze, out, err);
  if (app.got_subcommand(c_gen))
    return cli_detail::cmd_generate(gen_family, gen_n, gen_out, out, err);
  if (app.got_subcommand(c_equiv))
    return cli_detail::cmd_equiv(eq_mode, eq_nmax, eq_f, eq_samples, eq_seed,
                                 eq_l, eq_budget, eq_report, out, err);
  err << "no subcommand given\n";
  return exit_input_error;
}

}  // namespace relaycon
