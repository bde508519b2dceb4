#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaycon/consensus.hpp"
#include "relaycon/graph.hpp"
#include "relaycon/reduced.hpp"

// White-box certification of a run. Each recorded round is rewritten as a
// row-stochastic matrix over the fault-free nodes: a node's own weight and
// its kept untampered messages enter directly, while the weight of tampered
// kept messages is split across the untampered discarded messages (or, when
// a discard side holds none, onto an extreme kept message) so that the matrix
// exactly reproduces the computed states from the previous ones. The checks
// then confirm the structural conditions that force asymptotic agreement.

namespace relaycon {

struct WeightMatrix {
  int t = 0;
  std::vector<int> nodes;  // fault-free, ascending
  std::vector<double> w;   // row-major, size nodes^2

  int dim() const { return static_cast<int>(nodes.size()); }

  int index_of(int node) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    if (it == nodes.end() || *it != node)
      throw std::out_of_range("node not in matrix");
    return static_cast<int>(it - nodes.begin());
  }

  double at(int i, int j) const { return w[i * dim() + j]; }
  double& at(int i, int j) { return w[i * dim() + j]; }
  double get(int node_i, int node_j) const {
    return at(index_of(node_i), index_of(node_j));
  }
};

struct NodeRepresentation {
  int node = 0;
  double a = 0;  // uniform update coefficient this round
  int s_good = 0, l_good = 0;  // untampered low / high discards
  int tampered_kept = 0;
  double low_ref = 0, high_ref = 0;  // side reference values for the split
  double low_share = std::numeric_limits<double>::infinity();
  double high_share = std::numeric_limits<double>::infinity();
  std::optional<Message> low_substitute, high_substitute;
  std::vector<double> gammas;
  bool ok = true;
  std::string note;

  // Which untampered discard sides exist, and whether tampered messages
  // survived the trim: "S"/"L" sides, "+T" tampered kept, "-" bare row.
  std::string shape() const {
    std::string s;
    if (s_good > 0) s += "S";
    if (l_good > 0) s += "L";
    if (tampered_kept > 0) s += s.empty() ? "T" : "+T";
    return s.empty() ? "-" : s;
  }
};

struct MatrixBuild {
  WeightMatrix m;
  std::vector<NodeRepresentation> reps;  // aligned with m.nodes
  bool ok = true;
  std::string error;
};

inline MatrixBuild build_weight_matrix(const RoundRecord& rec,
                                       const std::set<int>& fset, int f,
                                       int l, int n) {
  (void)f;
  (void)l;
  NodeMask fm = mask_of(fset);
  MatrixBuild out;
  out.m.t = rec.t;
  for (const auto& [node, nr] : rec.nodes) {
    (void)nr;
    out.m.nodes.push_back(node);
  }
  int k = static_cast<int>(out.m.nodes.size());
  if (k + static_cast<int>(fset.size()) != n) {
    out.ok = false;
    out.error = "round record does not cover all fault-free nodes";
    return out;
  }
  out.m.w.assign(static_cast<std::size_t>(k) * k, 0.0);
  auto tampered = [&](const Message& m) {
    return (m.path.vertex_mask() & fm) != 0;
  };
  for (const auto& [node, nr] : rec.nodes) {
    int row = out.m.index_of(node);
    NodeRepresentation rep;
    rep.node = node;
    rep.a = nr.weight;
    double a = nr.weight;
    auto add = [&](int src, double weight) {
      out.m.at(row, out.m.index_of(src)) += weight;
    };
    add(node, a);
    std::vector<const Message*> s_good, l_good, tk;
    for (const auto& m : nr.trim.low.items)
      if (!tampered(m)) s_good.push_back(&m);
    for (const auto& m : nr.trim.high.items)
      if (!tampered(m)) l_good.push_back(&m);
    for (const auto& m : nr.trim.kept.items) {
      if (tampered(m))
        tk.push_back(&m);
      else
        add(m.source(), a);
    }
    rep.s_good = static_cast<int>(s_good.size());
    rep.l_good = static_cast<int>(l_good.size());
    rep.tampered_kept = static_cast<int>(tk.size());
    auto mean = [](const std::vector<const Message*>& v) {
      double s = 0;
      for (const Message* m : v) s += m->value;
      return s / static_cast<double>(v.size());
    };
    if (!tk.empty()) {
      // tampered survivors: push each one's weight out to the sides
      double ws = 0, wl = 0;
      if (!s_good.empty()) {
        ws = mean(s_good);
      } else {
        const Message& sub = nr.trim.kept.items.front();
        if (tampered(sub)) {
          rep.ok = false;
          rep.note = "smallest kept message is tampered";
        }
        rep.low_substitute = sub;
        ws = sub.value;
      }
      if (!l_good.empty()) {
        wl = mean(l_good);
      } else {
        const Message& sub = nr.trim.kept.items.back();
        if (tampered(sub)) {
          rep.ok = false;
          rep.note = "largest kept message is tampered";
        }
        rep.high_substitute = sub;
        wl = sub.value;
      }
      rep.low_ref = ws;
      rep.high_ref = wl;
      double gamma_total = 0;
      for (const Message* m : tk) {
        double gamma = wl == ws ? 0.5 : (wl - m->value) / (wl - ws);
        rep.gammas.push_back(gamma);
        if (gamma < -1e-12 || gamma > 1 + 1e-12) {
          rep.ok = false;
          rep.note = "redistribution weight out of range";
        }
        gamma_total += gamma;
        if (!s_good.empty()) {
          double share = a * gamma / static_cast<double>(s_good.size());
          for (const Message* sm : s_good) add(sm->source(), share);
        } else {
          add(rep.low_substitute->source(), a * gamma);
        }
        if (!l_good.empty()) {
          double share = a * (1 - gamma) / static_cast<double>(l_good.size());
          for (const Message* lm : l_good) add(lm->source(), share);
        } else {
          add(rep.high_substitute->source(), a * (1 - gamma));
        }
      }
      if (!s_good.empty())
        rep.low_share = a * gamma_total / static_cast<double>(s_good.size());
      if (!l_good.empty())
        rep.high_share =
            a * (static_cast<double>(tk.size()) - gamma_total) /
            static_cast<double>(l_good.size());
    } else if (!s_good.empty() && !l_good.empty()) {
      // no tampered survivor, both sides present: split half the weight of
      // the smallest kept message across the sides so both stay represented
      if (nr.trim.kept.empty()) {
        rep.ok = false;
        rep.note = "no kept message to anchor the side split";
      } else {
        const Message& m0 = nr.trim.kept.items.front();
        double ws = mean(s_good), wl = mean(l_good);
        rep.low_ref = ws;
        rep.high_ref = wl;
        double gamma = wl == ws ? 0.5 : (wl - m0.value) / (wl - ws);
        rep.gammas.push_back(gamma);
        if (gamma < -1e-12 || gamma > 1 + 1e-12) {
          rep.ok = false;
          rep.note = "redistribution weight out of range";
        }
        add(m0.source(), -a / 2);
        rep.low_share = (a / 2) * gamma / static_cast<double>(s_good.size());
        rep.high_share =
            (a / 2) * (1 - gamma) / static_cast<double>(l_good.size());
        for (const Message* sm : s_good) add(sm->source(), rep.low_share);
        for (const Message* lm : l_good) add(lm->source(), rep.high_share);
      }
    }
    if (!rep.ok) {
      out.ok = false;
      if (out.error.empty())
        out.error = "node " + std::to_string(node) + ": " + rep.note;
    }
    out.reps.push_back(std::move(rep));
  }
  return out;
}

// Worst-case gap between M * states[t-1] and states[t] over the round's
// fault-free nodes; the matrix is only faithful if this is ~0.
inline double reconstruction_error(const MatrixBuild& mb,
                                   const RoundRecord& rec) {
  int k = mb.m.dim();
  std::vector<double> before(k), after(k);
  for (const auto& [node, nr] : rec.nodes) {
    int i = mb.m.index_of(node);
    before[i] = nr.before;
    after[i] = nr.after;
  }
  double worst = 0;
  for (int i = 0; i < k; ++i) {
    double s = 0;
    for (int j = 0; j < k; ++j) s += mb.m.at(i, j) * before[j];
    worst = std::max(worst, std::fabs(s - after[i]));
  }
  return worst;
}

namespace detail {

inline double delta_raw(const std::vector<double>& w, int k) {
  double worst = 0;
  for (int j = 0; j < k; ++j) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < k; ++i) {
      lo = std::min(lo, w[i * k + j]);
      hi = std::max(hi, w[i * k + j]);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

inline double lambda_raw(const std::vector<double>& w, int k) {
  double worst = 0;
  for (int i1 = 0; i1 < k; ++i1)
    for (int i2 = i1 + 1; i2 < k; ++i2) {
      double common = 0;
      for (int j = 0; j < k; ++j)
        common += std::min(w[i1 * k + j], w[i2 * k + j]);
      worst = std::max(worst, 1 - common);
    }
  return worst;
}

inline std::vector<double> matmul(const std::vector<double>& a,
                                  const std::vector<double>& b, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int q = 0; q < k; ++q) {
      double aiq = a[i * k + q];
      if (aiq == 0) continue;
      for (int j = 0; j < k; ++j) c[i * k + j] += aiq * b[q * k + j];
    }
  return c;
}

inline void require_stochastic(const WeightMatrix& m) {
  int k = m.dim();
  for (int i = 0; i < k; ++i) {
    double sum = 0;
    for (int j = 0; j < k; ++j) {
      if (m.at(i, j) < -1e-12)
        throw std::invalid_argument("negative matrix entry");
      sum += m.at(i, j);
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("matrix row does not sum to one");
  }
}

}  // namespace detail

// Largest column spread: zero exactly when all rows agree.
inline double delta_coefficient(const WeightMatrix& m) {
  detail::require_stochastic(m);
  return detail::delta_raw(m.w, m.dim());
}

// One minus the smallest common mass between two rows; products contract
// column spreads by this factor.
inline double lambda_coefficient(const WeightMatrix& m) {
  detail::require_stochastic(m);
  return detail::lambda_raw(m.w, m.dim());
}

struct CheckItem {
  bool pass = true;
  std::string detail;
};

struct RowConditionReport {
  CheckItem stochastic, diagonal, support, dominated;
  bool constructive = true;
  bool fallback_used = false;
  std::map<int, std::set<int>> chosen_cover;
  std::vector<NodeMask> h_rows;  // indexed by node id; in-neighbor masks
  double alpha = 0, beta = 0;
  bool all_pass = false;
};

// The four structural conditions on one round's matrix: rows are stochastic,
// self-weights clear the analytic floor, support only where a message was
// delivered, and some admissible reduced graph is entrywise dominated after
// scaling by beta. The cover recipe follows the per-row representation; if
// it misses, every reduced graph for this fault set is tried before failing.
inline RowConditionReport verify_row_conditions(const MatrixBuild& mb,
                                      const RoundRecord& rec,
                                      const DirectedGraph& g,
                                      const std::set<int>& fset, int f, int l,
                                      std::uint64_t fallback_budget = 1ull
                                                                      << 20) {
  RowConditionReport rep;
  const WeightMatrix& m = mb.m;
  int k = m.dim();
  int n = g.size();
  rep.beta = 1.0 / (16.0 * std::pow(static_cast<double>(n), 2.0 * l));
  double floor_a = 1.0 / (2.0 * std::pow(static_cast<double>(n), l));
  rep.alpha = std::numeric_limits<double>::infinity();
  for (const auto& r : mb.reps) rep.alpha = std::min(rep.alpha, r.a);

  for (int i = 0; i < k; ++i) {
    double sum = 0;
    for (int j = 0; j < k; ++j) {
      if (m.at(i, j) < -1e-12) {
        rep.stochastic.pass = false;
        rep.stochastic.detail = "negative entry in row of node " +
                                std::to_string(m.nodes[i]);
      }
      sum += m.at(i, j);
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      rep.stochastic.pass = false;
      rep.stochastic.detail =
          "row of node " + std::to_string(m.nodes[i]) + " sums to " +
          std::to_string(sum);
    }
  }

  for (const auto& r : mb.reps) {
    int i = m.index_of(r.node);
    if (m.at(i, i) < r.a - 1e-12 || r.a < floor_a - 1e-12) {
      rep.diagonal.pass = false;
      rep.diagonal.detail = "self weight too small at node " +
                            std::to_string(r.node);
    }
  }

  for (const auto& [node, nr] : rec.nodes) {
    int i = m.index_of(node);
    NodeMask sources = node_bit(node);
    for (const auto& msg : nr.delivered.items) sources |= node_bit(msg.source());
    for (int j = 0; j < k; ++j) {
      if (m.at(i, j) > 1e-12 && !(sources & node_bit(m.nodes[j]))) {
        rep.support.pass = false;
        rep.support.detail = "weight without a delivered message: " +
                             std::to_string(node) + " <- " +
                             std::to_string(m.nodes[j]);
      }
    }
  }

  // cover recipe per row, then replay the surviving paths to get H
  NodeMask alive = full_mask(n) & ~mask_of(fset);
  rep.h_rows.assign(n + 1, 0);
  double beta_tol = rep.beta * (1 - 1e-9);
  bool recipe_ok = true;
  std::map<int, NodeRepresentation const*> rep_of;
  for (const auto& r : mb.reps) rep_of[r.node] = &r;
  for (const auto& [node, nr] : rec.nodes) {
    const NodeRepresentation& r = *rep_of[node];
    std::set<int> cover;
    if (r.s_good == 0 && r.l_good == 0) {
      // nothing untampered was discarded; no cover needed
    } else if (r.s_good == 0) {
      cover.insert(nr.trim.high_cover.begin(), nr.trim.high_cover.end());
    } else if (r.l_good == 0) {
      cover.insert(nr.trim.low_cover.begin(), nr.trim.low_cover.end());
    } else if (r.low_share >= beta_tol) {
      cover.insert(nr.trim.high_cover.begin(), nr.trim.high_cover.end());
    } else if (r.high_share >= beta_tol) {
      cover.insert(nr.trim.low_cover.begin(), nr.trim.low_cover.end());
    } else {
      recipe_ok = false;
      break;
    }
    rep.chosen_cover[node] = cover;
  }
  auto h_row_for = [&](int node, const std::set<int>& cover) {
    NodeMask cm = mask_of(cover);
    NodeMask row = node_bit(node);
    for (int src : list_of(alive))
      for (const auto& p : enumerate_paths(g, src, node, l, alive))
        if (!(p.vertex_mask() & cm)) row |= node_bit(src);
    return row;
  };
  auto dominated_by = [&](const std::vector<NodeMask>& h_rows) {
    for (const auto& [node, nr] : rec.nodes) {
      (void)nr;
      int i = m.index_of(node);
      for (int src : list_of(h_rows[node]))
        if (m.at(i, m.index_of(src)) < rep.beta - 1e-12) return false;
    }
    return true;
  };
  bool dominated = false;
  if (recipe_ok) {
    for (const auto& [node, cover] : rep.chosen_cover)
      rep.h_rows[node] = h_row_for(node, cover);
    dominated = dominated_by(rep.h_rows);
  }
  if (!dominated) {
    rep.constructive = false;
    auto choices = detail::reduced_choices(g, fset, l, f);
    std::uint64_t combos = detail::option_product(choices, fallback_budget);
    if (combos <= fallback_budget && combos > 0) {
      std::vector<std::size_t> pick(choices.size(), 0);
      std::vector<NodeMask> rows(n + 1, 0);
      for (;;) {
        for (std::size_t i = 0; i < choices.size(); ++i)
          rows[choices[i].node] = choices[i].options[pick[i]].in_row;
        if (dominated_by(rows)) {
          dominated = true;
          rep.fallback_used = true;
          rep.h_rows = rows;
          rep.chosen_cover.clear();
          for (std::size_t i = 0; i < choices.size(); ++i)
            rep.chosen_cover[choices[i].node] =
                choices[i].options[pick[i]].cover;
          break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].options.size()) {
          pick[i] = 0;
          ++i;
        }
        if (i == pick.size()) break;
      }
    }
  }
  rep.dominated.pass = dominated;
  if (!dominated) rep.dominated.detail = "no reduced graph dominates the matrix";

  rep.all_pass = rep.stochastic.pass && rep.diagonal.pass &&
                 rep.support.pass && rep.dominated.pass;
  return rep;
}

struct ErgodicWindow {
  int first_t = 0, last_t = 0;
  bool positive_column = false;
  double lambda = 1;
  bool ok = true;
};

struct ErgodicReport {
  bool built = true;
  std::string error;
  std::vector<double> lambdas;  // per recorded round
  std::vector<double> deltas;   // column spread of the running product
  std::vector<double> bounds;   // running product of lambdas
  bool decay_ok = true;
  int first_violation = 0;
  double final_delta = 0;
  bool convergence_delta_ok = true;
  std::vector<ErgodicWindow> windows;
  bool all_ok = true;
};

// Multiplies the per-round matrices newest-first and confirms the column
// spreads fall at least as fast as the product of contraction coefficients;
// fixed-length windows are additionally checked for scrambling whenever
// their product shows a strictly positive column.
inline ErgodicReport verify_ergodic_decay(const RunResult& run,
                                          const SessionConfig& cfg,
                                          double target_delta = 1e-6) {
  ErgodicReport rep;
  int n = cfg.graph.size();
  std::vector<std::vector<double>> mats;
  int k = 0;
  for (const auto& rec : run.trace) {
    auto mb = build_weight_matrix(rec, cfg.faulty, cfg.f, cfg.l, n);
    if (!mb.ok) {
      rep.built = false;
      rep.all_ok = false;
      rep.error = "round " + std::to_string(rec.t) + ": " + mb.error;
      return rep;
    }
    k = mb.m.dim();
    try {
      rep.lambdas.push_back(lambda_coefficient(mb.m));
    } catch (const std::invalid_argument& e) {
      rep.built = false;
      rep.all_ok = false;
      rep.error = "round " + std::to_string(rec.t) + ": " + e.what();
      return rep;
    }
    mats.push_back(std::move(mb.m.w));
  }
  if (mats.empty()) {
    rep.final_delta = 0;
    return rep;
  }
  std::vector<double> prod(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) prod[i * k + i] = 1.0;
  double bound = 1.0;
  for (std::size_t t = 0; t < mats.size(); ++t) {
    prod = detail::matmul(mats[t], prod, k);
    bound *= rep.lambdas[t];
    double d = detail::delta_raw(prod, k);
    rep.deltas.push_back(d);
    rep.bounds.push_back(bound);
    if (d > bound + 1e-9 && rep.decay_ok) {
      rep.decay_ok = false;
      rep.first_violation = run.trace[t].t;
    }
  }
  rep.final_delta = rep.deltas.back();
  // the cumulative spread must be down to target by the first round where
  // the actual state spread is
  for (std::size_t t = 0; t < run.trace.size(); ++t) {
    if (run.trace[t].max_state - run.trace[t].min_state <= target_delta) {
      rep.convergence_delta_ok = rep.deltas[t] <= target_delta;
      break;
    }
  }
  int w = k;
  for (std::size_t start = 0; start + w <= mats.size(); start += w) {
    ErgodicWindow win;
    win.first_t = run.trace[start].t;
    win.last_t = run.trace[start + w - 1].t;
    std::vector<double> q = mats[start];
    for (int s = 1; s < w; ++s) q = detail::matmul(mats[start + s], q, k);
    for (int j = 0; j < k && !win.positive_column; ++j) {
      bool all = true;
      for (int i = 0; i < k; ++i)
        if (q[i * k + j] <= 1e-12) {
          all = false;
          break;
        }
      win.positive_column = all;
    }
    win.lambda = detail::lambda_raw(q, k);
    win.ok = !win.positive_column || win.lambda <= 1 - 1e-12;
    rep.windows.push_back(win);
  }
  for (const auto& win : rep.windows)
    if (!win.ok) rep.all_ok = false;
  if (!rep.decay_ok || !rep.convergence_delta_ok) rep.all_ok = false;
  return rep;
}

// Does some node's influence, following the given in-neighbor rows, blanket
// every alive node within `steps` hops?
inline bool power_has_positive_column(const std::vector<NodeMask>& in_rows,
                                      NodeMask alive, int steps) {
  for (int j : list_of(alive)) {
    NodeMask cur = node_bit(j);
    for (int s = 0; s < steps; ++s) {
      NodeMask nxt = cur;
      for (int w : list_of(alive))
        if (in_rows[w] & cur) nxt |= node_bit(w);
      if (nxt == cur) break;
      cur = nxt;
    }
    if ((cur & alive) == alive) return true;
  }
  return false;
}

}  // namespace relaycon
