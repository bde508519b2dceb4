#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relaycon/graph.hpp"
#include "relaycon/messaging.hpp"

// Round-based iterative averaging over relayed messages. Each round every
// node floods its current value along all paths of length at most l, an
// adversary rewrites or withholds messages whose path touches the fault set,
// and every fault-free node trims the delivered values and averages what
// survives together with its own previous state.

namespace relaycon {

enum class AdversaryKind { Honest, Split, Constant, Random, Silent };

struct AdversaryConfig {
  AdversaryKind kind = AdversaryKind::Honest;
  // split: push L-destined values to low, R-destined to high, the middle
  // group to the midpoint of the fault-free range
  double mu = 0, range_max = 1;
  double low_value = -1, high_value = 2;
  std::set<int> l_side{}, r_side{}, c_side{};
  // constant
  double value = 0;
  // random
  double lo = 0, hi = 1;
};

enum class DefaultPolicy { PreviousState, FixedValue, InitialMinimum };

struct SessionConfig {
  DirectedGraph graph{2};
  int l = 1;
  int f = 0;
  std::set<int> faulty;
  AdversaryConfig adversary;
  std::vector<double> initial;  // index v-1
  int max_rounds = 100;
  double epsilon = 1e-9;
  std::uint64_t seed = 0;
  DefaultPolicy default_policy = DefaultPolicy::PreviousState;
  double default_value = 0;
  int freeze_window = 5;
};

enum class TamperAction { Keep, SetValue, Withhold };

struct TamperDecision {
  TamperAction action = TamperAction::Keep;
  double value = 0;

  static TamperDecision keep() { return {}; }
  static TamperDecision set(double v) { return {TamperAction::SetValue, v}; }
  static TamperDecision withhold() { return {TamperAction::Withhold, 0}; }
};

struct AdversaryContext {
  int round = 0;
  const std::set<int>* faulty = nullptr;
  std::mt19937_64* rng = nullptr;

  bool touches_fault(const Message& m) const {
    for (int v : m.path.nodes)
      if (faulty->count(v)) return true;
    return false;
  }
};

using Strategy = std::function<TamperDecision(const Message&, AdversaryContext&)>;

class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Strategy make_strategy(const AdversaryConfig& a) {
  switch (a.kind) {
    case AdversaryKind::Honest:
      return [](const Message&, AdversaryContext&) {
        return TamperDecision::keep();
      };
    case AdversaryKind::Split:
      return [a](const Message& m, AdversaryContext& ctx) {
        if (!ctx.touches_fault(m)) return TamperDecision::keep();
        int d = m.destination();
        if (a.l_side.count(d)) return TamperDecision::set(a.low_value);
        if (a.r_side.count(d)) return TamperDecision::set(a.high_value);
        return TamperDecision::set((a.mu + a.range_max) / 2);
      };
    case AdversaryKind::Constant:
      return [a](const Message& m, AdversaryContext& ctx) {
        if (!ctx.touches_fault(m)) return TamperDecision::keep();
        return TamperDecision::set(a.value);
      };
    case AdversaryKind::Random:
      return [a](const Message& m, AdversaryContext& ctx) {
        if (!ctx.touches_fault(m)) return TamperDecision::keep();
        std::uniform_real_distribution<double> dist(a.lo, a.hi);
        return TamperDecision::set(dist(*ctx.rng));
      };
    case AdversaryKind::Silent:
      return [](const Message& m, AdversaryContext& ctx) {
        if (!ctx.touches_fault(m)) return TamperDecision::keep();
        return TamperDecision::withhold();
      };
  }
  throw std::logic_error("unknown adversary kind");
}

// Every message every node would send this round: all paths of length at
// most l from each source, stamped with the source's current value. Ordered
// by source, then destination, then path.
inline std::vector<Message> generate_outbound(const DirectedGraph& g, int l,
                                              const std::vector<double>& states) {
  if (static_cast<int>(states.size()) != g.size())
    throw std::invalid_argument("state vector size mismatch");
  std::vector<Message> out;
  for (int src = 1; src <= g.size(); ++src)
    for (int dst = 1; dst <= g.size(); ++dst)
      for (auto& p : enumerate_paths(g, src, dst, l))
        out.push_back(Message{states[src - 1], std::move(p)});
  return out;
}

// Runs the strategy over each message bound for a fault-free receiver and
// applies its decision. Any non-keep decision on a message whose path avoids
// the fault set is a contract violation. Withheld messages are replaced per
// the default-value policy.
inline std::map<int, std::vector<Message>> apply_adversary(
    const std::vector<Message>& outbound, const Strategy& strategy,
    const SessionConfig& cfg, const std::vector<double>& states, int round,
    std::mt19937_64& rng) {
  std::map<int, std::vector<Message>> delivered;
  AdversaryContext ctx{round, &cfg.faulty, &rng};
  for (const auto& m : outbound) {
    int r = m.destination();
    if (cfg.faulty.count(r)) continue;
    TamperDecision d = strategy(m, ctx);
    bool touchable = ctx.touches_fault(m);
    if (!touchable && d.action != TamperAction::Keep)
      throw ContractViolation("strategy altered a message with fault-free path at round " +
                              std::to_string(round));
    Message final = m;
    if (d.action == TamperAction::SetValue) {
      final.value = d.value;
    } else if (d.action == TamperAction::Withhold) {
      switch (cfg.default_policy) {
        case DefaultPolicy::PreviousState:
          final.value = states[r - 1];
          break;
        case DefaultPolicy::FixedValue:
          final.value = cfg.default_value;
          break;
        case DefaultPolicy::InitialMinimum: {
          double lo = std::numeric_limits<double>::infinity();
          for (int v = 1; v <= cfg.graph.size(); ++v)
            if (!cfg.faulty.count(v)) lo = std::min(lo, cfg.initial[v - 1]);
          final.value = lo;
          break;
        }
      }
    }
    delivered[r].push_back(std::move(final));
  }
  return delivered;
}

struct UpdateResult {
  double state = 0;
  double weight = 0;  // the uniform coefficient 1/(|kept|+1)
  TrimResult trim;
};

// One node's state transition: strip the self message, trim the rest, then
// average own previous state with the kept values at equal weight.
inline UpdateResult update_state(int node, const MessageSet& delivered,
                                 double previous, int f) {
  std::vector<Message> rest;
  bool have_self = false;
  for (const auto& m : delivered.items) {
    if (m.path.is_self_loop() && m.source() == node) {
      have_self = true;
      continue;
    }
    rest.push_back(m);
  }
  if (!have_self)
    throw std::invalid_argument("delivered set lacks the self message");
  UpdateResult r;
  try {
    r.trim = compute_trim(MessageSet{std::move(rest)}, f);
  } catch (TrimNotWellDefined& e) {
    e.receiver = node;
    throw;
  }
  double sum = previous;
  for (const auto& m : r.trim.kept.items) sum += m.value;
  std::size_t k = r.trim.kept.size();
  r.state = sum / static_cast<double>(k + 1);
  r.weight = 1.0 / static_cast<double>(k + 1);
  return r;
}

struct NodeRound {
  MessageSet delivered;
  TrimResult trim;
  double weight = 0;
  double before = 0;
  double after = 0;
};

struct RoundRecord {
  int t = 0;
  std::map<int, NodeRound> nodes;  // fault-free only
  double min_state = 0, max_state = 0;
  bool valid = true;  // states stayed inside the initial fault-free range
};

enum class Outcome { Converged, Frozen, BudgetExhausted };

struct RunResult {
  Outcome outcome = Outcome::BudgetExhausted;
  int rounds = 0;
  std::vector<RoundRecord> trace;
  std::vector<double> initial;
  std::vector<int> fault_free;
  double initial_min = 0, initial_max = 0;
  double final_spread = 0;
  std::vector<double> final_states;  // index v-1, faulty slots untouched
};

inline void validate(const SessionConfig& cfg) {
  int n = cfg.graph.size();
  if (static_cast<int>(cfg.initial.size()) != n)
    throw std::invalid_argument("initial state vector must list every node");
  for (double v : cfg.initial)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite initial state");
  if (cfg.l < 1) throw std::invalid_argument("l must be >= 1");
  if (cfg.f < 0) throw std::invalid_argument("f must be >= 0");
  if (static_cast<int>(cfg.faulty.size()) > cfg.f)
    throw std::invalid_argument("more faulty nodes than the budget f");
  for (int v : cfg.faulty)
    if (v < 1 || v > n)
      throw std::invalid_argument("faulty node id out of range: " +
                                  std::to_string(v));
  if (cfg.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (!(cfg.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (cfg.freeze_window < 1)
    throw std::invalid_argument("freeze_window must be >= 1");
  if (cfg.adversary.kind == AdversaryKind::Split) {
    const auto& a = cfg.adversary;
    for (int v = 1; v <= n; ++v) {
      if (cfg.faulty.count(v)) continue;
      int hits = static_cast<int>(a.l_side.count(v)) + static_cast<int>(a.r_side.count(v)) +
                 static_cast<int>(a.c_side.count(v));
      if (hits != 1)
        throw std::invalid_argument(
            "split adversary needs each fault-free node in exactly one group");
    }
  }
}

inline RunResult run(const SessionConfig& cfg) {
  validate(cfg);
  int n = cfg.graph.size();
  RunResult result;
  result.initial = cfg.initial;
  for (int v = 1; v <= n; ++v)
    if (!cfg.faulty.count(v)) result.fault_free.push_back(v);
  std::vector<double> states = cfg.initial;
  double mu0 = std::numeric_limits<double>::infinity(), top0 = -mu0;
  for (int v : result.fault_free) {
    mu0 = std::min(mu0, states[v - 1]);
    top0 = std::max(top0, states[v - 1]);
  }
  result.initial_min = mu0;
  result.initial_max = top0;
  Strategy strategy = make_strategy(cfg.adversary);
  std::mt19937_64 rng(cfg.seed);
  double spread = top0 - mu0;
  if (spread <= cfg.epsilon) {
    result.outcome = Outcome::Converged;
    result.final_spread = spread;
    result.final_states = states;
    return result;
  }
  double scale = std::max({1.0, std::fabs(mu0), std::fabs(top0)});
  int freeze_run = 0;
  bool converged = false;
  for (int t = 1; t <= cfg.max_rounds; ++t) {
    auto outbound = generate_outbound(cfg.graph, cfg.l, states);
    auto delivered = apply_adversary(outbound, strategy, cfg, states, t, rng);
    RoundRecord rec;
    rec.t = t;
    bool any_change = false;
    std::vector<double> next = states;
    for (int r : result.fault_free) {
      NodeRound nr;
      nr.delivered = MessageSet::from(std::move(delivered[r]));
      nr.before = states[r - 1];
      UpdateResult ur;
      try {
        ur = update_state(r, nr.delivered, nr.before, cfg.f);
      } catch (TrimNotWellDefined& e) {
        e.round = t;
        throw;
      }
      nr.trim = std::move(ur.trim);
      nr.weight = ur.weight;
      nr.after = ur.state;
      if (nr.after != nr.before) any_change = true;
      next[r - 1] = nr.after;
      rec.nodes.emplace(r, std::move(nr));
    }
    states = std::move(next);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int r : result.fault_free) {
      lo = std::min(lo, states[r - 1]);
      hi = std::max(hi, states[r - 1]);
    }
    rec.min_state = lo;
    rec.max_state = hi;
    double slack = 4.0 * std::numeric_limits<double>::epsilon() * scale * t;
    rec.valid = lo >= mu0 - slack && hi <= top0 + slack;
    result.trace.push_back(std::move(rec));
    result.rounds = t;
    freeze_run = any_change ? 0 : freeze_run + 1;
    spread = hi - lo;
    if (spread <= cfg.epsilon) {
      converged = true;
      break;
    }
  }
  result.final_spread = spread;
  result.final_states = states;
  if (converged)
    result.outcome = Outcome::Converged;
  else if (freeze_run >= cfg.freeze_window)
    result.outcome = Outcome::Frozen;
  else
    result.outcome = Outcome::BudgetExhausted;
  return result;
}

}  // namespace relaycon
