#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relaycon/graph.hpp"

// Relayed messages and the trim procedure. A message is a value plus the
// path it claims to have traveled; a set of nodes covers a message when one
// of them sits on that path. Trimming discards the smallest and largest
// slices of a receiver's messages, each slice grown until no f nodes can
// cover it all, which caps how much influence any admissible fault set has.

namespace relaycon {

struct Message {
  double value = 0;
  Path path;

  int source() const { return path.source(); }
  int destination() const { return path.destination(); }

  bool operator==(const Message&) const = default;
};

// Total order: by value, ties broken by the path's node sequence.
inline bool message_less(const Message& a, const Message& b) {
  if (a.value != b.value) return a.value < b.value;
  return path_lex_less(a.path, b.path);
}

struct MessageSet {
  std::vector<Message> items;  // kept sorted by message_less

  static MessageSet from(std::vector<Message> v) {
    std::sort(v.begin(), v.end(), message_less);
    return MessageSet{std::move(v)};
  }

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
  auto begin() const { return items.begin(); }
  auto end() const { return items.end(); }
};

class TrimNotWellDefined : public std::runtime_error {
 public:
  TrimNotWellDefined(const std::string& msg, int recv)
      : std::runtime_error(msg), receiver(recv) {}
  int receiver = 0;
  int round = 0;
};

namespace detail {

inline NodeMask cover_positions(const Message& m, int excluded) {
  return m.path.vertex_mask() & ~node_bit(excluded);
}

// Can some node set of size <= f cover every message in pm[lo, hi)?
inline bool cover_at_most(const std::vector<NodeMask>& pm, std::size_t lo,
                          std::size_t hi, int f) {
  if (lo >= hi) return true;
  NodeMask cand = 0;
  NodeMask common = ~NodeMask{0};
  for (std::size_t i = lo; i < hi; ++i) {
    cand |= pm[i];
    common &= pm[i];
  }
  if (common) return f >= 1;
  if (f <= 1) return false;
  std::vector<int> cs = list_of(cand);
  for (int k = 2; k <= f; ++k) {
    bool hit = for_each_combination(cs, k, [&](const std::vector<int>& pick) {
      NodeMask cm = 0;
      for (int v : pick) cm |= node_bit(v);
      for (std::size_t i = lo; i < hi; ++i)
        if (!(pm[i] & cm)) return false;
      return true;
    });
    if (hit) return true;
  }
  return false;
}

}  // namespace detail

// Smallest node set (receiver excluded) covering every message; ties go to
// the lexicographically smallest set. Exhaustive by increasing size.
inline std::vector<int> min_message_cover(const MessageSet& m, int excluded) {
  if (m.empty()) return {};
  std::vector<NodeMask> pm;
  NodeMask cand = 0;
  for (const auto& msg : m.items) {
    NodeMask vm = detail::cover_positions(msg, excluded);
    if (!vm)
      throw std::invalid_argument(
          "message coverable only by the excluded node");
    pm.push_back(vm);
    cand |= vm;
  }
  std::vector<int> cs = list_of(cand);
  std::vector<int> best;
  for (int k = 1; k <= static_cast<int>(cs.size()); ++k) {
    bool hit = detail::for_each_combination(cs, k, [&](const std::vector<int>& pick) {
      NodeMask cm = 0;
      for (int v : pick) cm |= node_bit(v);
      for (NodeMask vm : pm)
        if (!(vm & cm)) return false;
      best = pick;
      return true;
    });
    if (hit) return best;
  }
  return cs;  // the whole candidate set always covers
}

// Messages whose path meets T; order preserved.
inline MessageSet max_covered_subset(const MessageSet& m,
                                     const std::set<int>& t) {
  NodeMask tm = mask_of(t);
  MessageSet r;
  for (const auto& msg : m.items)
    if (msg.path.vertex_mask() & tm) r.items.push_back(msg);
  return r;
}

// Max-flow check of the cover size: build the union of all message paths,
// add a super-source feeding each path's first node, give every internal
// node capacity one (receiver unbounded), and take the max flow into the
// receiver. By duality this equals the smallest node set meeting every
// source-to-receiver path of the union graph. The union contains composite
// paths the messages never took, so this is an upper bound on the
// per-message cover, exact when the messages exhaust the union's paths.
inline int mincut_cover_size(const MessageSet& m, int receiver,
                             const DirectedGraph& g) {
  g.check_node(receiver);
  if (m.empty()) return 0;
  std::set<std::pair<int, int>> arcs;
  std::set<int> heads;
  for (const auto& msg : m.items) {
    if (msg.destination() != receiver)
      throw std::invalid_argument("message not destined to the receiver");
    if ((msg.path.vertex_mask() & ~node_bit(receiver)) == 0)
      throw std::invalid_argument(
          "message coverable only by the excluded node");
    // a path that loops back to its own receiver effectively starts at the
    // second node; keeping the receiver as head would short the flow
    std::size_t first = msg.path.nodes.front() == receiver ? 1 : 0;
    heads.insert(msg.path.nodes[first]);
    for (std::size_t i = first; i + 1 < msg.path.nodes.size(); ++i)
      arcs.emplace(msg.path.nodes[i], msg.path.nodes[i + 1]);
  }
  // vertex split: node v becomes 2v (in) -> 2v+1 (out); super-source is 0
  int n = g.size();
  int verts = 2 * n + 2;
  const int inf = 1 << 20;
  std::vector<std::vector<int>> cap(verts, std::vector<int>(verts, 0));
  for (int v = 1; v <= n; ++v)
    cap[2 * v][2 * v + 1] = v == receiver ? inf : 1;
  for (auto [u, v] : arcs) cap[2 * u + 1][2 * v] = inf;
  for (int h : heads) cap[0][2 * h] = inf;
  int source = 0, sink = 2 * receiver;
  int flow = 0;
  for (;;) {
    std::vector<int> prev(verts, -1);
    std::vector<int> queue{source};
    prev[source] = source;
    for (std::size_t qi = 0; qi < queue.size() && prev[sink] < 0; ++qi) {
      int u = queue[qi];
      for (int v = 0; v < verts; ++v)
        if (prev[v] < 0 && cap[u][v] > 0) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    if (prev[sink] < 0) break;
    int push = inf;
    for (int v = sink; v != source; v = prev[v])
      push = std::min(push, cap[prev[v]][v]);
    for (int v = sink; v != source; v = prev[v]) {
      cap[prev[v]][v] -= push;
      cap[v][prev[v]] += push;
    }
    flow += push;
  }
  return flow;
}

struct TrimResult {
  MessageSet low, high, kept;
  std::vector<int> low_cover, high_cover;  // size f each when f >= 1
};

// Two greedy passes over the sorted messages. The low pass feeds messages
// smallest-first into a pool until no f nodes cover the pool, then backs off
// the last one; the high pass mirrors this from the top of what remains.
// Whatever survives in the middle is kept. f = 0 keeps everything.
inline TrimResult compute_trim(const MessageSet& mprime, int f) {
  if (f < 0) throw std::invalid_argument("f must be >= 0");
  TrimResult r;
  if (f == 0) {
    r.kept = mprime;
    return r;
  }
  if (mprime.empty())
    throw TrimNotWellDefined("trim of an empty message set", 0);
  int receiver = mprime.items.front().destination();
  for (const auto& msg : mprime.items)
    if (msg.destination() != receiver)
      throw std::invalid_argument("mixed destinations in one trim");
  std::vector<NodeMask> pm;
  for (const auto& msg : mprime.items) {
    NodeMask vm = detail::cover_positions(msg, receiver);
    if (!vm)
      throw std::invalid_argument(
          "message coverable only by the excluded node");
    pm.push_back(vm);
  }
  std::size_t nmsg = pm.size();
  std::size_t low_count = nmsg;
  for (std::size_t add = 0; add < nmsg; ++add) {
    if (!detail::cover_at_most(pm, 0, add + 1, f)) {
      low_count = add;
      break;
    }
  }
  if (low_count == nmsg)
    throw TrimNotWellDefined("low trim never saturates", receiver);
  std::size_t high_count = nmsg;
  for (std::size_t s = 0; s + low_count < nmsg; ++s) {
    if (!detail::cover_at_most(pm, nmsg - 1 - s, nmsg, f)) {
      high_count = s;
      break;
    }
  }
  if (high_count == nmsg)
    throw TrimNotWellDefined("high trim never saturates", receiver);
  auto& all = mprime.items;
  r.low.items.assign(all.begin(), all.begin() + low_count);
  r.high.items.assign(all.end() - high_count, all.end());
  r.kept.items.assign(all.begin() + low_count, all.end() - high_count);
  r.low_cover = min_message_cover(r.low, receiver);
  r.high_cover = min_message_cover(r.high, receiver);
  if (static_cast<int>(r.low_cover.size()) != f ||
      static_cast<int>(r.high_cover.size()) != f)
    throw std::logic_error("trim cover size drifted from f");
  return r;
}

}  // namespace relaycon
