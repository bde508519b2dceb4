#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Directed graphs over 1-based node ids. Every node carries a self-loop by
// construction. Node sets are stored as bitmasks, which caps graphs at 62
// nodes; everything in this library is meant for desk-scale instances and the
// exponential routines say so at their declaration.

namespace relaycon {

using NodeMask = std::uint64_t;

inline NodeMask node_bit(int v) { return NodeMask{1} << (v - 1); }

inline NodeMask full_mask(int n) { return (NodeMask{1} << n) - 1; }

inline int popcount(NodeMask m) { return std::popcount(m); }

inline NodeMask mask_of(const std::set<int>& nodes) {
  NodeMask m = 0;
  for (int v : nodes) m |= node_bit(v);
  return m;
}

inline std::set<int> set_of(NodeMask m) {
  std::set<int> r;
  while (m) {
    r.insert(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return r;
}

inline std::vector<int> list_of(NodeMask m) {
  std::vector<int> r;
  r.reserve(static_cast<std::size_t>(popcount(m)));
  while (m) {
    r.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return r;
}

class DirectedGraph {
 public:
  explicit DirectedGraph(int n) : n_(n), out_(n + 1, 0), in_(n + 1, 0) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 nodes");
    if (n > 62) throw std::invalid_argument("graph too large, 62 node cap");
    for (int v = 1; v <= n; ++v) {
      out_[v] |= node_bit(v);
      in_[v] |= node_bit(v);
    }
  }

  DirectedGraph(int n, const std::vector<std::pair<int, int>>& edge_list)
      : DirectedGraph(n) {
    for (auto [u, v] : edge_list) add_edge(u, v);
  }

  int size() const { return n_; }

  void check_node(int v) const {
    if (v < 1 || v > n_)
      throw std::out_of_range("node id out of range: " + std::to_string(v));
  }

  void add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    out_[u] |= node_bit(v);
    in_[v] |= node_bit(u);
  }

  void add_undirected(int u, int v) {
    add_edge(u, v);
    add_edge(v, u);
  }

  bool has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    return (out_[u] & node_bit(v)) != 0;
  }

  NodeMask out_mask(int v) const {
    check_node(v);
    return out_[v];
  }

  NodeMask in_mask(int v) const {
    check_node(v);
    return in_[v];
  }

  std::vector<int> out_neighbors(int v) const { return list_of(out_mask(v)); }
  std::vector<int> in_neighbors(int v) const { return list_of(in_mask(v)); }

  // All edges including self-loops, ordered (tail, head) ascending.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> r;
    for (int u = 1; u <= n_; ++u)
      for (int v : list_of(out_[u])) r.emplace_back(u, v);
    return r;
  }

  int edge_count() const {
    int c = 0;
    for (int u = 1; u <= n_; ++u) c += popcount(out_[u]);
    return c;
  }

  bool is_symmetric() const {
    for (int u = 1; u <= n_; ++u)
      if (out_[u] != in_[u]) return false;
    return true;
  }

  // Same node set; edges touching a node outside `alive` are dropped
  // (self-loops stay, so dropped nodes become isolated).
  DirectedGraph induced(NodeMask alive) const {
    DirectedGraph h(n_);
    for (int v : list_of(alive & full_mask(n_))) {
      h.out_[v] |= out_[v] & alive;
      h.in_[v] |= in_[v] & alive;
    }
    return h;
  }

 private:
  int n_;
  std::vector<NodeMask> out_, in_;
};

struct Path {
  std::vector<int> nodes;

  int source() const { return nodes.front(); }
  int destination() const { return nodes.back(); }
  int length() const { return static_cast<int>(nodes.size()) - 1; }
  bool is_self_loop() const { return nodes.size() == 2 && nodes[0] == nodes[1]; }

  NodeMask vertex_mask() const {
    NodeMask m = 0;
    for (int v : nodes) m |= node_bit(v);
    return m;
  }

  std::set<int> vertices() const { return set_of(vertex_mask()); }

  bool operator==(const Path&) const = default;
};

inline bool path_lex_less(const Path& a, const Path& b) {
  return std::lexicographical_compare(a.nodes.begin(), a.nodes.end(),
                                      b.nodes.begin(), b.nodes.end());
}

namespace detail {

// Nodes reachable from `start` (inclusive) in at most `steps` hops, staying
// inside `alive`. forward=false walks edges backwards.
inline NodeMask reach_within(const DirectedGraph& g, NodeMask start, int steps,
                             NodeMask alive, bool forward = true) {
  NodeMask cur = start & alive;
  for (int s = 0; s < steps; ++s) {
    NodeMask nxt = cur;
    for (NodeMask m = cur; m;) {
      int v = std::countr_zero(m) + 1;
      m &= m - 1;
      nxt |= (forward ? g.out_mask(v) : g.in_mask(v)) & alive;
    }
    if (nxt == cur) break;
    cur = nxt;
  }
  return cur;
}

// Lexicographic k-subsets of `items`; fn gets the current pick and returns
// true to stop the whole enumeration. Returns whether fn stopped it.
template <typename Fn>
inline bool for_each_combination(const std::vector<int>& items, int k, Fn&& fn) {
  std::vector<int> pick;
  pick.reserve(static_cast<std::size_t>(k));
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (static_cast<int>(pick.size()) == k) return fn(pick);
    if (items.size() - from < k - pick.size()) return false;
    for (std::size_t i = from; i < items.size(); ++i) {
      pick.push_back(items[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

// Mutual-reachability classes of the `alive` nodes, listed by smallest
// member. rows[v] must contain v's own bit (self-loops guarantee it).
inline std::vector<NodeMask> strong_component_masks(
    const std::vector<NodeMask>& rows, NodeMask alive, int n) {
  std::vector<NodeMask> reach(n + 1, 0);
  for (int v : list_of(alive)) reach[v] = (rows[v] & alive) | node_bit(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : list_of(alive)) {
      NodeMask acc = reach[v];
      for (NodeMask m = reach[v]; m;) {
        int w = std::countr_zero(m) + 1;
        m &= m - 1;
        acc |= reach[w];
      }
      if (acc != reach[v]) {
        reach[v] = acc;
        changed = true;
      }
    }
  }
  std::vector<NodeMask> comps;
  NodeMask seen = 0;
  for (int v : list_of(alive)) {
    if (seen & node_bit(v)) continue;
    NodeMask comp = 0;
    for (NodeMask m = reach[v]; m;) {
      int w = std::countr_zero(m) + 1;
      m &= m - 1;
      if (reach[w] & node_bit(v)) comp |= node_bit(w);
    }
    comps.push_back(comp);
    seen |= comp;
  }
  return comps;
}

}  // namespace detail

// Simple paths from src to dst using at most l edges, in lexicographic order
// of their node sequences. The self-loop pair (v, v) is the one sanctioned
// repeat and is reported when src == dst. Nodes outside `alive` (0 = all) are
// skipped entirely.
inline std::vector<Path> enumerate_paths(const DirectedGraph& g, int src,
                                         int dst, int l, NodeMask alive = 0) {
  g.check_node(src);
  g.check_node(dst);
  if (l < 1) throw std::invalid_argument("path depth must be >= 1");
  if (alive == 0) alive = full_mask(g.size());
  std::vector<Path> found;
  if (!(alive & node_bit(src)) || !(alive & node_bit(dst))) return found;
  if (src == dst) {
    found.push_back(Path{{src, src}});
    return found;
  }
  std::vector<int> cur{src};
  NodeMask seen = node_bit(src);
  std::function<void(int, int)> walk = [&](int v, int used) {
    for (int w : list_of(g.out_mask(v) & alive & ~seen)) {
      if (w == dst) {
        cur.push_back(w);
        found.push_back(Path{cur});
        cur.pop_back();
      } else if (used + 1 < l) {
        cur.push_back(w);
        seen |= node_bit(w);
        walk(w, used + 1);
        seen &= ~node_bit(w);
        cur.pop_back();
      }
    }
  };
  walk(src, 0);
  return found;
}

struct Neighborhood {
  int center = 0;
  int depth = 0;
  std::set<int> inbound;   // nodes that can reach center within depth hops
  std::set<int> outbound;  // nodes center can reach within depth hops
};

inline Neighborhood neighborhood(const DirectedGraph& g, int center, int depth) {
  g.check_node(center);
  if (depth < 1) throw std::invalid_argument("neighborhood depth must be >= 1");
  NodeMask all = full_mask(g.size());
  Neighborhood nb;
  nb.center = center;
  nb.depth = depth;
  nb.inbound = set_of(detail::reach_within(g, node_bit(center), depth, all, false));
  nb.outbound = set_of(detail::reach_within(g, node_bit(center), depth, all, true));
  return nb;
}

struct Condensation {
  std::vector<std::vector<int>> components;  // ordered by smallest member
  std::vector<int> component_of;             // node id -> index into components
  std::vector<std::pair<int, int>> edges;    // condensation edges, ascending
};

inline Condensation scc_condensation(const DirectedGraph& g) {
  int n = g.size();
  std::vector<NodeMask> rows(n + 1);
  for (int v = 1; v <= n; ++v) rows[v] = g.out_mask(v);
  auto masks = detail::strong_component_masks(rows, full_mask(n), n);
  Condensation c;
  c.component_of.assign(n + 1, -1);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    c.components.push_back(list_of(masks[k]));
    for (int v : c.components.back()) c.component_of[v] = static_cast<int>(k);
  }
  std::set<std::pair<int, int>> meta;
  for (int u = 1; u <= n; ++u)
    for (int v : list_of(g.out_mask(u) & ~node_bit(u))) {
      int a = c.component_of[u], b = c.component_of[v];
      if (a != b) meta.emplace(a, b);
    }
  c.edges.assign(meta.begin(), meta.end());
  return c;
}

inline std::vector<std::vector<int>> source_components(const Condensation& c) {
  std::vector<bool> has_in(c.components.size(), false);
  for (auto [a, b] : c.edges) {
    (void)a;
    has_in[b] = true;
  }
  std::vector<std::vector<int>> r;
  for (std::size_t k = 0; k < c.components.size(); ++k)
    if (!has_in[k]) r.push_back(c.components[k]);
  return r;
}

// Exhaustive undirected vertex connectivity; requires a symmetric edge set.
// Tries every deletion set of each size, so keep instances small.
inline int vertex_connectivity_undirected(const DirectedGraph& g) {
  if (!g.is_symmetric())
    throw std::invalid_argument("vertex connectivity needs a symmetric graph");
  int n = g.size();
  NodeMask all = full_mask(n);
  std::vector<NodeMask> und(n + 1);
  bool complete = true;
  for (int v = 1; v <= n; ++v) {
    und[v] = g.out_mask(v) & ~node_bit(v);
    if (und[v] != (all & ~node_bit(v))) complete = false;
  }
  if (complete) return n - 1;
  auto connected = [&](NodeMask alive) {
    if (popcount(alive) <= 1) return true;
    NodeMask comp = node_bit(std::countr_zero(alive) + 1);
    for (;;) {
      NodeMask nxt = comp;
      for (NodeMask m = comp; m;) {
        int v = std::countr_zero(m) + 1;
        m &= m - 1;
        nxt |= und[v] & alive;
      }
      if (nxt == comp) break;
      comp = nxt;
    }
    return comp == alive;
  };
  std::vector<int> ids;
  for (int v = 1; v <= n; ++v) ids.push_back(v);
  for (int k = 0; k <= n - 2; ++k) {
    int found = -1;
    detail::for_each_combination(ids, k, [&](const std::vector<int>& pick) {
      NodeMask removed = 0;
      for (int v : pick) removed |= node_bit(v);
      if (!connected(all & ~removed)) {
        found = k;
        return true;
      }
      return false;
    });
    if (found >= 0) return found;
  }
  return n - 1;
}

// Longest simple path (edge count), self-loops ignored. Bitmask DP over node
// subsets; refuses graphs above 20 nodes.
inline int longest_path_length(const DirectedGraph& g) {
  int n = g.size();
  if (n > 20)
    throw std::invalid_argument("longest_path_length is exhaustive, 20 node cap");
  std::vector<NodeMask> last(std::size_t{1} << n, 0);
  for (int v = 1; v <= n; ++v) last[node_bit(v)] = node_bit(v);
  int best = 0;
  NodeMask all = full_mask(n);
  for (NodeMask mask = 1; mask <= all; ++mask) {
    NodeMask ends = last[mask];
    if (!ends) continue;
    best = std::max(best, popcount(mask) - 1);
    for (NodeMask e = ends; e;) {
      int v = std::countr_zero(e) + 1;
      e &= e - 1;
      for (NodeMask nb = g.out_mask(v) & ~mask; nb;) {
        int w = std::countr_zero(nb) + 1;
        nb &= nb - 1;
        last[mask | node_bit(w)] |= node_bit(w);
      }
    }
  }
  return best;
}

}  // namespace relaycon
