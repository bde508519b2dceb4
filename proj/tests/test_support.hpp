#pragma once

#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relaycon/graph.hpp"

namespace support {

// Raw engine draws keep the sampled sequences identical across standard
// library implementations.
inline bool chance(std::mt19937_64& rng, double p) {
  return (rng() >> 11) * 0x1.0p-53 < p;
}

inline int pick_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline relaycon::DirectedGraph random_digraph(std::mt19937_64& rng, int n,
                                              double p) {
  relaycon::DirectedGraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v && chance(rng, p)) g.add_edge(u, v);
  return g;
}

inline relaycon::DirectedGraph random_undirected(std::mt19937_64& rng, int n,
                                                 double p) {
  relaycon::DirectedGraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (chance(rng, p)) g.add_undirected(u, v);
  return g;
}

inline oracles::Adj adjacency(const relaycon::DirectedGraph& g) {
  int n = g.size();
  oracles::Adj a(n + 1, std::vector<bool>(n + 1, false));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) a[u][v] = g.has_edge(u, v);
  return a;
}

inline std::set<int> ids(std::initializer_list<int> xs) {
  return std::set<int>(xs);
}

inline std::vector<int> path_vec(const relaycon::Path& p) { return p.nodes; }

}  // namespace support
