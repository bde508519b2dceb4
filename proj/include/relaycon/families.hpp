#pragma once

#include <stdexcept>

#include "relaycon/graph.hpp"

// The recurring example topologies.

namespace relaycon {

// Four-cycle p1..p4 plus a hub p5 tied to every cycle node, all adjacencies
// bidirectional.
inline DirectedGraph build_fig1() {
  DirectedGraph g(5);
  g.add_undirected(1, 2);
  g.add_undirected(2, 3);
  g.add_undirected(3, 4);
  g.add_undirected(4, 1);
  for (int v = 1; v <= 4; ++v) g.add_undirected(5, v);
  return g;
}

// Hub p1 plus a cycle over p2..pn, all adjacencies bidirectional. Needs
// n >= 5 so the cycle is a real cycle.
inline DirectedGraph build_fig2(int n) {
  if (n < 5) throw std::invalid_argument("fig2 family needs n >= 5");
  DirectedGraph g(n);
  for (int v = 2; v <= n; ++v) g.add_undirected(1, v);
  for (int v = 2; v < n; ++v) g.add_undirected(v, v + 1);
  g.add_undirected(n, 2);
  return g;
}

inline DirectedGraph build_complete(int n) {
  DirectedGraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_undirected(u, v);
  return g;
}

// Sparse family: complete core {1,2,3,4}, then every added node gets exactly
// the three incoming edges from nodes 1, 2, 3 (plus its self-loop), so
// |E| = 4n with every in-neighborhood of size 4.
inline DirectedGraph build_density_family(int n) {
  if (n < 4) throw std::invalid_argument("density family needs n >= 4");
  DirectedGraph g(n);
  for (int u = 1; u <= 4; ++u)
    for (int v = u + 1; v <= 4; ++v) g.add_undirected(u, v);
  for (int x = 5; x <= n; ++x)
    for (int s = 1; s <= 3; ++s) g.add_edge(s, x);
  return g;
}

}  // namespace relaycon
