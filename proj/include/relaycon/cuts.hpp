#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "relaycon/graph.hpp"

// Depth-restricted vertex cuts. kappa_l(G, W, x, l) is the smallest number of
// nodes (never x itself, W members allowed) whose removal kills every path
// from W to x of length at most l. Exact values come from increasing-size
// subset enumeration over the nodes that sit on some short enough W-to-x
// walk, so this is exponential in the cut size; fine at desk scale.

namespace relaycon {
namespace detail {

inline bool reaches_within(const DirectedGraph& g, NodeMask start, int target,
                           int l, NodeMask alive) {
  NodeMask cur = start & alive;
  if (!cur) return false;
  NodeMask goal = node_bit(target);
  for (int s = 0; s < l; ++s) {
    NodeMask nxt = cur;
    for (NodeMask m = cur; m;) {
      int v = std::countr_zero(m) + 1;
      m &= m - 1;
      nxt |= g.out_mask(v) & alive;
    }
    if (nxt & goal) return true;
    if (nxt == cur) return false;
    cur = nxt;
  }
  return false;
}

// Nodes other than x lying on some W-to-x walk of at most l hops: exactly
// the positions where a useful cut node can sit.
inline std::vector<int> cut_candidates(const DirectedGraph& g, NodeMask w_mask,
                                       int x, int l, NodeMask alive) {
  int n = g.size();
  std::vector<int> dw(n + 1, l + 1), dx(n + 1, l + 1);
  NodeMask cur = w_mask & alive;
  for (int v : list_of(cur)) dw[v] = 0;
  NodeMask seen = cur;
  for (int d = 1; d <= l && cur; ++d) {
    NodeMask nxt = 0;
    for (NodeMask m = cur; m;) {
      int v = std::countr_zero(m) + 1;
      m &= m - 1;
      nxt |= g.out_mask(v) & alive;
    }
    nxt &= ~seen;
    for (int v : list_of(nxt)) dw[v] = d;
    seen |= nxt;
    cur = nxt;
  }
  cur = node_bit(x) & alive;
  for (int v : list_of(cur)) dx[v] = 0;
  seen = cur;
  for (int d = 1; d <= l && cur; ++d) {
    NodeMask nxt = 0;
    for (NodeMask m = cur; m;) {
      int v = std::countr_zero(m) + 1;
      m &= m - 1;
      nxt |= g.in_mask(v) & alive;
    }
    nxt &= ~seen;
    for (int v : list_of(nxt)) dx[v] = d;
    seen |= nxt;
    cur = nxt;
  }
  std::vector<int> cand;
  for (int v = 1; v <= n; ++v)
    if (v != x && (alive & node_bit(v)) && dw[v] + dx[v] <= l)
      cand.push_back(v);
  return cand;
}

// Smallest restricted cut size, searched up to max_k subset size; returns
// max_k+1 when every tried size fails. max_k < 0 means search exhaustively
// (the candidate set itself is always a cut, so that terminates).
inline int kappa_bounded(const DirectedGraph& g, NodeMask w_mask, int x, int l,
                         NodeMask alive, int max_k) {
  w_mask &= alive & ~node_bit(x);
  if (l == 1) {
    int k1 = popcount(g.in_mask(x) & w_mask);
    if (max_k >= 0 && k1 > max_k) return max_k + 1;
    return k1;
  }
  if (!reaches_within(g, w_mask, x, l, alive)) return 0;
  auto cand = cut_candidates(g, w_mask, x, l, alive);
  int limit = static_cast<int>(cand.size());
  if (max_k >= 0) limit = std::min(limit, max_k);
  for (int k = 1; k <= limit; ++k) {
    bool found = for_each_combination(cand, k, [&](const std::vector<int>& pick) {
      NodeMask removed = 0;
      for (int v : pick) removed |= node_bit(v);
      return !reaches_within(g, w_mask & ~removed, x, l, alive & ~removed);
    });
    if (found) return k;
  }
  return limit + 1;
}

inline bool influences_mask(const DirectedGraph& g, NodeMask a, NodeMask b,
                            int l, int f, NodeMask alive) {
  a &= alive;
  b &= alive;
  if (popcount(a) <= f) return false;
  for (NodeMask m = b; m;) {
    int i = std::countr_zero(m) + 1;
    m &= m - 1;
    if (kappa_bounded(g, a, i, l, alive, f) > f) return true;
  }
  return false;
}

}  // namespace detail

inline int kappa_l(const DirectedGraph& g, const std::set<int>& w, int x, int l,
                   NodeMask alive = 0) {
  g.check_node(x);
  if (l < 1) throw std::invalid_argument("kappa_l needs l >= 1");
  if (w.count(x)) throw std::invalid_argument("x must not be in W");
  for (int v : w) g.check_node(v);
  if (alive == 0) alive = full_mask(g.size());
  return detail::kappa_bounded(g, mask_of(w), x, l, alive, -1);
}

// Does some cut of size at most f sever every length-l-bounded path from W
// to x? Early-exits without computing the exact kappa value.
inline bool has_cut_at_most(const DirectedGraph& g, const std::set<int>& w,
                            int x, int l, int f, NodeMask alive = 0) {
  g.check_node(x);
  if (l < 1) throw std::invalid_argument("needs l >= 1");
  if (f < 0) throw std::invalid_argument("needs f >= 0");
  if (w.count(x)) throw std::invalid_argument("x must not be in W");
  if (alive == 0) alive = full_mask(g.size());
  return detail::kappa_bounded(g, mask_of(w), x, l, alive, f) <= f;
}

// A influences B when some node of B keeps f+1 or more restricted robustness
// from A; that is, no f-sized cut can sever all short paths into it.
inline bool influences(const DirectedGraph& g, const std::set<int>& a,
                       const std::set<int>& b, int l, int f,
                       NodeMask alive = 0) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("influences needs nonempty sets");
  if (l < 1 || f < 0) throw std::invalid_argument("bad l or f");
  for (int v : a)
    if (b.count(v)) throw std::invalid_argument("sets must be disjoint");
  if (alive == 0) alive = full_mask(g.size());
  return detail::influences_mask(g, mask_of(a), mask_of(b), l, f, alive);
}

}  // namespace relaycon
