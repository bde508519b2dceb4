#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaycon/cuts.hpp"
#include "relaycon/graph.hpp"

// Feasibility conditions over node partitions. All checks enumerate the
// partition space outright (4^n with the fault-budget prune), so cost climbs
// fast with n; the checked_count field reports how many partitions were
// actually examined.

namespace relaycon {

struct Partition {
  std::set<int> l_side, c_side, r_side, f_side;

  bool valid_for(const DirectedGraph& g, int f) const {
    if (l_side.empty() || r_side.empty()) return false;
    if (static_cast<int>(f_side.size()) > f) return false;
    NodeMask lm = mask_of(l_side), cm = mask_of(c_side), rm = mask_of(r_side),
             fm = mask_of(f_side);
    if ((lm & cm) || (lm & rm) || (lm & fm) || (cm & rm) || (cm & fm) ||
        (rm & fm))
      return false;
    return (lm | cm | rm | fm) == full_mask(g.size());
  }
};

struct Verdict {
  bool holds = true;
  std::optional<Partition> witness;
  std::uint64_t checked = 0;
  std::string detail;
};

namespace detail {

// Walks every labeling of nodes 1..n into `labels` classes with class
// `f_class` capped at f members; leaf(label_masks) returns true to stop.
template <typename Leaf>
inline bool for_each_labeling(int n, int labels, int f_class, int f,
                              std::vector<NodeMask>& marks, Leaf&& leaf) {
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v > n) return leaf();
    for (int c = 0; c < labels; ++c) {
      if (c == f_class && popcount(marks[c]) >= f) continue;
      marks[c] |= node_bit(v);
      if (rec(v + 1)) return true;
      marks[c] &= ~node_bit(v);
    }
    return false;
  };
  return rec(1);
}

}  // namespace detail

inline Verdict check_condition_nc(const DirectedGraph& g, int f, int l) {
  if (f < 0) throw std::invalid_argument("f must be >= 0");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  int n = g.size();
  NodeMask all = full_mask(n);
  Verdict verdict;
  std::vector<NodeMask> marks(4, 0);  // L, C, R, F
  detail::for_each_labeling(n, 4, 3, f, marks, [&]() {
    NodeMask lm = marks[0], cm = marks[1], rm = marks[2], fm = marks[3];
    if (!lm || !rm) return false;
    ++verdict.checked;
    NodeMask alive = all & ~fm;
    if (detail::influences_mask(g, rm | cm, lm, l, f, alive)) return false;
    if (detail::influences_mask(g, lm | cm, rm, l, f, alive)) return false;
    verdict.holds = false;
    verdict.witness = Partition{set_of(lm), set_of(cm), set_of(rm), set_of(fm)};
    return true;
  });
  return verdict;
}

// Smallest relay depth at which the condition holds, if any depth up to
// n-1 works (deeper never helps: paths are simple).
inline std::optional<int> find_l0(const DirectedGraph& g, int f) {
  for (int l = 1; l <= g.size() - 1; ++l)
    if (check_condition_nc(g, f, l).holds) return l;
  return std::nullopt;
}

inline bool check_degree_bounds(const DirectedGraph& g, int f) {
  if (g.size() < 3 * f + 1) return false;
  for (int v = 1; v <= g.size(); ++v)
    if (popcount(g.in_mask(v) & ~node_bit(v)) < 2 * f + 1) return false;
  return true;
}

// Unbounded-relay condition phrased through direct edge counts: for every
// partition, one side must receive edges from more than f distinct nodes of
// the other side plus the middle.
inline Verdict check_condition_1(const DirectedGraph& g, int f) {
  if (f < 0) throw std::invalid_argument("f must be >= 0");
  int n = g.size();
  Verdict verdict;
  std::vector<NodeMask> marks(4, 0);
  auto senders_into = [&](NodeMask from, NodeMask into) {
    NodeMask senders = 0;
    for (NodeMask m = into; m;) {
      int j = std::countr_zero(m) + 1;
      m &= m - 1;
      senders |= g.in_mask(j) & ~node_bit(j);
    }
    return popcount(senders & from);
  };
  detail::for_each_labeling(n, 4, 3, f, marks, [&]() {
    NodeMask lm = marks[0], cm = marks[1], rm = marks[2], fm = marks[3];
    (void)fm;
    if (!lm || !rm) return false;
    ++verdict.checked;
    if (senders_into(lm | cm, rm) > f) return false;
    if (senders_into(rm | cm, lm) > f) return false;
    verdict.holds = false;
    verdict.witness = Partition{set_of(lm), set_of(cm), set_of(rm), set_of(fm)};
    return true;
  });
  return verdict;
}

// Unbounded-relay condition phrased through disjoint-path robustness: for
// every three-way split (A, B, F), information must propagate across, i.e.
// every node of one side keeps more than f worth of restricted robustness
// from the other side with F deleted.
inline Verdict check_propagate(const DirectedGraph& g, int f) {
  if (f < 0) throw std::invalid_argument("f must be >= 0");
  int n = g.size();
  NodeMask all = full_mask(n);
  Verdict verdict;
  std::vector<NodeMask> marks(3, 0);  // A, B, F
  auto propagates = [&](NodeMask from, NodeMask to, NodeMask alive) {
    for (NodeMask m = to; m;) {
      int y = std::countr_zero(m) + 1;
      m &= m - 1;
      if (detail::kappa_bounded(g, from, y, n, alive, f) <= f) return false;
    }
    return true;
  };
  detail::for_each_labeling(n, 3, 2, f, marks, [&]() {
    NodeMask am = marks[0], bm = marks[1], fm = marks[2];
    if (!am || !bm) return false;
    ++verdict.checked;
    NodeMask alive = all & ~fm;
    if (propagates(am, bm, alive) || propagates(bm, am, alive)) return false;
    verdict.holds = false;
    verdict.witness = Partition{set_of(am), {}, set_of(bm), set_of(fm)};
    return true;
  });
  return verdict;
}

struct UndirectedEquivalenceReport {
  int n = 0;
  int f = 0;
  int kappa = 0;
  int l_star = 1;
  bool size_and_connectivity = false;  // n >= 3f+1 and kappa >= 2f+1
  Verdict nc;                          // checked at depth l_star
  bool agree = false;
};

inline UndirectedEquivalenceReport check_undirected_equivalence(
    const DirectedGraph& g, int f) {
  if (!g.is_symmetric())
    throw std::invalid_argument("equivalence check needs a symmetric graph");
  UndirectedEquivalenceReport r;
  r.n = g.size();
  r.f = f;
  r.kappa = vertex_connectivity_undirected(g);
  r.l_star = std::max(1, longest_path_length(g));
  r.size_and_connectivity = r.n >= 3 * f + 1 && r.kappa >= 2 * f + 1;
  r.nc = check_condition_nc(g, f, r.l_star);
  r.agree = r.size_and_connectivity == r.nc.holds;
  return r;
}

}  // namespace relaycon
