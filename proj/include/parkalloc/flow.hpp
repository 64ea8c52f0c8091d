#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parkalloc/core.hpp"

// Generic min-cost flow with per-arc lower bounds, solved by successive
// shortest paths over the residual graph with Dijkstra and node potentials.
// Everything is int64 arithmetic; optimality is certified exactly, with no
// floating-point tolerances anywhere.

namespace parkalloc {

struct Arc {
  int tail = 0;
  int head = 0;
  std::int64_t lower = 0;
  std::int64_t capacity = 0;
  std::int64_t cost = 0;  // non-negative
};

struct FlowSolution {
  std::vector<std::int64_t> flow;        // per input arc
  std::vector<std::int64_t> potential;   // per node, from the final Dijkstra
  std::int64_t total_cost = 0;           // sum cost*flow over input arcs
  int augmentations = 0;
  double seconds = 0.0;
};

// Finds a feasible flow meeting every node balance (positive = supply,
// negative = demand) and every arc bound, of minimum total cost. Lower
// bounds are eliminated into node imbalances, the remaining circulation is
// routed from a super source to a super sink, and any unsaturated super arc
// means no feasible flow exists (InfeasibleError). Supplies must sum to
// zero. Costs must be non-negative.
FlowSolution solve_min_cost_flow(int node_count,
                                 const std::vector<Arc>& arcs,
                                 const std::vector<std::int64_t>& supply);

// Complementary-slackness audit of a finished solution: for every arc with
// reduced cost rc = cost + pot[tail] - pot[head], flow below capacity
// requires rc >= 0 and flow above its lower bound requires rc <= 0; node
// balances must hold exactly. Returns human-readable descriptions of every
// violated condition, so empty means the flow is provably optimal.
std::vector<std::string> certificate_violations(
    int node_count, const std::vector<Arc>& arcs,
    const std::vector<std::int64_t>& supply, const FlowSolution& solution);

}  // namespace parkalloc
