#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parkalloc/core.hpp"
#include "parkalloc/flow.hpp"

// Assignment of users to lots as a minimum-cost network: each (type,
// building) demand group must be fully seated, each lot absorbs exactly its
// issued permits, and in reserved mode each (type, lot) pairing carries a
// hard lower bound equal to its dedicated capacity. Integral optimality
// comes from the flow solver; the complementary-slackness certificate is
// recomputed on the assignment network itself.

namespace parkalloc {

enum class ArcKind {
  GroupSupply,  // source -> (type, building) group, cap = demand
  Assignment,   // group -> (type, lot) pair, cost = walking distance
  LotIntake,    // pair -> lot, lower bound = dedicated capacity
  LotOutlet,    // lot -> sink, cap = issued permits
};

struct NetArc {
  Arc arc;
  ArcKind kind = ArcKind::Assignment;
  int type = -1;  // 0-based; -1 when the leg does not carry that index
  int building = -1;
  int lot = -1;
};

struct FlowNetwork {
  int node_count = 0;
  std::vector<NetArc> arcs;  // lexicographic (type, building, lot) order
  std::vector<std::int64_t> supply;
  int types = 0;
  int buildings = 0;
  int lots = 0;
  bool reserved_mode = true;

  std::vector<Arc> raw_arcs() const {
    std::vector<Arc> raw;
    raw.reserve(arcs.size());
    for (const auto& na : arcs) raw.push_back(na.arc);
    return raw;
  }
};

// Builds the assignment network for `permits` issued per lot. Layers:
// source, (type, building) groups, (type, lot) pairs, lots, sink. In
// reserved mode every pairing's intake arc carries lower bound = that
// pairing's dedicated capacity, exactly as given; with the bounds dropped
// the same network prices the free-for-all policy. Arcs without a natural
// cap are capped at total demand. Throws PermitMismatchError unless total
// issued permits equal total demand.
FlowNetwork build_network(const ProblemInstance& instance,
                          const std::vector<std::int64_t>& permits,
                          bool reserved_mode);

struct SolveOutcome {
  AllocationPlan plan;
  FlowSolution flow;                     // aligned with network.arcs
  std::vector<std::string> certificate;  // empty = proven optimal
};

// Runs the flow solver on `network` and folds the assignment-arc flows
// back into a (type, building, lot) tensor. Infeasible lower bounds raise
// InfeasibleError carrying the 1-based (type, lot) pairs that cannot be
// met together.
SolveOutcome solve_min_cost_flow(const FlowNetwork& network);

struct ConstraintReport {
  std::vector<std::string> violations;
  std::int64_t objective = 0;  // recomputed independently

  bool ok() const { return violations.empty(); }
};

// Re-verifies `plan` against first principles by direct summation: every
// demand group seated, every lot at exactly its issued count, dedicated
// minimums met (reserved mode), no negative cell, stored objective equal
// to the recomputed one. Independent of the solver. The three-argument
// form checks under the plan's own recorded mode.
ConstraintReport check_plan(const ProblemInstance& instance,
                            const std::vector<std::int64_t>& permits,
                            const AllocationPlan& plan, bool reserved_mode);
ConstraintReport check_plan(const ProblemInstance& instance,
                            const std::vector<std::int64_t>& permits,
                            const AllocationPlan& plan);

}  // namespace parkalloc
