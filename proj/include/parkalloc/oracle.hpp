#pragma once

#include <cstdint>
#include <vector>

#include "parkalloc/core.hpp"

// Exhaustive reference optimizer for small instances. Enumerates every
// integral assignment meeting the demand, lot, and (optionally) reserved
// constraints by depth-first search over per-group compositions, keeping
// the cheapest. Exists to cross-check the flow solver, not to be fast.

namespace parkalloc {

struct EnumerationBudget {
  std::int64_t max_states = 10'000'000;  // DFS nodes visited before giving up
};

struct OracleResult {
  AllocationPlan plan;
  std::int64_t states_visited = 0;
};

// Provably optimal plan by brute force. Ties break toward the assignment
// tensor that is lexicographically smallest in (type, building, lot) order.
// Throws BudgetExceededError when the search exceeds `budget`, and
// InfeasibleError when no assignment satisfies the constraints.
OracleResult brute_force_optimum(const ProblemInstance& instance,
                                 const std::vector<std::int64_t>& permits,
                                 bool reserved_mode,
                                 const EnumerationBudget& budget = {});

}  // namespace parkalloc
