#include "parkalloc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace parkalloc {

namespace {

// Shared search state for the composition enumeration. Groups are visited
// in (type, building) order and each group's users are split over lots in
// ascending lot order, so complete assignments appear in lexicographic
// tensor order and the first optimum found is the lexicographically
// smallest one.
struct Search {
  const ProblemInstance& instance;
  const std::vector<std::int64_t>& permits;
  bool reserved_mode;
  std::int64_t max_states;

  int types, buildings, lots;
  std::vector<std::int64_t> load;       // per lot, all types
  std::vector<std::int64_t> placed;     // per (type, lot)
  std::vector<std::int64_t> need;       // per type: unmet lower bounds
  std::vector<std::int64_t> remaining;  // per type: users not yet placed
  std::vector<std::int64_t> cells;      // working tensor, (i, j, k) order

  std::vector<std::int64_t> best_cells;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  std::int64_t states = 0;

  Search(const ProblemInstance& inst, const std::vector<std::int64_t>& perms,
         bool reserved, std::int64_t budget)
      : instance(inst),
        permits(perms),
        reserved_mode(reserved),
        max_states(budget),
        types(inst.type_count()),
        buildings(inst.building_count()),
        lots(inst.lot_count()),
        load(lots, 0),
        placed(static_cast<std::size_t>(types) * lots, 0),
        need(types, 0),
        remaining(types, 0),
        cells(static_cast<std::size_t>(types) * buildings * lots, 0) {
    for (int i = 0; i < types; ++i) {
      for (int j = 0; j < buildings; ++j) remaining[i] += inst.demand(i, j);
      if (reserved_mode) {
        for (int k = 0; k < lots; ++k) need[i] += inst.capacity(i, k);
      }
    }
  }

  std::int64_t& placed_at(int i, int k) {
    return placed[static_cast<std::size_t>(i) * lots + k];
  }
  std::int64_t& cell(int i, int j, int k) {
    return cells[(static_cast<std::size_t>(i) * buildings + j) * lots + k];
  }

  // Decide how many users of group (i, j) go to lot k, with `rest` still
  // unassigned within the group and `cost` accumulated so far.
  void place(int i, int j, int k, std::int64_t rest, std::int64_t cost) {
    if (++states > max_states) {
      throw BudgetExceededError("enumeration budget of " +
                                std::to_string(max_states) +
                                " states exceeded");
    }
    if (cost >= best_cost) return;
    if (reserved_mode && need[i] > remaining[i]) return;

    if (k == lots - 1) {
      // Last lot takes the remainder of the group.
      if (load[k] + rest > permits[k]) return;
      commit(i, j, k, rest);
      std::int64_t next_cost = cost + rest * instance.distance(j, k);
      if (next_cost < best_cost) advance(i, j, next_cost);
      uncommit(i, j, k, rest);
      return;
    }
    std::int64_t cap = std::min(rest, permits[k] - load[k]);
    for (std::int64_t x = 0; x <= cap; ++x) {
      commit(i, j, k, x);
      place(i, j, k + 1, rest - x, cost + x * instance.distance(j, k));
      uncommit(i, j, k, x);
    }
  }

  void commit(int i, int j, int k, std::int64_t x) {
    load[k] += x;
    remaining[i] -= x;
    cell(i, j, k) += x;
    std::int64_t& p = placed_at(i, k);
    if (reserved_mode) {
      std::int64_t bound = instance.capacity(i, k);
      std::int64_t before = std::max<std::int64_t>(0, bound - p);
      std::int64_t after = std::max<std::int64_t>(0, bound - (p + x));
      need[i] -= before - after;
    }
    p += x;
  }

  void uncommit(int i, int j, int k, std::int64_t x) {
    std::int64_t& p = placed_at(i, k);
    if (reserved_mode) {
      std::int64_t bound = instance.capacity(i, k);
      std::int64_t before = std::max<std::int64_t>(0, bound - p);
      std::int64_t after = std::max<std::int64_t>(0, bound - (p - x));
      need[i] += after - before;
    }
    p -= x;
    load[k] -= x;
    remaining[i] += x;
    cell(i, j, k) -= x;
  }

  void advance(int i, int j, std::int64_t cost) {
    if (++j == buildings) {
      // Type i is complete; its lower bounds are now final.
      if (reserved_mode && i >= 0 && need[i] > 0) return;
      j = 0;
      ++i;
    }
    if (i == types) {
      // Balanced totals plus the per-lot caps force exact lot intakes at
      // every surviving leaf, and the bound checks ran per finished type;
      // nothing is left to verify.
      if (cost < best_cost) {
        best_cost = cost;
        best_cells = cells;
      }
      return;
    }
    place(i, j, 0, instance.demand(i, j), cost);
  }
};

}  // namespace

OracleResult brute_force_optimum(const ProblemInstance& instance,
                                 const std::vector<std::int64_t>& permits,
                                 bool reserved_mode,
                                 const EnumerationBudget& budget) {
  if (budget.max_states <= 0) {
    throw Error("enumeration budget must be positive");
  }
  if (static_cast<int>(permits.size()) != instance.lot_count()) {
    throw Error("permit vector size does not match lot count");
  }

  Totals totals = derived_totals(instance);
  std::int64_t issued = 0;
  for (auto a : permits) issued += a;
  if (issued != totals.total_users) {
    throw InfeasibleError("lot intakes total " + std::to_string(issued) +
                          " but demand totals " +
                          std::to_string(totals.total_users) +
                          "; no assignment can satisfy both");
  }
  for (auto a : permits) {
    if (a < 0) throw Error("negative permit count");
  }

  Search search(instance, permits, reserved_mode, budget.max_states);
  if (instance.type_count() == 0 || instance.building_count() == 0 ||
      instance.lot_count() == 0) {
    // No demand groups, or no lots (possible only with zero demand once the
    // totals agree): the all-zero tensor is the only candidate, feasible
    // exactly when no positive lower bound exists to violate.
    bool bounds_ok = true;
    for (auto unmet : search.need) {
      if (unmet > 0) bounds_ok = false;
    }
    if (bounds_ok) {
      search.best_cost = 0;
      search.best_cells = search.cells;
    }
  } else {
    search.advance(0, -1, 0);
  }

  if (search.best_cost == std::numeric_limits<std::int64_t>::max()) {
    throw InfeasibleError("no assignment satisfies the constraints");
  }

  OracleResult result;
  result.plan.types = search.types;
  result.plan.buildings = search.buildings;
  result.plan.lots = search.lots;
  result.plan.assignments = std::move(search.best_cells);
  result.plan.objective = search.best_cost;
  result.plan.reserved_mode = reserved_mode;
  result.states_visited = search.states;
  return result;
}

}  // namespace parkalloc
