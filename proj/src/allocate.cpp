#include "parkalloc/allocate.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace parkalloc {

FlowNetwork build_network(const ProblemInstance& instance,
                          const std::vector<std::int64_t>& permits,
                          bool reserved_mode) {
  const int l = instance.type_count();
  const int m = instance.building_count();
  const int n = instance.lot_count();

  Totals totals = derived_totals(instance);
  std::int64_t issued = 0;
  for (auto a : permits) issued += a;
  if (static_cast<int>(permits.size()) != n || issued != totals.total_users) {
    throw PermitMismatchError("issued permits total " + std::to_string(issued) +
                              " but demand totals " +
                              std::to_string(totals.total_users));
  }

  FlowNetwork net;
  net.types = l;
  net.buildings = m;
  net.lots = n;
  net.reserved_mode = reserved_mode;

  const int source = 0;
  auto group_node = [m](int i, int j) { return 1 + i * m + j; };
  auto pair_node = [l, m, n](int i, int k) { return 1 + l * m + i * n + k; };
  auto lot_node = [l, m, n](int k) { return 1 + l * m + l * n + k; };
  const int sink = 1 + l * m + l * n + n;
  net.node_count = sink + 1;

  net.supply.assign(net.node_count, 0);
  net.supply[source] = totals.total_users;
  net.supply[sink] = -totals.total_users;

  const std::int64_t uncapped = totals.total_users;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      NetArc na;
      na.arc = {source, group_node(i, j), 0, instance.demand(i, j), 0};
      na.kind = ArcKind::GroupSupply;
      na.type = i;
      na.building = j;
      net.arcs.push_back(na);
    }
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        NetArc na;
        na.arc = {group_node(i, j), pair_node(i, k), 0, uncapped,
                  instance.distance(j, k)};
        na.kind = ArcKind::Assignment;
        na.type = i;
        na.building = j;
        na.lot = k;
        net.arcs.push_back(na);
      }
    }
  }
  for (int i = 0; i < l; ++i) {
    for (int k = 0; k < n; ++k) {
      NetArc na;
      std::int64_t lower = reserved_mode ? instance.capacity(i, k) : 0;
      na.arc = {pair_node(i, k), lot_node(k), lower, uncapped, 0};
      na.kind = ArcKind::LotIntake;
      na.type = i;
      na.lot = k;
      net.arcs.push_back(na);
    }
  }
  for (int k = 0; k < n; ++k) {
    NetArc na;
    na.arc = {lot_node(k), sink, 0, permits[k], 0};
    na.kind = ArcKind::LotOutlet;
    na.lot = k;
    net.arcs.push_back(na);
  }
  return net;
}

namespace {

// For this layered topology the lower bounds are jointly satisfiable iff
// no permit type promises more dedicated spaces than it has users and no
// lot promises more than its issued permits; the middle layer is complete
// per type with slack caps, so these two families are also sufficient.
std::vector<std::pair<int, int>> unmeetable_bounds(const FlowNetwork& net) {
  std::vector<std::int64_t> type_users(net.types, 0);
  std::vector<std::int64_t> lot_permits(net.lots, 0);
  std::vector<std::int64_t> type_bound(net.types, 0);
  std::vector<std::int64_t> lot_bound(net.lots, 0);
  std::vector<std::vector<std::int64_t>> bound(
      net.types, std::vector<std::int64_t>(net.lots, 0));
  for (const auto& na : net.arcs) {
    switch (na.kind) {
      case ArcKind::GroupSupply:
        type_users[na.type] += na.arc.capacity;
        break;
      case ArcKind::LotIntake:
        bound[na.type][na.lot] = na.arc.lower;
        type_bound[na.type] += na.arc.lower;
        lot_bound[na.lot] += na.arc.lower;
        break;
      case ArcKind::LotOutlet:
        lot_permits[na.lot] += na.arc.capacity;
        break;
      case ArcKind::Assignment:
        break;
    }
  }

  std::vector<std::pair<int, int>> unmet;
  auto add_row = [&](int i) {
    for (int k = 0; k < net.lots; ++k) {
      if (bound[i][k] > 0) unmet.emplace_back(i + 1, k + 1);
    }
  };
  auto add_col = [&](int k) {
    for (int i = 0; i < net.types; ++i) {
      if (bound[i][k] > 0) unmet.emplace_back(i + 1, k + 1);
    }
  };
  for (int i = 0; i < net.types; ++i) {
    if (type_bound[i] > type_users[i]) add_row(i);
  }
  for (int k = 0; k < net.lots; ++k) {
    if (lot_bound[k] > lot_permits[k]) add_col(k);
  }
  std::sort(unmet.begin(), unmet.end());
  unmet.erase(std::unique(unmet.begin(), unmet.end()), unmet.end());
  return unmet;
}

std::string describe_bounds(const std::vector<std::pair<int, int>>& bounds) {
  std::string s;
  for (const auto& [i, k] : bounds) {
    if (!s.empty()) s += ", ";
    s += "(type " + std::to_string(i) + ", lot " + std::to_string(k) + ")";
  }
  return s;
}

}  // namespace

SolveOutcome solve_min_cost_flow(const FlowNetwork& network) {
  auto unmet = unmeetable_bounds(network);
  if (!unmet.empty()) {
    std::string described = describe_bounds(unmet);
    throw InfeasibleError(
        "dedicated-space minimums cannot all be met: " + described,
        std::move(unmet));
  }

  SolveOutcome outcome;
  outcome.flow = parkalloc::solve_min_cost_flow(
      network.node_count, network.raw_arcs(), network.supply);

  outcome.plan.types = network.types;
  outcome.plan.buildings = network.buildings;
  outcome.plan.lots = network.lots;
  outcome.plan.reserved_mode = network.reserved_mode;
  outcome.plan.assignments.assign(
      static_cast<std::size_t>(network.types) * network.buildings *
          network.lots,
      0);
  for (std::size_t idx = 0; idx < network.arcs.size(); ++idx) {
    const auto& na = network.arcs[idx];
    if (na.kind != ArcKind::Assignment) continue;
    outcome.plan.at(na.type, na.building, na.lot) = outcome.flow.flow[idx];
  }
  outcome.plan.objective = outcome.flow.total_cost;

  outcome.certificate = certificate_violations(
      network.node_count, network.raw_arcs(), network.supply, outcome.flow);
  return outcome;
}

ConstraintReport check_plan(const ProblemInstance& instance,
                            const std::vector<std::int64_t>& permits,
                            const AllocationPlan& plan, bool reserved_mode) {
  ConstraintReport report;
  auto bad = [&report](std::string msg) {
    report.violations.push_back(std::move(msg));
  };

  const int l = instance.type_count();
  const int m = instance.building_count();
  const int n = instance.lot_count();
  if (plan.types != l || plan.buildings != m || plan.lots != n ||
      plan.assignments.size() !=
          static_cast<std::size_t>(l) * m * n ||
      static_cast<int>(permits.size()) != n) {
    bad("dimension mismatch between plan, permits, and instance");
    return report;
  }

  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        if (plan.at(i, j, k) < 0) {
          bad("negative assignment at type " + std::to_string(i + 1) +
              ", building " + std::to_string(j + 1) + ", lot " +
              std::to_string(k + 1));
        }
      }
    }
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      std::int64_t seated = 0;
      for (int k = 0; k < n; ++k) seated += plan.at(i, j, k);
      if (seated != instance.demand(i, j)) {
        bad("demand group (type " + std::to_string(i + 1) + ", building " +
            std::to_string(j + 1) + ") seats " + std::to_string(seated) +
            " of " + std::to_string(instance.demand(i, j)) + " users");
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    std::int64_t absorbed = 0;
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < m; ++j) absorbed += plan.at(i, j, k);
    }
    if (absorbed != permits[k]) {
      bad("lot " + std::to_string(k + 1) + " absorbs " +
          std::to_string(absorbed) + " users but issued " +
          std::to_string(permits[k]) + " permits");
    }
  }
  if (reserved_mode) {
    for (int i = 0; i < l; ++i) {
      for (int k = 0; k < n; ++k) {
        std::int64_t bound = instance.capacity(i, k);
        if (bound == 0) continue;
        std::int64_t got = 0;
        for (int j = 0; j < m; ++j) got += plan.at(i, j, k);
        if (got < bound) {
          bad("dedicated minimum unmet at type " + std::to_string(i + 1) +
              ", lot " + std::to_string(k + 1) + ": " + std::to_string(got) +
              " < " + std::to_string(bound));
        }
      }
    }
  }

  report.objective = recompute_objective(instance, plan);
  if (report.objective != plan.objective) {
    bad("stated objective " + std::to_string(plan.objective) +
        " differs from recomputed " + std::to_string(report.objective));
  }
  return report;
}

ConstraintReport check_plan(const ProblemInstance& instance,
                            const std::vector<std::int64_t>& permits,
                            const AllocationPlan& plan) {
  return check_plan(instance, permits, plan, plan.reserved_mode);
}

}  // namespace parkalloc
