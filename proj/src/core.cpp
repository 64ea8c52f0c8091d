#include "parkalloc/core.hpp"

#include <string>

namespace parkalloc {

Totals derived_totals(const ProblemInstance& instance) {
  Totals t;
  t.users_per_type.assign(instance.type_count(), 0);
  for (const auto& b : instance.buildings) {
    for (int i = 0; i < instance.type_count(); ++i) {
      t.users_per_type[i] += b.demand[i];
      t.total_users += b.demand[i];
    }
  }
  t.spaces_per_lot.reserve(instance.lots.size());
  for (const auto& lot : instance.lots) {
    t.spaces_per_lot.push_back(lot.total_capacity());
    t.total_spaces += t.spaces_per_lot.back();
  }
  return t;
}

ValidationReport validate_instance(const ProblemInstance& instance) {
  ValidationReport report;
  auto err = [&report](std::string msg) { report.errors.push_back(std::move(msg)); };

  const int l = instance.type_count();
  const int m = instance.building_count();
  const int n = instance.lot_count();

  if (l == 0) err("no permit types declared");

  for (int i = 0; i < l; ++i) {
    if (instance.permit_types[i].id != i + 1) {
      err("permit type ids must be dense and 1-based; position " +
          std::to_string(i + 1) + " has id " +
          std::to_string(instance.permit_types[i].id));
    }
  }
  for (int j = 0; j < m; ++j) {
    const auto& b = instance.buildings[j];
    if (b.id != j + 1) {
      err("building ids must be dense and 1-based; position " +
          std::to_string(j + 1) + " has id " + std::to_string(b.id));
    }
    if (static_cast<int>(b.demand.size()) != l) {
      err("dimension mismatch: building " + std::to_string(b.id) + " has " +
          std::to_string(b.demand.size()) + " demand entries for " +
          std::to_string(l) + " permit types");
      continue;
    }
    for (int i = 0; i < l; ++i) {
      if (b.demand[i] < 0) {
        err("negative demand for building " + std::to_string(b.id) +
            ", permit type " + std::to_string(i + 1));
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    const auto& lot = instance.lots[k];
    if (lot.id != k + 1) {
      err("lot ids must be dense and 1-based; position " +
          std::to_string(k + 1) + " has id " + std::to_string(lot.id));
    }
    if (static_cast<int>(lot.capacity.size()) != l) {
      err("dimension mismatch: lot " + std::to_string(lot.id) + " has " +
          std::to_string(lot.capacity.size()) + " capacity entries for " +
          std::to_string(l) + " permit types");
      continue;
    }
    for (int i = 0; i < l; ++i) {
      if (lot.capacity[i] < 0) {
        err("negative capacity for lot " + std::to_string(lot.id) +
            ", permit type " + std::to_string(i + 1));
      }
    }
  }

  if (instance.distances.building_count != m ||
      instance.distances.lot_count != n ||
      static_cast<int>(instance.distances.cost.size()) !=
          m * n) {
    err("dimension mismatch: distance matrix is " +
        std::to_string(instance.distances.building_count) + "x" +
        std::to_string(instance.distances.lot_count) + ", expected " +
        std::to_string(m) + "x" + std::to_string(n));
  } else {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        if (instance.distances.at(j, k) < 0) {
          err("negative distance for building " + std::to_string(j + 1) +
              ", lot " + std::to_string(k + 1));
        }
      }
    }
  }

  if (!(instance.arrival_probability > 0.0) ||
      instance.arrival_probability > 1.0) {
    err("arrival probability outside (0,1]");
  }

  if (!report.errors.empty()) return report;

  // Non-fatal findings, computed only on structurally sound instances.
  Totals totals = derived_totals(instance);
  for (int i = 0; i < l; ++i) {
    if (!instance.permit_types[i].reserved) continue;
    std::int64_t cap = 0;
    for (const auto& lot : instance.lots) cap += lot.capacity[i];
    if (totals.users_per_type[i] != cap) {
      report.warnings.push_back("reserved totals differ (" +
                                std::to_string(totals.users_per_type[i]) +
                                " vs " + std::to_string(cap) + ")");
    }
  }
  if (totals.total_users <= totals.total_spaces) {
    report.warnings.push_back(
        "total demand " + std::to_string(totals.total_users) +
        " does not exceed total capacity " +
        std::to_string(totals.total_spaces) +
        "; over-issuance is designed for the oversubscribed case");
  }
  return report;
}

std::int64_t recompute_objective(const ProblemInstance& instance,
                                 const AllocationPlan& plan) {
  std::int64_t z = 0;
  for (int i = 0; i < plan.types; ++i) {
    for (int j = 0; j < plan.buildings; ++j) {
      for (int k = 0; k < plan.lots; ++k) {
        z += plan.at(i, j, k) * instance.distance(j, k);
      }
    }
  }
  return z;
}

}  // namespace parkalloc
