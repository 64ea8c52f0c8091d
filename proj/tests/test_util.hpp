#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "parkalloc/core.hpp"
#include "parkalloc/ingest.hpp"

// Shared fixtures for the test binaries: the bundled campus instance, a
// compact builder for hand-written cases, and a seeded generator for
// property tests.

namespace testutil {

inline parkalloc::ProblemInstance ukzn() {
  return parkalloc::load_instance(std::string(TEST_DATA_DIR) +
                                  "/ukzn_westville.instance");
}

// types: (label, reserved). demand: rows by building, one entry per type.
// capacity: rows by lot. distance: building x lot.
inline parkalloc::ProblemInstance make_instance(
    std::vector<std::pair<std::string, bool>> types,
    std::vector<std::vector<std::int64_t>> demand,
    std::vector<std::vector<std::int64_t>> capacity,
    std::vector<std::vector<std::int64_t>> distance, double p = 0.7) {
  parkalloc::ProblemInstance inst;
  inst.arrival_probability = p;
  for (std::size_t i = 0; i < types.size(); ++i) {
    inst.permit_types.push_back({static_cast<int>(i) + 1, types[i].first,
                                 types[i].second});
  }
  for (std::size_t j = 0; j < demand.size(); ++j) {
    parkalloc::Building b;
    b.id = static_cast<int>(j) + 1;
    b.label = "B" + std::to_string(j + 1);
    b.demand = demand[j];
    inst.buildings.push_back(std::move(b));
  }
  for (std::size_t k = 0; k < capacity.size(); ++k) {
    parkalloc::ParkingLot lot;
    lot.id = static_cast<int>(k) + 1;
    lot.label = "L" + std::to_string(k + 1);
    lot.capacity = capacity[k];
    inst.lots.push_back(std::move(lot));
  }
  inst.distances.building_count = static_cast<int>(distance.size());
  inst.distances.lot_count =
      distance.empty() ? static_cast<int>(capacity.size())
                       : static_cast<int>(distance[0].size());
  for (const auto& row : distance) {
    for (auto v : row) inst.distances.cost.push_back(v);
  }
  return inst;
}

// Small random instance: 1-2 types, 1-3 buildings, 1-3 lots, demands <= 5.
// Capacities are modest and may well make reserved mode infeasible, which
// the agreement tests rely on.
inline parkalloc::ProblemInstance random_instance(std::mt19937_64& rng) {
  auto roll = [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % (hi - lo + 1));
  };
  int l = static_cast<int>(roll(1, 2));
  int m = static_cast<int>(roll(1, 3));
  int n = static_cast<int>(roll(1, 3));

  std::vector<std::pair<std::string, bool>> types;
  for (int i = 0; i < l; ++i) {
    types.emplace_back("T" + std::to_string(i + 1), i == 0 && roll(0, 1) == 1);
  }
  std::vector<std::vector<std::int64_t>> demand(m);
  for (auto& row : demand) {
    for (int i = 0; i < l; ++i) row.push_back(roll(0, 5));
  }
  std::vector<std::vector<std::int64_t>> capacity(n);
  for (auto& row : capacity) {
    for (int i = 0; i < l; ++i) row.push_back(roll(0, 3));
  }
  std::vector<std::vector<std::int64_t>> distance(m);
  for (auto& row : distance) {
    for (int k = 0; k < n; ++k) row.push_back(roll(0, 20));
  }
  return make_instance(std::move(types), std::move(demand),
                       std::move(capacity), std::move(distance));
}

// A wider generator for stress checks: up to 3 types, 6 buildings, 5 lots.
inline parkalloc::ProblemInstance random_instance_wide(std::mt19937_64& rng) {
  auto roll = [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % (hi - lo + 1));
  };
  int l = static_cast<int>(roll(1, 3));
  int m = static_cast<int>(roll(1, 6));
  int n = static_cast<int>(roll(1, 5));

  std::vector<std::pair<std::string, bool>> types;
  for (int i = 0; i < l; ++i) {
    types.emplace_back("T" + std::to_string(i + 1), roll(0, 3) == 0);
  }
  std::vector<std::vector<std::int64_t>> demand(m);
  for (auto& row : demand) {
    for (int i = 0; i < l; ++i) row.push_back(roll(0, 20));
  }
  std::vector<std::vector<std::int64_t>> capacity(n);
  for (auto& row : capacity) {
    for (int i = 0; i < l; ++i) row.push_back(roll(0, 8));
  }
  std::vector<std::vector<std::int64_t>> distance(m);
  for (auto& row : distance) {
    for (int k = 0; k < n; ++k) row.push_back(roll(0, 50));
  }
  return make_instance(std::move(types), std::move(demand),
                       std::move(capacity), std::move(distance));
}

// Random lot intakes summing exactly to the instance's total demand.
inline std::vector<std::int64_t> random_intakes(
    std::mt19937_64& rng, const parkalloc::ProblemInstance& inst) {
  std::vector<std::int64_t> intake(inst.lot_count(), 0);
  if (inst.lot_count() == 0) return intake;
  std::int64_t total = parkalloc::derived_totals(inst).total_users;
  for (std::int64_t u = 0; u < total; ++u) {
    intake[rng() % intake.size()] += 1;
  }
  return intake;
}

}  // namespace testutil
