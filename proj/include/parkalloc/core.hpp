#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core domain types for the campus parking allocation toolkit: permit types,
// buildings with per-type demand, lots with per-type capacity, the walking
// cost matrix, and the allocation result. All quantities are integers; all
// types are immutable value types once built.

namespace parkalloc {

// Base class for every structured failure in the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line_no = 0)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  int line;
};

// An instance failed semantic validation; the offending findings are kept.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, std::vector<std::string> errs)
      : Error(msg), errors(std::move(errs)) {}
  std::vector<std::string> errors;
};

class DegenerateQuadraticError : public Error {
 public:
  using Error::Error;
};

class NoRealRootError : public Error {
 public:
  using Error::Error;
};

class AllLotsReservedError : public Error {
 public:
  using Error::Error;
};

class PermitMismatchError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// No feasible assignment exists. When the failure is a set of unmeetable
// reserved minimums, `unmet_bounds` holds the offending (permit type id,
// lot id) pairs, 1-based.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& msg,
                           std::vector<std::pair<int, int>> bounds = {})
      : Error(msg), unmet_bounds(std::move(bounds)) {}
  std::vector<std::pair<int, int>> unmet_bounds;
};

struct PermitType {
  int id = 0;  // dense, unique, 1-based
  std::string label;
  bool reserved = false;

  bool operator==(const PermitType&) const = default;
};

struct Building {
  int id = 0;
  std::string label;
  std::vector<std::int64_t> demand;  // users per permit type

  bool operator==(const Building&) const = default;
};

struct ParkingLot {
  int id = 0;
  std::string label;
  std::vector<std::int64_t> capacity;  // spaces per permit type

  std::int64_t total_capacity() const {
    std::int64_t total = 0;
    for (auto c : capacity) total += c;
    return total;
  }

  bool operator==(const ParkingLot&) const = default;
};

// Complete building x lot walking-cost matrix, row-major by building.
struct DistanceMatrix {
  int building_count = 0;
  int lot_count = 0;
  std::vector<std::int64_t> cost;

  std::int64_t at(int building, int lot) const {
    return cost[static_cast<std::size_t>(building) * lot_count + lot];
  }
  std::int64_t& at(int building, int lot) {
    return cost[static_cast<std::size_t>(building) * lot_count + lot];
  }

  bool operator==(const DistanceMatrix&) const = default;
};

struct ProblemInstance {
  std::vector<PermitType> permit_types;
  std::vector<Building> buildings;
  std::vector<ParkingLot> lots;
  DistanceMatrix distances;
  double arrival_probability = 0.7;

  int type_count() const { return static_cast<int>(permit_types.size()); }
  int building_count() const { return static_cast<int>(buildings.size()); }
  int lot_count() const { return static_cast<int>(lots.size()); }

  std::int64_t demand(int type, int building) const {
    return buildings[building].demand[type];
  }
  std::int64_t capacity(int type, int lot) const {
    return lots[lot].capacity[type];
  }
  std::int64_t distance(int building, int lot) const {
    return distances.at(building, lot);
  }

  // A lot is fully reserved when it has no capacity under any unreserved
  // permit type; such lots never take part in the over-issuance quadratic.
  bool lot_fully_reserved(int lot) const {
    for (int i = 0; i < type_count(); ++i) {
      if (!permit_types[i].reserved && lots[lot].capacity[i] > 0) return false;
    }
    return true;
  }

  bool operator==(const ProblemInstance&) const = default;
};

struct Totals {
  std::int64_t total_users = 0;                // all users demanding parking
  std::int64_t total_spaces = 0;               // all spaces across lots
  std::vector<std::int64_t> users_per_type;    // per permit type
  std::vector<std::int64_t> spaces_per_lot;    // per lot
};

Totals derived_totals(const ProblemInstance& instance);

struct ValidationReport {
  std::vector<std::string> errors;    // fatal
  std::vector<std::string> warnings;  // non-fatal

  bool ok() const { return errors.empty(); }
};

// Pure structural/semantic check; never throws -- all findings go in the
// report. Errors: dimension mismatches, negative values, non-dense ids,
// arrival probability out of range. Warnings: reserved demand differing
// from reserved capacity, and total demand not exceeding total supply.
ValidationReport validate_instance(const ProblemInstance& instance);

// Integral assignment tensor: assignments[type][building][lot] users.
struct AllocationPlan {
  int types = 0;
  int buildings = 0;
  int lots = 0;
  std::vector<std::int64_t> assignments;  // row-major (type, building, lot)
  std::int64_t objective = 0;             // distance-person units
  bool reserved_mode = true;

  std::int64_t at(int type, int building, int lot) const {
    return assignments[(static_cast<std::size_t>(type) * buildings + building) * lots + lot];
  }
  std::int64_t& at(int type, int building, int lot) {
    return assignments[(static_cast<std::size_t>(type) * buildings + building) * lots + lot];
  }

  bool operator==(const AllocationPlan&) const = default;
};

// Recomputes the walking-cost objective of `plan` against `instance` by
// direct summation, independent of whatever produced the plan.
std::int64_t recompute_objective(const ProblemInstance& instance,
                                 const AllocationPlan& plan);

}  // namespace parkalloc
