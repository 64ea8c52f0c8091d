#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkalloc/core.hpp"

// Over-issuance permit sizing. With arrival probability p, a lot of N
// expected arrivals can safely issue more than N permits; the shared
// service-level deviate psi ties every lot to the same overflow risk while
// the issued totals exhaust the campus-wide permit budget.

namespace parkalloc {

struct QuadraticRoots {
  double low = 0.0;
  double high = 0.0;
};

// Both real roots of a*x^2 + b*x + c = 0, ordered low <= high.
// Throws DegenerateQuadraticError when a == 0, NoRealRootError when the
// discriminant is negative. Evaluated via the sign-aware formulation that
// avoids cancellation between -b and the discriminant root.
QuadraticRoots solve_quadratic(double a, double b, double c);

struct QuadraticSetup {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int participating_lots = 0;          // lots with unreserved capacity
  std::int64_t effective_users = 0;    // unreserved budget net of reserved-only lots
  std::vector<int> fully_reserved;     // 0-based lot indices left out
};

// Coefficients of the service-level quadratic. The permit budget is the
// instance's total demand; lots with no unreserved capacity are excluded
// from every sum and their space counts are deducted from the budget.
// Throws AllLotsReservedError when no lot participates.
QuadraticSetup build_quadratic(const ProblemInstance& instance);

struct ServiceLevel {
  double deviate = 0.0;  // chosen root: shared per-lot slack in stdev units
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double root_low = 0.0;
  double root_high = 0.0;
  int participating_lots = 0;
  std::int64_t effective_users = 0;

  bool operator==(const ServiceLevel&) const = default;
};

struct PermitIssuance {
  std::vector<std::int64_t> per_lot;         // issued permits per lot
  std::optional<ServiceLevel> service;       // absent when all lots reserved
  std::vector<int> fully_reserved_lots;      // 0-based

  bool operator==(const PermitIssuance&) const = default;
};

// Issued permit counts per lot, summing exactly to the total demand.
// Participating lots get the quadratic sizing rounded half-up and repaired
// by largest remainder; fully reserved lots are issued exactly their space
// counts. When every lot is fully reserved the call still succeeds (with
// no service level) provided demand equals reserved capacity, and raises
// AllLotsReservedError otherwise. The service deviate is the smallest
// positive root; InfeasibleError when no root is positive.
PermitIssuance compute_permits(const ProblemInstance& instance);

// Largest-remainder repair: round each value half-up, then adjust the
// entries with the largest residuals until the sum hits `target`. Ties go
// to the lower index. Values must be non-negative and target close enough
// that each entry moves at most one unit.
std::vector<std::int64_t> apportion(const std::vector<double>& values,
                                    std::int64_t target);

}  // namespace parkalloc
