#include "parkalloc/permits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace parkalloc {

QuadraticRoots solve_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    throw DegenerateQuadraticError("leading coefficient is zero");
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    throw NoRealRootError("discriminant " + std::to_string(disc) +
                          " is negative");
  }
  // q carries the sign of b so the subtraction never cancels.
  double q = -(b + std::copysign(std::sqrt(disc), b)) / 2.0;
  double r1 = q / a;
  double r2 = (q != 0.0) ? c / q : 0.0;
  return {std::min(r1, r2), std::max(r1, r2)};
}

QuadraticSetup build_quadratic(const ProblemInstance& instance) {
  Totals totals = derived_totals(instance);
  QuadraticSetup setup;
  setup.effective_users = totals.total_users;

  double sqrt_sum = 0.0;
  std::int64_t space_sum = 0;
  for (int k = 0; k < instance.lot_count(); ++k) {
    if (instance.lot_fully_reserved(k)) {
      setup.fully_reserved.push_back(k);
      setup.effective_users -= totals.spaces_per_lot[k];
    } else {
      ++setup.participating_lots;
      sqrt_sum += std::sqrt(static_cast<double>(totals.spaces_per_lot[k]));
      space_sum += totals.spaces_per_lot[k];
    }
  }
  if (setup.participating_lots == 0) {
    throw AllLotsReservedError(
        "every lot is fully reserved; no lot participates in the "
        "service-level quadratic");
  }

  double p = instance.arrival_probability;
  setup.a = static_cast<double>(setup.participating_lots);
  setup.b = -2.0 * sqrt_sum;
  setup.c = -2.0 * (p * static_cast<double>(setup.effective_users) -
                    static_cast<double>(space_sum));
  return setup;
}

std::vector<std::int64_t> apportion(const std::vector<double>& values,
                                    std::int64_t target) {
  std::vector<std::int64_t> out(values.size());
  std::vector<double> residual(values.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) throw Error("apportion requires non-negative values");
    out[i] = static_cast<std::int64_t>(std::floor(values[i] + 0.5));
    residual[i] = values[i] - static_cast<double>(out[i]);
    sum += out[i];
  }
  std::int64_t diff = target - sum;
  if (std::llabs(diff) > static_cast<std::int64_t>(values.size())) {
    throw Error("apportion target too far from rounded sum");
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  if (diff > 0) {
    // Grant the missing units to the largest remainders, lower index first.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                       return residual[x] > residual[y];
                     });
    for (std::int64_t g = 0; g < diff; ++g) ++out[order[g]];
  } else if (diff < 0) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                       return residual[x] < residual[y];
                     });
    for (std::int64_t g = 0; g < -diff; ++g) --out[order[g]];
  }
  return out;
}

PermitIssuance compute_permits(const ProblemInstance& instance) {
  Totals totals = derived_totals(instance);
  PermitIssuance issuance;
  issuance.per_lot.assign(instance.lot_count(), 0);

  std::vector<int> participating;
  std::int64_t reserved_spaces = 0;
  for (int k = 0; k < instance.lot_count(); ++k) {
    if (instance.lot_fully_reserved(k)) {
      issuance.fully_reserved_lots.push_back(k);
      issuance.per_lot[k] = totals.spaces_per_lot[k];
      reserved_spaces += totals.spaces_per_lot[k];
    } else {
      participating.push_back(k);
    }
  }

  if (participating.empty()) {
    if (reserved_spaces != totals.total_users) {
      throw AllLotsReservedError(
          "every lot is fully reserved but demand " +
          std::to_string(totals.total_users) +
          " does not match reserved capacity " +
          std::to_string(reserved_spaces));
    }
    return issuance;  // permits equal capacities; no service level exists
  }

  QuadraticSetup setup = build_quadratic(instance);
  QuadraticRoots roots = solve_quadratic(setup.a, setup.b, setup.c);
  double deviate;
  if (roots.low > 0.0) {
    deviate = roots.low;
  } else if (roots.high > 0.0) {
    deviate = roots.high;
  } else {
    throw InfeasibleError(
        "service-level quadratic has no positive root; the permit budget "
        "cannot cover the participating lots");
  }

  double p = instance.arrival_probability;
  std::vector<double> sized;
  sized.reserve(participating.size());
  for (int k : participating) {
    double spaces = static_cast<double>(totals.spaces_per_lot[k]);
    sized.push_back((2.0 * spaces + deviate * deviate -
                     2.0 * deviate * std::sqrt(spaces)) /
                    (2.0 * p));
  }
  std::vector<std::int64_t> rounded = apportion(sized, setup.effective_users);
  for (std::size_t idx = 0; idx < participating.size(); ++idx) {
    issuance.per_lot[participating[idx]] = rounded[idx];
  }

  ServiceLevel service;
  service.deviate = deviate;
  service.a = setup.a;
  service.b = setup.b;
  service.c = setup.c;
  service.root_low = roots.low;
  service.root_high = roots.high;
  service.participating_lots = setup.participating_lots;
  service.effective_users = setup.effective_users;
  issuance.service = service;
  return issuance;
}

}  // namespace parkalloc
