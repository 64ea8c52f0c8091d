// Acceptance gate for the toolkit: eight end-to-end checks covering the
// service-level quadratic, the published permit table, objective
// reproduction under both policies, the feasibility contrast, agreement
// with the exhaustive reference, integrality, simulation statistics, and
// serialization determinism. Prints one line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parkalloc/allocate.hpp"
#include "parkalloc/core.hpp"
#include "parkalloc/ingest.hpp"
#include "parkalloc/oracle.hpp"
#include "parkalloc/permits.hpp"
#include "parkalloc/simulate.hpp"
#include "test_util.hpp"

using namespace parkalloc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Criterion> g_results;

void record(const std::string& name, bool pass, const std::string& detail) {
  g_results.push_back({name, pass, detail});
}

template <typename Fn>
void criterion(const std::string& name, Fn&& fn) {
  try {
    auto [pass, detail] = fn();
    record(name, pass, detail);
  } catch (const std::exception& e) {
    record(name, false, std::string("unexpected exception: ") + e.what());
  }
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::pair<bool, std::string> quadratic_criterion() {
  auto inst = testutil::ukzn();
  auto setup = build_quadratic(inst);
  auto roots = solve_quadratic(setup.a, setup.b, setup.c);
  double root = roots.low > 0.0 ? roots.low : roots.high;

  bool ok = setup.a == 4.0 && std::fabs(setup.b + 113.2122) <= 1e-3 &&
            std::fabs(setup.c - 164.4) <= 1e-1 &&
            std::fabs(root - 1.535) <= 1e-3;
  std::ostringstream detail;
  detail << "a=" << setup.a << " b=" << fmt(setup.b) << " c=" << fmt(setup.c)
         << " root=" << fmt(root);
  return {ok, detail.str()};
}

std::pair<bool, std::string> permit_table_criterion() {
  auto inst = testutil::ukzn();
  auto permits = compute_permits(inst);
  const std::vector<std::int64_t> expected{258, 138, 157, 178, 68, 491};
  std::int64_t total = 0;
  for (auto v : permits.per_lot) total += v;

  bool ok = permits.per_lot == expected && total == 1290;
  std::ostringstream detail;
  detail << "issued {";
  for (std::size_t k = 0; k < permits.per_lot.size(); ++k) {
    detail << (k ? "," : "") << permits.per_lot[k];
  }
  detail << "} total " << total;
  return {ok, detail.str()};
}

std::pair<bool, std::string> objective_criterion() {
  auto inst = testutil::ukzn();
  auto permits = compute_permits(inst);

  auto start = Clock::now();
  auto reserved = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                    true));
  auto open = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                false));
  double elapsed = seconds_since(start);

  bool certified =
      reserved.certificate.empty() && open.certificate.empty();
  bool matches =
      reserved.plan.objective == 229160 && open.plan.objective == 210395;
  bool fast = elapsed < 1.0;

  std::ostringstream detail;
  detail << "Z=" << reserved.plan.objective << "/" << open.plan.objective
         << " in " << fmt(elapsed * 1000.0, 1) << " ms";
  if (!certified) detail << "; optimality certificate FAILED";
  if (!matches) {
    // Proven-optimal values that differ from the reference numbers would
    // point at the reference configuration, not the solver; the
    // certificate is the deeper check, but the discrepancy must be loud.
    detail << "; expected 229160/210395";
  }
  return {certified && matches && fast, detail.str()};
}

std::pair<bool, std::string> contrast_criterion() {
  auto inst = testutil::ukzn();
  auto permits = compute_permits(inst);
  auto reserved = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                    true));
  auto open = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                false));

  auto open_under_reserved =
      check_plan(inst, permits.per_lot, open.plan, true);
  auto reserved_under_reserved =
      check_plan(inst, permits.per_lot, reserved.plan, true);

  bool names_minimums = false;
  for (const auto& v : open_under_reserved.violations) {
    if (v.find("dedicated minimum") != std::string::npos) {
      names_minimums = true;
    }
  }
  bool ok = !open_under_reserved.ok() && names_minimums &&
            reserved_under_reserved.ok();
  std::ostringstream detail;
  detail << "open plan: " << open_under_reserved.violations.size()
         << " dedicated-minimum violation(s); reserved plan: "
         << reserved_under_reserved.violations.size();
  return {ok, detail.str()};
}

std::pair<bool, std::string> oracle_criterion() {
  auto start = Clock::now();
  std::mt19937_64 rng(271828);
  int compared = 0;
  int attempts = 0;
  int mismatches = 0;
  while (compared < 100 && attempts < 10000) {
    ++attempts;
    auto inst = testutil::random_instance(rng);
    PermitIssuance permits;
    try {
      permits = compute_permits(inst);
    } catch (const Error&) {
      continue;  // no admissible issuance; nothing to compare
    }
    bool counted = false;
    bool skipped = false;
    for (bool reserved : {true, false}) {
      bool solver_feasible = true;
      bool oracle_feasible = true;
      SolveOutcome outcome;
      OracleResult reference;
      try {
        outcome = solve_min_cost_flow(
            build_network(inst, permits.per_lot, reserved));
      } catch (const InfeasibleError&) {
        solver_feasible = false;
      }
      try {
        reference = brute_force_optimum(inst, permits.per_lot, reserved);
      } catch (const InfeasibleError&) {
        oracle_feasible = false;
      } catch (const BudgetExceededError&) {
        skipped = true;
        break;
      }
      if (solver_feasible != oracle_feasible) {
        ++mismatches;
      } else if (solver_feasible &&
                 outcome.plan.objective != reference.plan.objective) {
        ++mismatches;
      }
      counted = true;
    }
    if (counted && !skipped) ++compared;
  }
  double elapsed = seconds_since(start);

  bool ok = compared == 100 && mismatches == 0 && elapsed < 60.0;
  std::ostringstream detail;
  detail << compared << " instances, " << mismatches << " disagreement(s), "
         << fmt(elapsed, 2) << " s";
  return {ok, detail.str()};
}

std::pair<bool, std::string> integrality_criterion() {
  std::mt19937_64 rng(314159);
  int plans_checked = 0;
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = (trial % 2 == 0) ? testutil::random_instance(rng)
                                 : testutil::random_instance_wide(rng);
    std::vector<std::int64_t> per_lot;
    try {
      per_lot = compute_permits(inst).per_lot;
    } catch (const Error&) {
      per_lot = testutil::random_intakes(rng, inst);
    }
    for (bool reserved : {true, false}) {
      SolveOutcome outcome;
      try {
        outcome = solve_min_cost_flow(
            build_network(inst, per_lot, reserved));
      } catch (const InfeasibleError&) {
        continue;
      } catch (const PermitMismatchError&) {
        continue;
      }
      auto report = check_plan(inst, per_lot, outcome.plan, reserved);
      violations += static_cast<int>(report.violations.size());
      if (!outcome.certificate.empty()) ++violations;
      ++plans_checked;
    }
  }
  bool ok = violations == 0 && plans_checked >= 500;
  std::ostringstream detail;
  detail << "1000 instances, " << plans_checked << " plans checked, "
         << violations << " violation(s)";
  return {ok, detail.str()};
}

std::pair<bool, std::string> simulation_criterion() {
  auto inst = testutil::ukzn();
  auto permits = compute_permits(inst);
  const std::int64_t trials = 100000;
  auto start = Clock::now();
  auto report = simulate_arrivals(inst, permits.per_lot, trials, 42);
  double elapsed = seconds_since(start);

  bool ok = report.lots.size() == 6;
  double worst_rate_gap = 0.0;
  double worst_mean_gap = 0.0;
  for (const auto& lot : report.lots) {
    double q = lot.exact_overflow;
    double rate_band =
        4.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
    double rate_gap = std::fabs(lot.overflow_rate - q);
    if (rate_gap > rate_band) ok = false;
    if (rate_gap > worst_rate_gap) worst_rate_gap = rate_gap;

    double mean_band =
        3.0 * lot.expected_std / std::sqrt(static_cast<double>(trials));
    double mean_gap = std::fabs(lot.mean_arrivals - lot.expected_mean);
    if (mean_gap > mean_band) ok = false;
    if (mean_gap > worst_mean_gap) worst_mean_gap = mean_gap;
  }
  std::ostringstream detail;
  detail << "100000 trials, worst overflow gap " << fmt(worst_rate_gap, 5)
         << ", worst mean gap " << fmt(worst_mean_gap, 4) << ", "
         << fmt(elapsed, 2) << " s";
  return {ok, detail.str()};
}

std::pair<bool, std::string> roundtrip_criterion() {
  auto inst = testutil::ukzn();
  bool ok = true;

  // Instance text survives a rewrite cycle bit-for-bit.
  std::string text = write_instance(inst);
  auto reparsed = parse_instance(text);
  if (!(reparsed == inst)) ok = false;
  if (write_instance(reparsed) != text) ok = false;

  // Plans survive the JSON cycle exactly, including an all-zero plan.
  auto permits = compute_permits(inst);
  auto outcome = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                   true));
  if (!(parse_plan(write_plan(outcome.plan, OutputFormat::Json)) ==
        outcome.plan)) {
    ok = false;
  }
  AllocationPlan empty;
  empty.types = 2;
  empty.buildings = 1;
  empty.lots = 3;
  empty.assignments.assign(6, 0);
  empty.reserved_mode = false;
  if (!(parse_plan(write_plan(empty, OutputFormat::Json)) == empty)) {
    ok = false;
  }

  // Permit issuances survive their JSON cycle.
  if (!(parse_permits(write_permits(permits, OutputFormat::Json)) ==
        permits)) {
    ok = false;
  }

  // Identical inputs give bit-identical artifacts, end to end.
  auto again = solve_min_cost_flow(build_network(inst, permits.per_lot,
                                                 true));
  if (!(again.plan == outcome.plan)) ok = false;
  for (auto format :
       {OutputFormat::Table, OutputFormat::Json, OutputFormat::Csv}) {
    if (write_plan(again.plan, format, &inst) !=
        write_plan(outcome.plan, format, &inst)) {
      ok = false;
    }
  }
  auto sim_a = simulate_arrivals(inst, permits.per_lot, 2000, 9);
  auto sim_b = simulate_arrivals(inst, permits.per_lot, 2000, 9);
  if (write_overflow(sim_a, OutputFormat::Json, &inst) !=
      write_overflow(sim_b, OutputFormat::Json, &inst)) {
    ok = false;
  }
  return {ok, "instance, plan, permits, and report cycles are exact"};
}

}  // namespace

int main() {
  criterion("1. service-level quadratic matches the reference coefficients",
            quadratic_criterion);
  criterion("2. permit issuance reproduces the published table",
            permit_table_criterion);
  criterion("3. reserved and open optima hit the reference objectives",
            objective_criterion);
  criterion("4. open optimum breaks the reserved minimums; reserved plan "
            "does not",
            contrast_criterion);
  criterion("5. flow solver agrees with the exhaustive reference",
            oracle_criterion);
  criterion("6. every plan is integral and passes the independent checker",
            integrality_criterion);
  criterion("7. simulated overflow statistics match the closed forms",
            simulation_criterion);
  criterion("8. serialization round-trips and reruns are bit-identical",
            roundtrip_criterion);

  int failures = 0;
  for (const auto& c : g_results) {
    if (!c.pass) ++failures;
    std::printf("[%s] %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failures,
              g_results.size());
  return failures == 0 ? 0 : 1;
}
