#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "parkalloc/core.hpp"
#include "test_util.hpp"

using namespace parkalloc;

namespace {

bool any_contains(const std::vector<std::string>& msgs,
                  const std::string& needle) {
  for (const auto& msg : msgs) {
    if (msg.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("derived totals on the campus instance") {
  auto inst = testutil::ukzn();
  Totals t = derived_totals(inst);
  CHECK(t.total_users == 1290);
  CHECK(t.total_spaces == 1047);
  REQUIRE(t.users_per_type.size() == 2);
  CHECK(t.users_per_type[0] == 377);
  CHECK(t.users_per_type[1] == 913);
  REQUIRE(t.spaces_per_lot.size() == 6);
  CHECK(t.spaces_per_lot == std::vector<std::int64_t>{201, 138, 126, 142, 68, 372});
}

TEST_CASE("derived totals on an empty instance") {
  ProblemInstance inst;
  Totals t = derived_totals(inst);
  CHECK(t.total_users == 0);
  CHECK(t.total_spaces == 0);
  CHECK(t.users_per_type.empty());
  CHECK(t.spaces_per_lot.empty());
}

TEST_CASE("campus instance validates cleanly") {
  auto inst = testutil::ukzn();
  auto report = validate_instance(inst);
  CHECK(report.ok());
  CHECK(report.errors.empty());
  CHECK(report.warnings.empty());
}

TEST_CASE("reserved totals drifting by one produces a warning") {
  auto inst = testutil::ukzn();
  inst.buildings[0].demand[0] = 42;  // was 41
  auto report = validate_instance(inst);
  CHECK(report.ok());
  CHECK(any_contains(report.warnings, "reserved totals differ (378 vs 377)"));
}

TEST_CASE("demand vector of the wrong length is a dimension error") {
  auto inst = testutil::ukzn();
  inst.buildings[3].demand.push_back(7);
  auto report = validate_instance(inst);
  CHECK_FALSE(report.ok());
  CHECK(any_contains(report.errors, "dimension mismatch"));
  CHECK(any_contains(report.errors, "building 4"));
}

TEST_CASE("negative entries are named by position") {
  auto inst = testutil::ukzn();
  inst.distances.at(2, 4) = -5;
  auto report = validate_instance(inst);
  CHECK(any_contains(report.errors, "negative distance"));
  CHECK(any_contains(report.errors, "building 3"));
  CHECK(any_contains(report.errors, "lot 5"));

  auto inst2 = testutil::ukzn();
  inst2.buildings[1].demand[1] = -1;
  CHECK(any_contains(validate_instance(inst2).errors, "negative demand"));

  auto inst3 = testutil::ukzn();
  inst3.lots[5].capacity[0] = -3;
  CHECK(any_contains(validate_instance(inst3).errors, "negative capacity"));
}

TEST_CASE("arrival probability bounds") {
  auto inst = testutil::ukzn();

  inst.arrival_probability = 1.5;
  CHECK(any_contains(validate_instance(inst).errors,
                     "arrival probability outside (0,1]"));

  inst.arrival_probability = 0.0;
  CHECK(any_contains(validate_instance(inst).errors,
                     "arrival probability outside (0,1]"));

  inst.arrival_probability = 1.0;
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("ids must be dense and one-based") {
  auto inst = testutil::ukzn();
  inst.lots[2].id = 7;
  auto report = validate_instance(inst);
  CHECK(any_contains(report.errors, "lot ids must be dense"));

  auto inst2 = testutil::ukzn();
  inst2.buildings[0].id = 0;
  CHECK(any_contains(validate_instance(inst2).errors,
                     "building ids must be dense"));

  auto inst3 = testutil::ukzn();
  inst3.permit_types[1].id = 3;
  CHECK(any_contains(validate_instance(inst3).errors,
                     "permit type ids must be dense"));
}

TEST_CASE("undersubscribed demand draws a warning, not an error") {
  auto inst = testutil::make_instance({{"A", false}}, {{3}}, {{10}}, {{5}});
  auto report = validate_instance(inst);
  CHECK(report.ok());
  CHECK(any_contains(report.warnings, "does not exceed total capacity"));
}

TEST_CASE("an instance with no permit types is rejected") {
  ProblemInstance inst;
  auto report = validate_instance(inst);
  CHECK(any_contains(report.errors, "no permit types"));
}

TEST_CASE("validation is pure") {
  auto inst = testutil::ukzn();
  inst.buildings[0].demand[0] = 42;
  auto a = validate_instance(inst);
  auto b = validate_instance(inst);
  CHECK(a.errors == b.errors);
  CHECK(a.warnings == b.warnings);
}

TEST_CASE("fully reserved lots are the ones without open capacity") {
  auto inst = testutil::ukzn();
  CHECK_FALSE(inst.lot_fully_reserved(0));
  CHECK(inst.lot_fully_reserved(1));
  CHECK_FALSE(inst.lot_fully_reserved(2));
  CHECK_FALSE(inst.lot_fully_reserved(3));
  CHECK(inst.lot_fully_reserved(4));
  CHECK_FALSE(inst.lot_fully_reserved(5));
}

TEST_CASE("plan indexing and objective recomputation") {
  auto inst = testutil::make_instance({{"A", false}}, {{2}, {3}},
                                      {{5}, {0}}, {{4, 9}, {1, 2}});
  AllocationPlan plan;
  plan.types = 1;
  plan.buildings = 2;
  plan.lots = 2;
  plan.assignments.assign(4, 0);
  plan.at(0, 0, 0) = 2;
  plan.at(0, 1, 0) = 3;
  CHECK(plan.at(0, 1, 0) == 3);
  CHECK(recompute_objective(inst, plan) == 2 * 4 + 3 * 1);
}
