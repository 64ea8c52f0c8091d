#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "parkalloc/allocate.hpp"
#include "parkalloc/core.hpp"
#include "parkalloc/ingest.hpp"
#include "parkalloc/oracle.hpp"
#include "parkalloc/permits.hpp"
#include "parkalloc/simulate.hpp"

// Command-line driver. stdout carries exactly the requested artifact;
// everything else goes to stderr. Exit statuses: 0 success, 1 validation
// or plan-check failure, 2 infeasibility, 3 I/O or parse failure.

namespace {

using parkalloc::OutputFormat;

struct RunConfig {
  std::string subcommand;
  std::string instance_path;
  std::optional<double> p_override;
  bool reserved_mode = true;
  std::string permits_path;  // empty = compute from the instance
  OutputFormat format = OutputFormat::Table;
  std::string output_path;  // empty = stdout
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  std::int64_t budget = 10'000'000;
};

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInfeasible = 2;
constexpr int kIoError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parkalloc::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

parkalloc::ProblemInstance load(const RunConfig& cfg) {
  std::ifstream in(cfg.instance_path);
  if (!in) {
    throw parkalloc::ParseError("cannot open instance file: " +
                                cfg.instance_path);
  }
  parkalloc::ProblemInstance instance =
      parkalloc::parse_instance_unchecked(in);
  if (cfg.p_override) instance.arrival_probability = *cfg.p_override;
  auto report = parkalloc::validate_instance(instance);
  if (!report.ok()) {
    std::string joined;
    for (const auto& e : report.errors) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    throw parkalloc::ValidationError("invalid instance: " + joined,
                                     report.errors);
  }
  return instance;
}

parkalloc::PermitIssuance obtain_permits(
    const RunConfig& cfg, const parkalloc::ProblemInstance& instance) {
  if (cfg.permits_path.empty()) return parkalloc::compute_permits(instance);
  return parkalloc::parse_permits(read_file(cfg.permits_path));
}

void emit(const RunConfig& cfg, const std::string& artifact) {
  if (cfg.output_path.empty()) {
    std::cout << artifact;
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) {
    throw parkalloc::ParseError("cannot open output file: " + cfg.output_path);
  }
  out << artifact;
}

int run_validate(const RunConfig& cfg) {
  std::ifstream in(cfg.instance_path);
  if (!in) {
    throw parkalloc::ParseError("cannot open instance file: " +
                                cfg.instance_path);
  }
  parkalloc::ProblemInstance instance =
      parkalloc::parse_instance_unchecked(in);
  if (cfg.p_override) instance.arrival_probability = *cfg.p_override;
  auto report = parkalloc::validate_instance(instance);
  emit(cfg, parkalloc::write_validation(report, cfg.format));
  return report.ok() ? kOk : kInvalid;
}

int run_permits(const RunConfig& cfg) {
  auto instance = load(cfg);
  auto permits = parkalloc::compute_permits(instance);
  emit(cfg, parkalloc::write_permits(permits, cfg.format, &instance));
  return kOk;
}

int render_checked_plan(const RunConfig& cfg,
                        const parkalloc::ProblemInstance& instance,
                        const parkalloc::PermitIssuance& permits,
                        const parkalloc::AllocationPlan& plan,
                        const std::vector<std::string>& certificate) {
  auto checked = parkalloc::check_plan(instance, permits.per_lot, plan,
                                       cfg.reserved_mode);
  if (!checked.ok()) {
    std::cerr << "plan failed verification:\n";
    for (const auto& v : checked.violations) std::cerr << "  " << v << "\n";
    return kInvalid;
  }
  if (!certificate.empty()) {
    std::cerr << "optimality certificate failed:\n";
    for (const auto& v : certificate) std::cerr << "  " << v << "\n";
    return kInvalid;
  }
  emit(cfg, parkalloc::write_plan(plan, cfg.format, &instance));
  return kOk;
}

int run_solve(const RunConfig& cfg) {
  auto instance = load(cfg);
  auto permits = obtain_permits(cfg, instance);
  auto network =
      parkalloc::build_network(instance, permits.per_lot, cfg.reserved_mode);
  auto outcome = parkalloc::solve_min_cost_flow(network);
  return render_checked_plan(cfg, instance, permits, outcome.plan,
                             outcome.certificate);
}

int run_simulate(const RunConfig& cfg) {
  auto instance = load(cfg);
  auto permits = obtain_permits(cfg, instance);
  auto report = parkalloc::simulate_arrivals(instance, permits.per_lot,
                                             cfg.trials, cfg.seed);
  emit(cfg, parkalloc::write_overflow(report, cfg.format, &instance));
  return kOk;
}

int run_oracle(const RunConfig& cfg) {
  auto instance = load(cfg);
  auto permits = obtain_permits(cfg, instance);
  parkalloc::EnumerationBudget budget{cfg.budget};
  auto result = parkalloc::brute_force_optimum(instance, permits.per_lot,
                                               cfg.reserved_mode, budget);
  std::cerr << "enumeration visited " << result.states_visited
            << " state(s)\n";
  return render_checked_plan(cfg, instance, permits, result.plan, {});
}

int dispatch(const RunConfig& cfg) {
  try {
    if (cfg.subcommand == "validate") return run_validate(cfg);
    if (cfg.subcommand == "permits") return run_permits(cfg);
    if (cfg.subcommand == "solve") return run_solve(cfg);
    if (cfg.subcommand == "simulate") return run_simulate(cfg);
    if (cfg.subcommand == "oracle") return run_oracle(cfg);
    std::cerr << "unknown subcommand\n";
    return kIoError;
  } catch (const parkalloc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const parkalloc::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::PermitMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::AllLotsReservedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::NoRealRootError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::DegenerateQuadraticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const parkalloc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for reserved-policy campus parking allocation"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<std::string, OutputFormat> format_names{
      {"table", OutputFormat::Table},
      {"json", OutputFormat::Json},
      {"csv", OutputFormat::Csv}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance_path, "instance file")
        ->required();
    sub->add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_str("table");
    sub->add_option("--output", cfg.output_path,
                    "write the artifact to a file instead of stdout");
    sub->add_option("--p", cfg.p_override,
                    "override the instance's arrival probability");
  };

  auto* validate = app.add_subcommand(
      "validate", "check an instance and print the findings");
  add_common(validate);

  auto* permits = app.add_subcommand(
      "permits", "compute per-lot permit issuance and its service level");
  add_common(permits);

  auto* solve = app.add_subcommand(
      "solve", "allocate users to lots at minimum total walking cost");
  add_common(solve);
  solve->add_flag("--no-reserved{false}", cfg.reserved_mode,
                  "drop the dedicated-space minimums");
  solve->add_option("--permits-file", cfg.permits_path,
                    "use a precomputed permits JSON instead of computing");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo arrival and overflow statistics");
  add_common(simulate);
  simulate->add_option("--trials", cfg.trials, "number of simulated days")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "random seed");
  simulate->add_option("--permits-file", cfg.permits_path,
                       "use a precomputed permits JSON instead of computing");

  auto* oracle = app.add_subcommand(
      "oracle", "exhaustive reference solver for tiny instances");
  oracle->group("");  // hidden: fixture generation only
  add_common(oracle);
  oracle->add_flag("--no-reserved{false}", cfg.reserved_mode,
                   "drop the dedicated-space minimums");
  oracle->add_option("--permits-file", cfg.permits_path,
                     "use a precomputed permits JSON instead of computing");
  oracle->add_option("--budget", cfg.budget, "enumeration state budget")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kIoError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  return dispatch(cfg);
}
