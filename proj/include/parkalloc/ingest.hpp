#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "parkalloc/core.hpp"
#include "parkalloc/permits.hpp"
#include "parkalloc/simulate.hpp"

// Text I/O for instances and result artifacts. Instances travel in a
// sectioned plain-text format ([params] / [lots] / [demand] / [distance],
// in that order; `#` comments and blank lines ignored); plans, permit
// issuances, and simulation reports serialize to stable-key JSON plus
// human-oriented table and CSV renderings.

namespace parkalloc {

enum class OutputFormat { Table, Json, Csv };

// Parses the sectioned instance format. Structural problems raise
// ParseError with a 1-based line number; semantic problems (from
// validate_instance) raise ValidationError listing every finding.
ProblemInstance parse_instance(std::istream& in);
ProblemInstance parse_instance(const std::string& text);

// Structural parse only: grammar is enforced, semantics are not. Callers
// that want findings as data instead of an exception pair this with
// validate_instance.
ProblemInstance parse_instance_unchecked(std::istream& in);

// Reads and parses `path`; file-system failures raise ParseError.
ProblemInstance load_instance(const std::filesystem::path& path);

// Canonical text rendering; parse_instance(write_instance(x)) == x.
std::string write_instance(const ProblemInstance& instance);

// Table: assignments grouped by lot with per-type subtotals and the
// objective (the instance, when given, supplies labels and reserved
// flags). Json: stable-key document {objective, reserved_mode,
// assignments:[{permit_type, building, lot, count}...]} sorted
// lexicographically, integers only. Csv: header + one row per nonzero
// assignment in the same order.
std::string write_plan(const AllocationPlan& plan, OutputFormat format,
                       const ProblemInstance* instance = nullptr);

// Inverse of write_plan(..., Json, ...): bit-exact round-trip.
AllocationPlan parse_plan(const std::string& json_text);

std::string write_permits(const PermitIssuance& permits, OutputFormat format,
                          const ProblemInstance* instance = nullptr);
PermitIssuance parse_permits(const std::string& json_text);

std::string write_overflow(const OverflowReport& report, OutputFormat format,
                           const ProblemInstance* instance = nullptr);

std::string write_validation(const ValidationReport& report,
                             OutputFormat format);

}  // namespace parkalloc
