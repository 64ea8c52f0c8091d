#include "parkalloc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace parkalloc {

namespace {

using ojson = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::int64_t parse_int(const std::string& field, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("invalid integer '" + field + "'", line);
  }
  return value;
}

double parse_real(const std::string& field, int line) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("invalid number '" + field + "'", line);
  }
  return value;
}

std::string real_to_text(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

std::string lot_name(const ProblemInstance* instance, int k) {
  if (instance && k < instance->lot_count()) return instance->lots[k].label;
  return "lot " + std::to_string(k + 1);
}

std::string building_name(const ProblemInstance* instance, int j) {
  if (instance && j < instance->building_count()) {
    return instance->buildings[j].label;
  }
  return "building " + std::to_string(j + 1);
}

std::string type_name(const ProblemInstance* instance, int i) {
  if (instance && i < instance->type_count()) {
    return instance->permit_types[i].label;
  }
  return "type " + std::to_string(i + 1);
}

}  // namespace

ProblemInstance parse_instance_unchecked(std::istream& in) {
  ProblemInstance instance;
  enum class Section { None, Params, Lots, Demand, Distance };
  Section section = Section::None;
  bool seen_params = false, seen_lots = false, seen_demand = false,
       seen_distance = false;
  bool have_types = false;
  int distance_rows = 0;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line == "[params]") {
        if (seen_params) throw ParseError("duplicate section [params]", line_no);
        if (section != Section::None) {
          throw ParseError("section [params] out of order", line_no);
        }
        seen_params = true;
        section = Section::Params;
      } else if (line == "[lots]") {
        if (seen_lots) throw ParseError("duplicate section [lots]", line_no);
        if (section != Section::Params) {
          throw ParseError("section [lots] out of order", line_no);
        }
        seen_lots = true;
        section = Section::Lots;
      } else if (line == "[demand]") {
        if (seen_demand) throw ParseError("duplicate section [demand]", line_no);
        if (section != Section::Lots) {
          throw ParseError("section [demand] out of order", line_no);
        }
        seen_demand = true;
        section = Section::Demand;
      } else if (line == "[distance]") {
        if (seen_distance) {
          throw ParseError("duplicate section [distance]", line_no);
        }
        if (section != Section::Demand) {
          throw ParseError("section [distance] out of order", line_no);
        }
        seen_distance = true;
        section = Section::Distance;
        instance.distances.building_count = instance.building_count();
        instance.distances.lot_count = instance.lot_count();
        instance.distances.cost.assign(
            static_cast<std::size_t>(instance.building_count()) *
                instance.lot_count(),
            0);
      } else {
        throw ParseError("unknown section " + line, line_no);
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError("content before any section", line_no);
      case Section::Params: {
        auto eq = line.find('=');
        if (eq == std::string::npos) {
          throw ParseError("expected key = value", line_no);
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "p") {
          instance.arrival_probability = parse_real(value, line_no);
        } else if (key == "types") {
          if (have_types) {
            throw ParseError("duplicate types declaration", line_no);
          }
          have_types = true;
          for (const auto& field : split_fields(value)) {
            PermitType t;
            t.id = static_cast<int>(instance.permit_types.size()) + 1;
            std::string label = field;
            if (!label.empty() && label.front() == '*') {
              t.reserved = true;
              label = trim(std::string_view(label).substr(1));
            }
            if (label.empty()) {
              throw ParseError("empty permit type label", line_no);
            }
            t.label = label;
            instance.permit_types.push_back(std::move(t));
          }
        } else {
          throw ParseError("unknown parameter '" + key + "'", line_no);
        }
        break;
      }
      case Section::Lots: {
        if (!have_types) {
          throw ParseError("missing types declaration in [params]", line_no);
        }
        auto fields = split_fields(line);
        const int l = instance.type_count();
        if (static_cast<int>(fields.size()) != 2 + l) {
          throw ParseError("lot row has " +
                               std::to_string(static_cast<int>(fields.size()) - 2) +
                               " capacity entries for " + std::to_string(l) +
                               " permit types",
                           line_no);
        }
        ParkingLot lot;
        lot.id = static_cast<int>(parse_int(fields[0], line_no));
        lot.label = fields[1];
        for (int i = 0; i < l; ++i) {
          lot.capacity.push_back(parse_int(fields[2 + i], line_no));
        }
        instance.lots.push_back(std::move(lot));
        break;
      }
      case Section::Demand: {
        auto fields = split_fields(line);
        const int l = instance.type_count();
        if (static_cast<int>(fields.size()) != 2 + l) {
          throw ParseError("demand row has " +
                               std::to_string(static_cast<int>(fields.size()) - 2) +
                               " demand entries for " + std::to_string(l) +
                               " permit types",
                           line_no);
        }
        Building b;
        b.id = static_cast<int>(parse_int(fields[0], line_no));
        b.label = fields[1];
        for (int i = 0; i < l; ++i) {
          b.demand.push_back(parse_int(fields[2 + i], line_no));
        }
        instance.buildings.push_back(std::move(b));
        break;
      }
      case Section::Distance: {
        auto fields = split_fields(line);
        const int n = instance.lot_count();
        if (static_cast<int>(fields.size()) != 1 + n) {
          std::string row_id = fields.empty() ? "?" : fields[0];
          throw ParseError("distance row for building " + row_id + " has " +
                               std::to_string(static_cast<int>(fields.size()) - 1) +
                               " entries for " + std::to_string(n) + " lots",
                           line_no);
        }
        int expected = distance_rows + 1;
        std::int64_t row_id = parse_int(fields[0], line_no);
        if (row_id != expected) {
          throw ParseError("distance row " + std::to_string(expected) +
                               " expected building id " +
                               std::to_string(expected) + ", found " +
                               std::to_string(row_id),
                           line_no);
        }
        if (distance_rows >= instance.building_count()) {
          throw ParseError("more distance rows than buildings", line_no);
        }
        for (int k = 0; k < n; ++k) {
          instance.distances.at(distance_rows, k) =
              parse_int(fields[1 + k], line_no);
        }
        ++distance_rows;
        break;
      }
    }
  }

  if (!seen_params || !seen_lots || !seen_demand || !seen_distance) {
    throw ParseError(
        "missing section: instance needs [params], [lots], [demand], "
        "[distance]");
  }
  if (distance_rows != instance.building_count()) {
    throw ParseError("distance matrix has " + std::to_string(distance_rows) +
                     " rows for " + std::to_string(instance.building_count()) +
                     " buildings");
  }

  return instance;
}

ProblemInstance parse_instance(std::istream& in) {
  ProblemInstance instance = parse_instance_unchecked(in);
  ValidationReport report = validate_instance(instance);
  if (!report.ok()) {
    std::string joined;
    for (const auto& e : report.errors) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    throw ValidationError("invalid instance: " + joined, report.errors);
  }
  return instance;
}

ProblemInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open instance file: " + path.string());
  }
  return parse_instance(in);
}

std::string write_instance(const ProblemInstance& instance) {
  std::ostringstream out;
  out << "[params]\n";
  out << "p = " << real_to_text(instance.arrival_probability) << "\n";
  out << "types = ";
  for (int i = 0; i < instance.type_count(); ++i) {
    if (i) out << ", ";
    if (instance.permit_types[i].reserved) out << "*";
    out << instance.permit_types[i].label;
  }
  out << "\n\n[lots]\n";
  for (const auto& lot : instance.lots) {
    out << lot.id << ", " << lot.label;
    for (auto c : lot.capacity) out << ", " << c;
    out << "\n";
  }
  out << "\n[demand]\n";
  for (const auto& b : instance.buildings) {
    out << b.id << ", " << b.label;
    for (auto d : b.demand) out << ", " << d;
    out << "\n";
  }
  out << "\n[distance]\n";
  for (int j = 0; j < instance.building_count(); ++j) {
    out << (j + 1);
    for (int k = 0; k < instance.lot_count(); ++k) {
      out << ", " << instance.distances.at(j, k);
    }
    out << "\n";
  }
  return out.str();
}

std::string write_plan(const AllocationPlan& plan, OutputFormat format,
                       const ProblemInstance* instance) {
  if (format == OutputFormat::Json) {
    ojson doc;
    doc["objective"] = plan.objective;
    doc["reserved_mode"] = plan.reserved_mode;
    doc["shape"] = {plan.types, plan.buildings, plan.lots};
    ojson records = ojson::array();
    for (int i = 0; i < plan.types; ++i) {
      for (int j = 0; j < plan.buildings; ++j) {
        for (int k = 0; k < plan.lots; ++k) {
          if (plan.at(i, j, k) == 0) continue;
          ojson rec;
          rec["permit_type"] = i + 1;
          rec["building"] = j + 1;
          rec["lot"] = k + 1;
          rec["count"] = plan.at(i, j, k);
          records.push_back(std::move(rec));
        }
      }
    }
    doc["assignments"] = std::move(records);
    return doc.dump(2) + "\n";
  }

  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "permit_type,building,lot,count\n";
    for (int i = 0; i < plan.types; ++i) {
      for (int j = 0; j < plan.buildings; ++j) {
        for (int k = 0; k < plan.lots; ++k) {
          if (plan.at(i, j, k) == 0) continue;
          out << (i + 1) << "," << (j + 1) << "," << (k + 1) << ","
              << plan.at(i, j, k) << "\n";
        }
      }
    }
    return out.str();
  }

  // Table: grouped by lot with per-type subtotals.
  std::ostringstream out;
  out << "Allocation plan (" << (plan.reserved_mode ? "reserved" : "open")
      << " policy)\n";
  for (int k = 0; k < plan.lots; ++k) {
    std::int64_t intake = 0;
    std::vector<std::int64_t> per_type(plan.types, 0);
    for (int i = 0; i < plan.types; ++i) {
      for (int j = 0; j < plan.buildings; ++j) {
        per_type[i] += plan.at(i, j, k);
        intake += plan.at(i, j, k);
      }
    }
    out << "\n" << lot_name(instance, k) << ": intake " << intake;
    for (int i = 0; i < plan.types; ++i) {
      out << (i == 0 ? "  (" : ", ") << type_name(instance, i) << " "
          << per_type[i];
    }
    if (plan.types > 0) out << ")";
    out << "\n";
    for (int i = 0; i < plan.types; ++i) {
      for (int j = 0; j < plan.buildings; ++j) {
        if (plan.at(i, j, k) == 0) continue;
        out << "  " << pad(type_name(instance, i), 12)
            << pad(building_name(instance, j), 14) << plan.at(i, j, k) << "\n";
      }
    }
  }
  out << "\nTotal walking cost Z = " << plan.objective << "\n";
  return out.str();
}

AllocationPlan parse_plan(const std::string& json_text) {
  ojson doc;
  try {
    doc = ojson::parse(json_text);
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what());
  }
  try {
    AllocationPlan plan;
    plan.objective = doc.at("objective").get<std::int64_t>();
    plan.reserved_mode = doc.at("reserved_mode").get<bool>();
    const auto& shape = doc.at("shape");
    plan.types = shape.at(0).get<int>();
    plan.buildings = shape.at(1).get<int>();
    plan.lots = shape.at(2).get<int>();
    if (plan.types < 0 || plan.buildings < 0 || plan.lots < 0) {
      throw ParseError("plan shape entries must be non-negative");
    }
    plan.assignments.assign(static_cast<std::size_t>(plan.types) *
                                plan.buildings * plan.lots,
                            0);
    for (const auto& rec : doc.at("assignments")) {
      int i = rec.at("permit_type").get<int>() - 1;
      int j = rec.at("building").get<int>() - 1;
      int k = rec.at("lot").get<int>() - 1;
      if (i < 0 || i >= plan.types || j < 0 || j >= plan.buildings || k < 0 ||
          k >= plan.lots) {
        throw ParseError("assignment record outside plan shape");
      }
      plan.at(i, j, k) = rec.at("count").get<std::int64_t>();
    }
    return plan;
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what());
  }
}

std::string write_permits(const PermitIssuance& permits, OutputFormat format,
                          const ProblemInstance* instance) {
  if (format == OutputFormat::Json) {
    ojson doc;
    doc["per_lot"] = permits.per_lot;
    ojson fr = ojson::array();
    for (int k : permits.fully_reserved_lots) fr.push_back(k + 1);
    doc["fully_reserved_lots"] = std::move(fr);
    if (permits.service) {
      const auto& s = *permits.service;
      ojson sv;
      sv["deviate"] = s.deviate;
      sv["a"] = s.a;
      sv["b"] = s.b;
      sv["c"] = s.c;
      sv["root_low"] = s.root_low;
      sv["root_high"] = s.root_high;
      sv["participating_lots"] = s.participating_lots;
      sv["effective_users"] = s.effective_users;
      doc["service"] = std::move(sv);
    } else {
      doc["service"] = nullptr;
    }
    return doc.dump(2) + "\n";
  }

  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "lot,issued_permits\n";
    for (std::size_t k = 0; k < permits.per_lot.size(); ++k) {
      out << (k + 1) << "," << permits.per_lot[k] << "\n";
    }
    return out.str();
  }

  std::ostringstream out;
  char buf[128];
  if (permits.service) {
    const auto& s = *permits.service;
    out << "Service-level quadratic over " << s.participating_lots
        << " participating lot(s), effective permit budget "
        << s.effective_users << "\n";
    std::snprintf(buf, sizeof(buf), "  %g x^2 %c %g x %c %g = 0\n", s.a,
                  s.b < 0 ? '-' : '+', std::fabs(s.b),
                  s.c < 0 ? '-' : '+', std::fabs(s.c));
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "  roots: %.6f and %.6f; chosen service deviate %.6f\n",
                  s.root_low, s.root_high, s.deviate);
    out << buf;
  } else {
    out << "Every lot is fully reserved; permits equal capacities and no "
           "service level applies.\n";
  }
  out << "\nIssued permits per lot:\n";
  std::int64_t total = 0;
  for (std::size_t k = 0; k < permits.per_lot.size(); ++k) {
    bool fully = std::find(permits.fully_reserved_lots.begin(),
                           permits.fully_reserved_lots.end(),
                           static_cast<int>(k)) !=
                 permits.fully_reserved_lots.end();
    out << "  " << pad(lot_name(instance, static_cast<int>(k)), 12)
        << permits.per_lot[k] << (fully ? "  (fully reserved)" : "") << "\n";
    total += permits.per_lot[k];
  }
  out << "  " << pad("total", 12) << total << "\n";
  return out.str();
}

PermitIssuance parse_permits(const std::string& json_text) {
  ojson doc;
  try {
    doc = ojson::parse(json_text);
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("invalid permits JSON: ") + e.what());
  }
  try {
    PermitIssuance permits;
    permits.per_lot = doc.at("per_lot").get<std::vector<std::int64_t>>();
    for (const auto& v : doc.at("fully_reserved_lots")) {
      permits.fully_reserved_lots.push_back(v.get<int>() - 1);
    }
    if (!doc.at("service").is_null()) {
      const auto& sv = doc.at("service");
      ServiceLevel s;
      s.deviate = sv.at("deviate").get<double>();
      s.a = sv.at("a").get<double>();
      s.b = sv.at("b").get<double>();
      s.c = sv.at("c").get<double>();
      s.root_low = sv.at("root_low").get<double>();
      s.root_high = sv.at("root_high").get<double>();
      s.participating_lots = sv.at("participating_lots").get<int>();
      s.effective_users = sv.at("effective_users").get<std::int64_t>();
      permits.service = s;
    }
    return permits;
  } catch (const ojson::exception& e) {
    throw ParseError(std::string("invalid permits JSON: ") + e.what());
  }
}

std::string write_overflow(const OverflowReport& report, OutputFormat format,
                           const ProblemInstance* instance) {
  if (format == OutputFormat::Json) {
    ojson doc;
    doc["days"] = report.days;
    doc["seed"] = report.seed;
    doc["arrival_probability"] = report.arrival_probability;
    ojson lots = ojson::array();
    for (const auto& lot : report.lots) {
      ojson rec;
      rec["lot"] = lot.lot + 1;
      rec["permits"] = lot.permits;
      rec["spaces"] = lot.spaces;
      rec["overflow_days"] = lot.overflow_days;
      rec["overflow_rate"] = lot.overflow_rate;
      rec["exact_overflow"] = lot.exact_overflow;
      rec["mean_arrivals"] = lot.mean_arrivals;
      rec["std_arrivals"] = lot.std_arrivals;
      rec["expected_mean"] = lot.expected_mean;
      rec["expected_std"] = lot.expected_std;
      lots.push_back(std::move(rec));
    }
    doc["lots"] = std::move(lots);
    return doc.dump(2) + "\n";
  }

  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "lot,permits,spaces,overflow_days,overflow_rate,exact_overflow,"
           "mean_arrivals,std_arrivals,expected_mean,expected_std\n";
    char buf[256];
    for (const auto& lot : report.lots) {
      std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,%lld,%.8g,%.8g,%.8g,%.8g,%.8g,%.8g\n",
                    lot.lot + 1, static_cast<long long>(lot.permits),
                    static_cast<long long>(lot.spaces),
                    static_cast<long long>(lot.overflow_days),
                    lot.overflow_rate, lot.exact_overflow, lot.mean_arrivals,
                    lot.std_arrivals, lot.expected_mean, lot.expected_std);
      out << buf;
    }
    return out.str();
  }

  std::ostringstream out;
  out << "Arrival simulation: " << report.days << " day(s), p = "
      << real_to_text(report.arrival_probability) << ", seed "
      << report.seed << "\n\n";
  out << "  " << pad("lot", 12) << pad("permits", 9) << pad("spaces", 8)
      << pad("overflow", 10) << pad("exact", 10) << pad("mean", 9)
      << pad("p*A", 9) << pad("std", 8) << "expected std\n";
  char buf[256];
  for (const auto& lot : report.lots) {
    std::snprintf(buf, sizeof(buf), "%.5f", lot.overflow_rate);
    std::string overflow = buf;
    std::snprintf(buf, sizeof(buf), "%.5f", lot.exact_overflow);
    std::string exact = buf;
    std::snprintf(buf, sizeof(buf), "%.1f", lot.mean_arrivals);
    std::string mean = buf;
    std::snprintf(buf, sizeof(buf), "%.1f", lot.expected_mean);
    std::string emean = buf;
    std::snprintf(buf, sizeof(buf), "%.2f", lot.std_arrivals);
    std::string sd = buf;
    std::snprintf(buf, sizeof(buf), "%.2f", lot.expected_std);
    std::string esd = buf;
    out << "  " << pad(lot_name(instance, lot.lot), 12)
        << pad(std::to_string(lot.permits), 9)
        << pad(std::to_string(lot.spaces), 8) << pad(overflow, 10)
        << pad(exact, 10) << pad(mean, 9) << pad(emean, 9) << pad(sd, 8)
        << esd << "\n";
  }
  return out.str();
}

std::string write_validation(const ValidationReport& report,
                             OutputFormat format) {
  if (format == OutputFormat::Json) {
    ojson doc;
    doc["ok"] = report.ok();
    doc["errors"] = report.errors;
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
  }
  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    out << "severity,message\n";
    for (const auto& e : report.errors) out << "error,\"" << e << "\"\n";
    for (const auto& w : report.warnings) out << "warning,\"" << w << "\"\n";
    return out.str();
  }
  std::ostringstream out;
  if (report.ok() && report.warnings.empty()) {
    out << "instance is valid\n";
    return out.str();
  }
  for (const auto& e : report.errors) out << "error: " << e << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace parkalloc
