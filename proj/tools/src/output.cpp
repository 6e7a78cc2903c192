#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include "json.hpp"

#include "nrt/errors.hpp"

namespace nrt::cli {

namespace {

using json = nlohmann::ordered_json;
using units::Dimension;

constexpr const char* kColumns =
    "alpha_fwd_per_cm,alpha_bwd_per_cm,t_fwd,t_bwd,ir_db,il_db";

std::string quadrature_line(const QuadratureSpec& q) {
  return fmt::format("{} span={:.6g} nodes={} rel_tol={:.3g} abs_tol={:.3g} validity_ratio={:.6g}",
                     q.scheme == QuadratureScheme::kTrapezoid ? "trapezoid" : "adaptive", q.span,
                     q.nodes, q.rel_tol, q.abs_tol, q.validity_ratio);
}

json quadrature_json(const QuadratureSpec& q) {
  return json{{"scheme", q.scheme == QuadratureScheme::kTrapezoid ? "trapezoid" : "adaptive"},
              {"span_vp", q.span},
              {"nodes", q.nodes},
              {"rel_tol", q.rel_tol},
              {"abs_tol", q.abs_tol},
              {"validity_ratio", q.validity_ratio}};
}

// NaN and infinities are not JSON numbers.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.emplace_back(units::trim(cell));
  return out;
}

}  // namespace

AxisUnit axis_unit(SweepVariable v) {
  switch (sweep_variable_dimension(v)) {
    case Dimension::kFrequency:
      return {"MHz", "mhz", 1e-6};
    case Dimension::kAngle:
      return {"deg", "deg", 1.0};
    case Dimension::kTemperature:
      return {"K", "k", 1.0};
    case Dimension::kNumberDensity:
      return {"cm^-3", "per_cm3", 1e-6};
    case Dimension::kLength:
      return {"cm", "cm", 1e2};
    default:
      return {"", "si", 1.0};
  }
}

std::string axis_column(SweepVariable v) {
  return std::string(sweep_variable_name(v)) + "_" + axis_unit(v).suffix;
}

std::string format_row(const SpectrumRecord& r, SweepVariable axis) {
  const double to_cm = 1e-2;
  return fmt::format("{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                     r.axis * axis_unit(axis).per_si, r.alpha_fwd * to_cm, r.alpha_bwd * to_cm,
                     r.t_fwd, r.t_bwd, r.ir_db, r.il_db);
}

void write_csv(std::ostream& out, const Spectrum& s, SweepVariable axis) {
  out << "# config_sha256: " << s.meta.config_hash << '\n';
  out << "# variable: " << sweep_variable_name(axis) << " (" << axis_unit(axis).symbol << ")\n";
  out << "# quadrature: " << quadrature_line(s.meta.quadrature) << '\n';
  out << fmt::format("# length_cm: {:.12e}\n", s.meta.length * 1e2);
  out << axis_column(axis) << ',' << kColumns << '\n';
  for (const auto& r : s.records) out << format_row(r, axis) << '\n';
}

void write_json(std::ostream& out, const Spectrum& s, SweepVariable axis) {
  json meta{{"config_sha256", s.meta.config_hash},
            {"axis", s.meta.axis_name},
            {"axis_unit", "SI"},
            {"length_m", s.meta.length},
            {"quadrature", quadrature_json(s.meta.quadrature)},
            {"max_excluded_weight", s.meta.max_excluded_weight},
            {"max_quadrature_error", s.meta.max_quadrature_error},
            {"timestamp", s.meta.timestamp}};
  json records = json::array();
  for (const auto& r : s.records) {
    records.push_back(json{{"axis", r.axis},
                           {"alpha_fwd_per_m", number(r.alpha_fwd)},
                           {"alpha_bwd_per_m", number(r.alpha_bwd)},
                           {"t_fwd", number(r.t_fwd)},
                           {"t_bwd", number(r.t_bwd)},
                           {"ir_db", number(r.ir_db)},
                           {"il_db", number(r.il_db)}});
  }
  (void)axis;
  out << json{{"metadata", meta}, {"records", records}}.dump(2) << '\n';
}

CsvSpectrum read_csv(std::istream& in, const std::string& origin) {
  CsvSpectrum out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  double per_si = 1.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (units::trim(line).empty()) continue;
    if (line.front() == '#') {
      const std::string tag = "# config_sha256: ";
      if (line.rfind(tag, 0) == 0) out.spectrum.meta.config_hash = line.substr(tag.size());
      continue;
    }
    const auto cells = split(line);
    if (!have_header) {
      if (cells.size() != 7 || fmt::format("{}", fmt::join(cells.begin() + 1, cells.end(), ",")) != kColumns) {
        throw ConfigError(origin, "unexpected CSV header '" + line + "'");
      }
      std::optional<SweepVariable> var;
      for (int i = 0; i <= static_cast<int>(SweepVariable::kLaserLinewidth); ++i) {
        if (axis_column(static_cast<SweepVariable>(i)) == cells[0]) var = static_cast<SweepVariable>(i);
      }
      if (!var) {
        throw ConfigError(origin, "unknown axis column '" + cells[0] + "'");
      }
      out.axis = *var;
      out.spectrum.meta.axis_name = std::string(sweep_variable_name(*var));
      per_si = axis_unit(*var).per_si;
      have_header = true;
      continue;
    }
    if (cells.size() != 7) {
      throw ConfigError(origin, fmt::format("line {}: expected 7 columns, got {}", line_no, cells.size()));
    }
    double v[7];
    for (int i = 0; i < 7; ++i) {
      // strtod, unlike stod, accepts subnormal transmissivities.
      char* end = nullptr;
      v[i] = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || end != cells[i].c_str() + cells[i].size()) {
        throw ConfigError(origin, fmt::format("line {}: bad number '{}'", line_no, cells[i]));
      }
    }
    SpectrumRecord r;
    r.axis = v[0] / per_si;
    r.alpha_fwd = v[1] * 1e2;
    r.alpha_bwd = v[2] * 1e2;
    r.t_fwd = v[3];
    r.t_bwd = v[4];
    r.ir_db = v[5];
    r.il_db = v[6];
    out.spectrum.records.push_back(r);
  }
  if (!have_header) throw ConfigError(origin, "no CSV header found");
  if (out.spectrum.records.empty()) throw ConfigError(origin, "no data rows");
  try {
    out.spectrum.check_sorted();
  } catch (const DomainError& e) {
    throw ConfigError(origin, e.what());
  }
  return out;
}

void write_validation_csv(std::ostream& out, const EliminationReport& report,
                          const std::string& hash) {
  out << "# config_sha256: " << hash << '\n';
  out << fmt::format("# ratio: {:.12e}\n", report.ratio);
  out << fmt::format("# delta_c2_mhz: {:.12e}\n", report.drive.delta_c2 * 1e-6);
  out << "delta_p_mhz,alpha_reduced_per_cm,alpha_closed_per_cm,alpha_full_per_cm\n";
  for (const auto& s : report.samples) {
    out << fmt::format("{:.12e},{:.12e},{:.12e},{:.12e}\n", s.delta_p * 1e-6, s.alpha_reduced * 1e-2,
                       s.alpha_closed * 1e-2, s.alpha_full * 1e-2);
  }
}

std::string validation_json(const EliminationReport& report, double threshold,
                            const std::string& hash) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    samples.push_back(json{{"delta_p_hz", s.delta_p},
                           {"alpha_reduced_per_m", number(s.alpha_reduced)},
                           {"alpha_closed_per_m", number(s.alpha_closed)},
                           {"alpha_full_per_m", number(s.alpha_full)},
                           {"singular", s.singular}});
  }
  json j{{"config_sha256", hash},
         {"ratio", report.ratio},
         {"delta_a_hz", report.drive.delta_a},
         {"delta_c1_hz", report.drive.delta_c1},
         {"delta_c2_hz", report.drive.delta_c2},
         {"max_deviation", number(report.max_deviation)},
         {"max_deviation_closed", number(report.max_deviation_closed)},
         {"threshold", threshold},
         {"pass", report.max_deviation <= threshold},
         {"singular_samples", report.singular_samples},
         {"timestamp", utc_timestamp()},
         {"samples", samples}};
  return j.dump(2);
}

std::string bandwidth_json(const BandwidthResult& b, SweepVariable axis, double ir_min,
                           double il_max, const std::string& hash) {
  const AxisUnit u = axis_unit(axis);
  json intervals = json::array();
  for (const auto& iv : b.intervals) {
    intervals.push_back(json{{"lo", iv.lo * u.per_si}, {"hi", iv.hi * u.per_si}});
  }
  json j{{"config_sha256", hash},
         {"axis", sweep_variable_name(axis)},
         {"unit", u.symbol},
         {"ir_min_db", ir_min},
         {"il_max_db", il_max},
         {"intervals", intervals},
         {"total_width", b.total_width * u.per_si}};
  return j.dump(2);
}

std::string tradeoff_json(const TradeoffProblem& p, const TradeoffResult& r,
                          const std::string& hash) {
  auto point = [&](const TradeoffPoint& pt) {
    json x = json::object();
    for (std::size_t i = 0; i < p.dims.size() && i < pt.x.size(); ++i) {
      const AxisUnit u = axis_unit(p.dims[i].variable);
      x[std::string(sweep_variable_name(p.dims[i].variable)) + "_" + u.suffix] = pt.x[i] * u.per_si;
    }
    return json{{"x", x}, {"ir_db", number(pt.ir_db)}, {"il_db", number(pt.il_db)}};
  };
  json j{{"config_sha256", hash},
         {"il_max_db", p.il_max_db},
         {"feasible", r.feasible},
         {"best", r.feasible ? point(r.best) : json(nullptr)},
         {"best_il", point(r.best_il)},
         {"evaluations", r.evaluations},
         {"failed_evaluations", r.failed_evaluations},
         {"timestamp", utc_timestamp()}};
  return j.dump(2);
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
}

}  // namespace nrt::cli
