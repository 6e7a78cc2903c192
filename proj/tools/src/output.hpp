#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nrt/pipeline.hpp"
#include "nrt/tradeoff.hpp"

namespace nrt::cli {

// Display unit of a swept variable in files: symbol, CSV column suffix and
// the factor taking SI to that unit.
struct AxisUnit {
  const char* symbol;
  const char* suffix;
  double per_si;
};
AxisUnit axis_unit(SweepVariable v);

// First CSV column name, e.g. delta_p_mhz or theta_deg.
std::string axis_column(SweepVariable v);

// One data row with fixed %.12e formatting.
std::string format_row(const SpectrumRecord& r, SweepVariable axis);

// The '#' header lines carry the config hash and quadrature settings but no
// timestamp, so equal inputs give byte-identical files.
void write_csv(std::ostream& out, const Spectrum& s, SweepVariable axis);
void write_json(std::ostream& out, const Spectrum& s, SweepVariable axis);

struct CsvSpectrum {
  SweepVariable axis = SweepVariable::kDeltaP;
  Spectrum spectrum;
};

// Reads a file produced by write_csv. Throws ConfigError on malformed input.
CsvSpectrum read_csv(std::istream& in, const std::string& origin);

void write_validation_csv(std::ostream& out, const EliminationReport& report,
                          const std::string& hash);
std::string validation_json(const EliminationReport& report, double threshold,
                            const std::string& hash);

std::string bandwidth_json(const BandwidthResult& b, SweepVariable axis, double ir_min,
                           double il_max, const std::string& hash);

std::string tradeoff_json(const TradeoffProblem& p, const TradeoffResult& r,
                          const std::string& hash);

// ISO-8601 UTC, for JSON metadata only.
std::string utc_timestamp();

}  // namespace nrt::cli
