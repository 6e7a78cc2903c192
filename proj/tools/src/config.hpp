#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "nrt/pipeline.hpp"
#include "nrt/tradeoff.hpp"

namespace nrt::cli {

enum class OutputFormat { kCsv, kJson };

struct SweepSpec {
  bool present = false;
  SweepVariable variable = SweepVariable::kDeltaP;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 2001;
  bool log_spacing = false;  // geometric grid, for wide temperature ranges
  std::vector<LinkedVariable> links;

  SweepPlan plan() const;
};

struct CriteriaSpec {
  double ir_min_db = 20.0;
  double il_max_db = 1.0;
};

struct ValidateSpec {
  double ratio = 20.0;
  double half_window = 200e6;  // Hz around -Delta_a
  std::size_t points = 8001;
  double max_deviation = 0.05;  // pass/fail flag on the relative deviation
};

struct OptimizeSpec {
  std::vector<SearchDimension> dims;
  std::size_t grid_points = 9;
  std::size_t max_cycles = 40;
};

struct OutputSpec {
  std::string path;  // empty: stdout
  OutputFormat format = OutputFormat::kCsv;
  std::string plot;  // optional SVG path
};

struct RunConfig {
  std::string species_source = "rb87";
  Scenario scenario;
  SweepSpec sweep;
  CriteriaSpec criteria;
  ValidateSpec validate;
  OptimizeSpec optimize;
  OutputSpec output;
};

using Tree = boost::property_tree::ptree;

// Reads INI text into a tree. Inline comments are not supported; use ';' or
// '#' at the start of a line.
Tree read_tree(std::istream& in, const std::string& origin);
Tree read_tree(const std::filesystem::path& path);

// Later keys win. Sections are merged key by key.
void merge_tree(Tree& into, const Tree& from);

// "section.key=value", as given to --set.
void apply_override(Tree& tree, const std::string& assignment);

// Interprets the tree. Unknown sections or keys, unitless physical values
// and inconsistent settings raise ConfigError naming the field.
RunConfig interpret(const Tree& tree, const std::filesystem::path& base_dir = {});

// Only the [criteria] section; used where no scenario is needed.
CriteriaSpec interpret_criteria(const Tree& tree);

// Parses "[scale *] source [+|- offset unit]" for the given target.
LinkedVariable parse_link(SweepVariable target, const std::string& expr);

// Resolved configuration in a fixed textual form, independent of how the
// input was written. Output paths and thread counts are not part of it.
std::string canonical_form(const RunConfig& cfg);

// Hex SHA-256 of canonical_form.
std::string config_hash(const RunConfig& cfg);

// Locates <name>.ini in the preset directory (NRT_PRESET_DIR in the
// environment overrides the built-in location).
std::filesystem::path preset_dir();
std::filesystem::path preset_path(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace nrt::cli
