#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "nrt/errors.hpp"
#include "nrt/units.hpp"

#ifndef NRT_PRESET_DIR
#define NRT_PRESET_DIR "presets"
#endif

namespace nrt::cli {

namespace {

using units::Dimension;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Wraps unit parsing so that errors carry the section.key they came from.
class Section {
 public:
  Section(const Tree* node, std::string name) : node_(node), name_(std::move(name)) {}

  bool present() const { return node_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    seen_.insert(key);
    if (!node_) return std::nullopt;
    auto it = node_->find(key);
    if (it == node_->not_found()) return std::nullopt;
    return it->second.data();
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  double quantity(const std::string& key, Dimension dim) {
    auto r = raw(key);
    if (!r) throw ConfigError(field(key), "required field missing");
    return parse(key, *r, dim);
  }

  double quantity_or(const std::string& key, Dimension dim, double fallback) {
    auto r = raw(key);
    return r ? parse(key, *r, dim) : fallback;
  }

  double number_or(const std::string& key, double fallback) {
    auto r = raw(key);
    if (!r) return fallback;
    try {
      return units::parse_number(*r);
    } catch (const ConfigError& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  std::size_t count_or(const std::string& key, std::size_t fallback) {
    auto r = raw(key);
    if (!r) return fallback;
    const double v = number_or(key, 0.0);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
      throw ConfigError(field(key), "expected a positive integer, got '" + *r + "'");
    }
    return static_cast<std::size_t>(v);
  }

  double parse(const std::string& key, const std::string& text, Dimension dim) const {
    try {
      return units::parse_quantity(text, dim);
    } catch (const ConfigError& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  // Every key must have been asked for by now, except those accepted by
  // the predicate (prefixed families such as link.*).
  template <class Pred>
  void reject_unknown(Pred&& extra) const {
    if (!node_) return;
    for (const auto& [key, child] : *node_) {
      if (!seen_.contains(key) && !extra(key)) throw ConfigError(field(key), "unknown key");
    }
  }
  void reject_unknown() const {
    reject_unknown([](const std::string&) { return false; });
  }

 private:
  const Tree* node_;
  std::string name_;
  std::set<std::string> seen_;
};

Section section(const Tree& tree, const std::string& name) {
  auto it = tree.find(name);
  return Section(it == tree.not_found() ? nullptr : &it->second, name);
}

SweepVariable variable_or_throw(const std::string& field, const std::string& name) {
  auto v = parse_sweep_variable(lower(std::string(units::trim(name))));
  if (!v) throw ConfigError(field, "unknown variable '" + name + "'");
  return *v;
}

const std::set<std::string> kSections = {"species", "drive",    "ensemble", "geometry",
                                         "quadrature", "sweep", "criteria", "validate",
                                         "optimize", "output"};

std::string hex(const unsigned char* data, unsigned n) {
  std::string out;
  out.reserve(2 * n);
  for (unsigned i = 0; i < n; ++i) out += fmt::format("{:02x}", data[i]);
  return out;
}

}  // namespace

SweepPlan SweepSpec::plan() const {
  SweepPlan p;
  p.variable = variable;
  if (log_spacing) {
    if (!(start > 0.0 && stop > 0.0)) throw ConfigError("sweep.spacing", "log spacing needs positive bounds");
    p.values = linspace(std::log(start), std::log(stop), points);
    for (double& v : p.values) v = std::exp(v);
    p.values.front() = start;
    p.values.back() = stop;
  } else {
    p.values = linspace(start, stop, points);
  }
  p.links = links;
  p.validate();
  return p;
}

Tree read_tree(std::istream& in, const std::string& origin) {
  Tree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(origin, e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return tree;
}

Tree read_tree(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  return read_tree(in, path.string());
}

void merge_tree(Tree& into, const Tree& from) {
  for (const auto& [name, sec] : from) {
    auto it = into.find(name);
    if (it == into.not_found()) {
      into.push_back({name, sec});
      continue;
    }
    for (const auto& [key, value] : sec) {
      auto kit = it->second.find(key);
      if (kit == it->second.not_found()) {
        it->second.push_back({key, value});
      } else {
        kit->second.data() = value.data();
      }
    }
  }
}

void apply_override(Tree& tree, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("--set", "expected section.key=value, got '" + assignment + "'");
  }
  const std::string name{units::trim(assignment.substr(0, dot))};
  const std::string key{units::trim(assignment.substr(dot + 1, eq - dot - 1))};
  const std::string value{units::trim(assignment.substr(eq + 1))};
  if (name.empty() || key.empty()) {
    throw ConfigError("--set", "expected section.key=value, got '" + assignment + "'");
  }
  Tree patch;
  Tree sec;
  sec.push_back({key, Tree(value)});
  patch.push_back({name, sec});
  merge_tree(tree, patch);
}

LinkedVariable parse_link(SweepVariable target, const std::string& expr) {
  static const std::regex pattern(
      R"(^\s*(?:([+-]?\s*[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*\*\s*)?([+-])?\s*([a-z_0-9]+)\s*(?:([+-])\s*(.+?))?\s*$)");
  const std::string field = "sweep.link." + std::string(sweep_variable_name(target));
  std::smatch m;
  if (!std::regex_match(expr, m, pattern)) {
    throw ConfigError(field, "expected '[scale *] variable [+|- offset unit]', got '" + expr + "'");
  }
  LinkedVariable link;
  link.target = target;
  link.source = variable_or_throw(field, m[3].str());
  if (m[1].matched) {
    std::string s = m[1].str();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    link.scale = units::parse_number(s);
  }
  if (m[2].matched && m[2].str() == "-") link.scale = -link.scale;
  if (m[4].matched) {
    try {
      link.offset = units::parse_quantity(m[5].str(), sweep_variable_dimension(target));
    } catch (const ConfigError& e) {
      throw ConfigError(field, e.what());
    }
    if (m[4].str() == "-") link.offset = -link.offset;
  }
  return link;
}

CriteriaSpec interpret_criteria(const Tree& tree) {
  CriteriaSpec c;
  Section s = section(tree, "criteria");
  c.ir_min_db = s.quantity_or("ir_min", Dimension::kDecibel, c.ir_min_db);
  c.il_max_db = s.quantity_or("il_max", Dimension::kDecibel, c.il_max_db);
  if (!(c.il_max_db > 0.0)) throw ConfigError("criteria.il_max", "must be positive");
  s.reject_unknown();
  return c;
}

RunConfig interpret(const Tree& tree, const std::filesystem::path& base_dir) {
  for (const auto& [name, child] : tree) {
    if (!kSections.contains(name)) throw ConfigError(name, "unknown section");
  }
  RunConfig cfg;
  Scenario& sc = cfg.scenario;

  {
    Section s = section(tree, "species");
    auto name = s.raw("name");
    auto file = s.raw("file");
    if (name && file) throw ConfigError("species", "give either name or file, not both");
    if (file) {
      std::filesystem::path p(*file);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.species_source = p.string();
      sc.species = load_species(p);
    } else if (name) {
      if (lower(*name) != "rb87" && lower(*name) != "87rb") {
        throw ConfigError("species.name", "unknown built-in species '" + *name + "'");
      }
      cfg.species_source = "rb87";
      sc.species = AtomSpecies::rubidium87();
    }
    s.reject_unknown();
  }

  {
    Section s = section(tree, "drive");
    if (!s.present()) throw ConfigError("drive", "missing [drive] section");
    DriveConfig& d = sc.drive;
    d.omega_p = s.quantity("omega_p", Dimension::kFrequency);
    d.omega_a = s.quantity("omega_a", Dimension::kFrequency);
    auto both = s.raw("omega_c");
    auto c1 = s.raw("omega_c1");
    auto c2 = s.raw("omega_c2");
    if (both && (c1 || c2)) throw ConfigError("drive.omega_c", "conflicts with omega_c1/omega_c2");
    if (both) {
      d.omega_c1 = d.omega_c2 = s.parse("omega_c", *both, Dimension::kFrequency);
    } else {
      d.omega_c1 = s.quantity("omega_c1", Dimension::kFrequency);
      d.omega_c2 = s.quantity("omega_c2", Dimension::kFrequency);
    }
    d.delta_a = s.quantity("delta_a", Dimension::kFrequency);
    d.delta_c1 = s.quantity("delta_c1", Dimension::kFrequency);
    d.delta_c2 = s.quantity("delta_c2", Dimension::kFrequency);
    d.delta_p = s.quantity_or("delta_p", Dimension::kFrequency, -d.delta_a);
    d.laser_linewidth = s.quantity_or("laser_linewidth", Dimension::kFrequency, 0.0);
    d.ground_decoherence = s.quantity_or("ground_decoherence", Dimension::kFrequency, 0.0);
    s.reject_unknown();
  }

  {
    Section s = section(tree, "ensemble");
    if (!s.present()) throw ConfigError("ensemble", "missing [ensemble] section");
    sc.ensemble.temperature = s.quantity("temperature", Dimension::kTemperature);
    sc.ensemble.density = s.quantity("density", Dimension::kNumberDensity);
    sc.ensemble.length = s.quantity("length", Dimension::kLength);
    s.reject_unknown();
  }

  {
    Section s = section(tree, "geometry");
    sc.theta_deg = s.quantity_or("theta", Dimension::kAngle, 180.0);
    s.reject_unknown();
  }

  {
    Section s = section(tree, "quadrature");
    QuadratureSpec& q = sc.quadrature;
    if (auto scheme = s.raw("scheme")) {
      const std::string v = lower(std::string(units::trim(*scheme)));
      if (v == "trapezoid") {
        q.scheme = QuadratureScheme::kTrapezoid;
      } else if (v == "adaptive") {
        q.scheme = QuadratureScheme::kAdaptive;
      } else {
        throw ConfigError("quadrature.scheme", "expected trapezoid or adaptive, got '" + *scheme + "'");
      }
    }
    q.span = s.number_or("span", q.span);
    q.nodes = s.count_or("nodes", q.nodes);
    q.rel_tol = s.number_or("rel_tol", q.rel_tol);
    q.abs_tol = s.number_or("abs_tol", q.abs_tol);
    q.validity_ratio = s.number_or("validity_ratio", q.validity_ratio);
    s.reject_unknown();
  }

  {
    Section s = section(tree, "sweep");
    if (s.present()) {
      SweepSpec& w = cfg.sweep;
      w.present = true;
      auto var = s.raw("variable");
      if (!var) throw ConfigError("sweep.variable", "required field missing");
      w.variable = variable_or_throw("sweep.variable", *var);
      const Dimension dim = sweep_variable_dimension(w.variable);
      w.start = s.quantity("start", dim);
      w.stop = s.quantity("stop", dim);
      w.points = s.count_or("points", w.points);
      if (auto sp = s.raw("spacing")) {
        const std::string v = lower(std::string(units::trim(*sp)));
        if (v != "linear" && v != "log") throw ConfigError("sweep.spacing", "expected linear or log");
        w.log_spacing = v == "log";
      }
      const auto& node = tree.get_child("sweep");
      for (const auto& [key, child] : node) {
        if (key.rfind("link.", 0) != 0) continue;
        const SweepVariable target = variable_or_throw("sweep." + key, key.substr(5));
        w.links.push_back(parse_link(target, child.data()));
      }
      s.reject_unknown([](const std::string& k) { return k.rfind("link.", 0) == 0; });
    }
  }

  cfg.criteria = interpret_criteria(tree);

  {
    Section s = section(tree, "validate");
    ValidateSpec& v = cfg.validate;
    v.ratio = s.number_or("ratio", v.ratio);
    v.half_window = s.quantity_or("window", Dimension::kFrequency, v.half_window);
    v.points = s.count_or("points", v.points);
    v.max_deviation = s.number_or("max_deviation", v.max_deviation);
    if (!(v.ratio > 0.0)) throw ConfigError("validate.ratio", "must be positive");
    if (!(v.half_window > 0.0)) throw ConfigError("validate.window", "must be positive");
    if (v.points < 2) throw ConfigError("validate.points", "need at least 2 points");
    s.reject_unknown();
  }

  {
    Section s = section(tree, "optimize");
    OptimizeSpec& o = cfg.optimize;
    o.grid_points = s.count_or("grid_points", o.grid_points);
    o.max_cycles = s.count_or("max_cycles", o.max_cycles);
    if (s.present()) {
      const auto& node = tree.get_child("optimize");
      for (const auto& [key, child] : node) {
        if (key == "grid_points" || key == "max_cycles" || key.rfind("resolution.", 0) == 0) continue;
        const SweepVariable var = variable_or_throw("optimize." + key, key);
        const Dimension dim = sweep_variable_dimension(var);
        const std::string text = child.data();
        const auto comma = text.find(',');
        if (comma == std::string::npos) {
          throw ConfigError("optimize." + key, "expected 'lo unit, hi unit', got '" + text + "'");
        }
        SearchDimension d;
        d.variable = var;
        d.lo = s.parse(key, text.substr(0, comma), dim);
        d.hi = s.parse(key, text.substr(comma + 1), dim);
        const std::string res_key = "resolution." + key;
        if (auto r = s.raw(res_key)) d.resolution = s.parse(res_key, *r, dim);
        o.dims.push_back(d);
      }
      for (const auto& [key, child] : node) {
        if (key.rfind("resolution.", 0) != 0) continue;
        const auto var = parse_sweep_variable(key.substr(11));
        const bool used = var && std::any_of(o.dims.begin(), o.dims.end(),
                                             [&](const SearchDimension& d) { return d.variable == *var; });
        if (!used) throw ConfigError("optimize." + key, "no matching search bounds");
      }
    }
  }

  {
    Section s = section(tree, "output");
    if (auto p = s.raw("path")) cfg.output.path = *p;
    if (auto f = s.raw("format")) {
      const std::string v = lower(std::string(units::trim(*f)));
      if (v == "csv") {
        cfg.output.format = OutputFormat::kCsv;
      } else if (v == "json") {
        cfg.output.format = OutputFormat::kJson;
      } else {
        throw ConfigError("output.format", "expected csv or json, got '" + *f + "'");
      }
    }
    if (auto p = s.raw("plot")) cfg.output.plot = *p;
    s.reject_unknown();
  }

  try {
    sc.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return cfg;
}

std::string canonical_form(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  const AtomSpecies& sp = sc.species;
  const DriveConfig& d = sc.drive;
  const QuadratureSpec& q = sc.quadrature;
  std::string out;
  auto line = [&](std::string_view key, double v) { out += fmt::format("{} = {:.17g}\n", key, v); };
  out += "species.name = " + sp.name + "\n";
  line("species.mass", sp.mass);
  line("species.gamma31", sp.gamma31);
  line("species.gamma32", sp.gamma32);
  line("species.gamma41", sp.gamma41);
  line("species.gamma42", sp.gamma42);
  line("species.gamma53", sp.gamma53);
  line("species.gamma54", sp.gamma54);
  line("species.lambda_p", sp.lambda_p);
  line("species.lambda_a", sp.lambda_a);
  line("species.lambda_c1", sp.lambda_c1);
  line("species.lambda_c2", sp.lambda_c2);
  line("species.d13", sp.d13);
  line("drive.omega_p", d.omega_p);
  line("drive.omega_a", d.omega_a);
  line("drive.omega_c1", d.omega_c1);
  line("drive.omega_c2", d.omega_c2);
  line("drive.delta_p", d.delta_p);
  line("drive.delta_a", d.delta_a);
  line("drive.delta_c1", d.delta_c1);
  line("drive.delta_c2", d.delta_c2);
  line("drive.laser_linewidth", d.laser_linewidth);
  line("drive.ground_decoherence", d.ground_decoherence);
  line("ensemble.temperature", sc.ensemble.temperature);
  line("ensemble.density", sc.ensemble.density);
  line("ensemble.length", sc.ensemble.length);
  line("geometry.theta", sc.theta_deg);
  out += fmt::format("quadrature.scheme = {}\n",
                     q.scheme == QuadratureScheme::kTrapezoid ? "trapezoid" : "adaptive");
  line("quadrature.span", q.span);
  line("quadrature.nodes", static_cast<double>(q.nodes));
  line("quadrature.rel_tol", q.rel_tol);
  line("quadrature.abs_tol", q.abs_tol);
  line("quadrature.validity_ratio", q.validity_ratio);
  if (cfg.sweep.present) {
    out += fmt::format("sweep.variable = {}\n", sweep_variable_name(cfg.sweep.variable));
    line("sweep.start", cfg.sweep.start);
    line("sweep.stop", cfg.sweep.stop);
    line("sweep.points", static_cast<double>(cfg.sweep.points));
    out += fmt::format("sweep.spacing = {}\n", cfg.sweep.log_spacing ? "log" : "linear");
    for (const auto& l : cfg.sweep.links) {
      out += fmt::format("sweep.link.{} = {:.17g} * {} + {:.17g}\n", sweep_variable_name(l.target),
                         l.scale, sweep_variable_name(l.source), l.offset);
    }
  }
  line("criteria.ir_min", cfg.criteria.ir_min_db);
  line("criteria.il_max", cfg.criteria.il_max_db);
  line("validate.ratio", cfg.validate.ratio);
  line("validate.window", cfg.validate.half_window);
  line("validate.points", static_cast<double>(cfg.validate.points));
  line("validate.max_deviation", cfg.validate.max_deviation);
  line("optimize.grid_points", static_cast<double>(cfg.optimize.grid_points));
  line("optimize.max_cycles", static_cast<double>(cfg.optimize.max_cycles));
  for (const auto& dim : cfg.optimize.dims) {
    out += fmt::format("optimize.{} = {:.17g}, {:.17g} / {:.17g}\n", sweep_variable_name(dim.variable),
                       dim.lo, dim.hi, dim.resolution);
  }
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_form(cfg);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  return hex(digest, len);
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("NRT_PRESET_DIR"); env && *env) return env;
  return NRT_PRESET_DIR;
}

std::filesystem::path preset_path(const std::string& name) {
  const auto p = preset_dir() / (name + ".ini");
  if (!std::filesystem::is_regular_file(p)) {
    throw ConfigError("--preset", "no preset named '" + name + "' in " + preset_dir().string());
  }
  return p;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(preset_dir(), ec)) {
    if (e.path().extension() == ".ini") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace nrt::cli
