#include "nrt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "nrt/errors.hpp"
#include "nrt/fulldm.hpp"

namespace nrt {

void Scenario::validate() const {
  species.validate();
  drive.validate();
  ensemble.validate();
  Geometry{ProbeDirection::kForward, theta_deg}.validate();
  quadrature.validate();
}

PointResult evaluate_point(const Scenario& sc, Parallelism par) {
  PointResult out;
  out.fwd = rho55_avg({ProbeDirection::kForward, sc.theta_deg}, sc.drive, sc.species, sc.ensemble,
                      sc.quadrature, par);
  out.bwd = rho55_avg({ProbeDirection::kBackward, sc.theta_deg}, sc.drive, sc.species,
                      sc.ensemble, sc.quadrature, par);
  const double a_fwd = absorption(out.fwd.value, sc.drive.omega_p, sc.species, sc.ensemble.density);
  const double a_bwd = absorption(out.bwd.value, sc.drive.omega_p, sc.species, sc.ensemble.density);
  out.record = make_record(0.0, a_fwd, a_bwd, sc.ensemble.length);
  return out;
}

namespace {

struct VariableInfo {
  SweepVariable var;
  std::string_view name;
  units::Dimension dim;
};

constexpr VariableInfo kVariables[] = {
    {SweepVariable::kDeltaP, "delta_p", units::Dimension::kFrequency},
    {SweepVariable::kDeltaA, "delta_a", units::Dimension::kFrequency},
    {SweepVariable::kDeltaC1, "delta_c1", units::Dimension::kFrequency},
    {SweepVariable::kDeltaC2, "delta_c2", units::Dimension::kFrequency},
    {SweepVariable::kOmegaP, "omega_p", units::Dimension::kFrequency},
    {SweepVariable::kOmegaA, "omega_a", units::Dimension::kFrequency},
    {SweepVariable::kOmegaC1, "omega_c1", units::Dimension::kFrequency},
    {SweepVariable::kOmegaC2, "omega_c2", units::Dimension::kFrequency},
    {SweepVariable::kOmegaC, "omega_c", units::Dimension::kFrequency},
    {SweepVariable::kTheta, "theta", units::Dimension::kAngle},
    {SweepVariable::kTemperature, "temperature", units::Dimension::kTemperature},
    {SweepVariable::kDensity, "density", units::Dimension::kNumberDensity},
    {SweepVariable::kLength, "length", units::Dimension::kLength},
    {SweepVariable::kLaserLinewidth, "laser_linewidth", units::Dimension::kFrequency},
};

const VariableInfo& info(SweepVariable v) {
  for (const auto& i : kVariables) {
    if (i.var == v) return i;
  }
  throw DomainError("unknown sweep variable");
}

}  // namespace

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  for (const auto& i : kVariables) {
    if (i.name == name) return i.var;
  }
  return std::nullopt;
}

std::string_view sweep_variable_name(SweepVariable v) { return info(v).name; }
units::Dimension sweep_variable_dimension(SweepVariable v) { return info(v).dim; }

double get_variable(const Scenario& sc, SweepVariable v) {
  switch (v) {
    case SweepVariable::kDeltaP: return sc.drive.delta_p;
    case SweepVariable::kDeltaA: return sc.drive.delta_a;
    case SweepVariable::kDeltaC1: return sc.drive.delta_c1;
    case SweepVariable::kDeltaC2: return sc.drive.delta_c2;
    case SweepVariable::kOmegaP: return sc.drive.omega_p;
    case SweepVariable::kOmegaA: return sc.drive.omega_a;
    case SweepVariable::kOmegaC1: return sc.drive.omega_c1;
    case SweepVariable::kOmegaC2: return sc.drive.omega_c2;
    case SweepVariable::kOmegaC: return sc.drive.omega_c1;
    case SweepVariable::kTheta: return sc.theta_deg;
    case SweepVariable::kTemperature: return sc.ensemble.temperature;
    case SweepVariable::kDensity: return sc.ensemble.density;
    case SweepVariable::kLength: return sc.ensemble.length;
    case SweepVariable::kLaserLinewidth: return sc.drive.laser_linewidth;
  }
  throw DomainError("unknown sweep variable");
}

void set_variable(Scenario& sc, SweepVariable v, double value) {
  switch (v) {
    case SweepVariable::kDeltaP: sc.drive.delta_p = value; return;
    case SweepVariable::kDeltaA: sc.drive.delta_a = value; return;
    case SweepVariable::kDeltaC1: sc.drive.delta_c1 = value; return;
    case SweepVariable::kDeltaC2: sc.drive.delta_c2 = value; return;
    case SweepVariable::kOmegaP: sc.drive.omega_p = value; return;
    case SweepVariable::kOmegaA: sc.drive.omega_a = value; return;
    case SweepVariable::kOmegaC1: sc.drive.omega_c1 = value; return;
    case SweepVariable::kOmegaC2: sc.drive.omega_c2 = value; return;
    case SweepVariable::kOmegaC:
      sc.drive.omega_c1 = value;
      sc.drive.omega_c2 = value;
      return;
    case SweepVariable::kTheta: sc.theta_deg = value; return;
    case SweepVariable::kTemperature: sc.ensemble.temperature = value; return;
    case SweepVariable::kDensity: sc.ensemble.density = value; return;
    case SweepVariable::kLength: sc.ensemble.length = value; return;
    case SweepVariable::kLaserLinewidth: sc.drive.laser_linewidth = value; return;
  }
  throw DomainError("unknown sweep variable");
}

void SweepPlan::validate() const {
  if (values.empty()) throw ConfigError("sweep", "sweep range is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ConfigError("sweep", "sweep values must be finite");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw ConfigError("sweep", "sweep values must be strictly increasing");
    }
  }
  for (const auto& l : links) {
    if (l.target == variable) {
      throw ConfigError("sweep.link", "the sweep variable cannot also be a link target");
    }
    if (sweep_variable_dimension(l.target) != sweep_variable_dimension(l.source) &&
        l.scale != 0.0) {
      throw ConfigError("sweep.link." + std::string(sweep_variable_name(l.target)),
                        "linked variables must share a dimension");
    }
    if (!std::isfinite(l.scale) || !std::isfinite(l.offset)) {
      throw ConfigError("sweep.link." + std::string(sweep_variable_name(l.target)),
                        "link coefficients must be finite");
    }
  }
}

std::vector<double> linspace(double start, double stop, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {start};
  std::vector<double> v(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

Scenario apply_sweep_value(const Scenario& base, const SweepPlan& plan, double value) {
  Scenario sc = base;
  set_variable(sc, plan.variable, value);
  for (const auto& l : plan.links) {
    set_variable(sc, l.target, l.scale * get_variable(sc, l.source) + l.offset);
  }
  return sc;
}

Spectrum run_sweep(const Scenario& base, const SweepPlan& plan, Parallelism par) {
  plan.validate();
  const std::size_t n = plan.values.size();
  std::vector<PointResult> results(n);
  const bool outer = n >= std::max(1u, par.threads);
  const Parallelism inner = outer ? Parallelism{1} : par;
  parallel_for(n, outer ? par : Parallelism{1}, [&](std::size_t i) {
    const Scenario sc = apply_sweep_value(base, plan, plan.values[i]);
    sc.validate();
    results[i] = evaluate_point(sc, inner);
    results[i].record.axis = plan.values[i];
  });

  Spectrum s;
  s.meta.axis_name = std::string(sweep_variable_name(plan.variable));
  s.meta.quadrature = base.quadrature;
  s.meta.length = base.ensemble.length;
  s.records.reserve(n);
  for (const auto& r : results) {
    s.records.push_back(r.record);
    s.meta.max_excluded_weight =
        std::max({s.meta.max_excluded_weight, r.fwd.excluded_weight, r.bwd.excluded_weight});
    s.meta.max_quadrature_error =
        std::max({s.meta.max_quadrature_error, r.fwd.error_estimate, r.bwd.error_estimate});
  }
  return s;
}

double four_photon_resonant_delta_c2(const DriveConfig& drive) {
  if (drive.delta_a == 0.0 || drive.delta_c1 == 0.0) {
    throw SingularityError("assistant and first coupling detunings must be nonzero");
  }
  // With Delta_p = -Delta_a: Dc2^2 + b Dc2 + Oc2^2 = 0.
  const double stark_2 = -drive.omega_c1 * drive.omega_c1 / drive.delta_c1;
  const double b = drive.delta_c1 + drive.omega_a * drive.omega_a / drive.delta_a - stark_2;
  const double c = drive.omega_c2 * drive.omega_c2;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    throw DomainError("no real second coupling detuning reaches four-photon resonance");
  }
  if (c == 0.0) return -b;
  // Larger-magnitude root of the stable pair; it tracks -Delta_c1.
  return -0.5 * (b + std::copysign(std::sqrt(disc), b));
}

EliminationReport elimination_check(const Scenario& base, double ratio, double half_window,
                                    std::size_t points, Parallelism par) {
  if (!(ratio > 0.0)) throw ConfigError("validate.ratio", "ratio must be positive");
  if (!(half_window > 0.0)) throw ConfigError("validate.window", "window must be positive");
  if (points < 2) throw ConfigError("validate.points", "need at least two points");

  EliminationReport rep;
  rep.ratio = ratio;
  rep.drive = base.drive;
  rep.drive.delta_a = ratio * base.drive.omega_a;
  rep.drive.delta_c1 = ratio * base.drive.omega_c1;
  rep.drive.delta_c2 = four_photon_resonant_delta_c2(rep.drive);

  const auto grid = linspace(-rep.drive.delta_a - half_window, -rep.drive.delta_a + half_window,
                             points);
  rep.samples.resize(points);
  parallel_for(points, par, [&](std::size_t i) {
    DriveConfig d = rep.drive;
    d.delta_p = grid[i];
    EliminationSample& s = rep.samples[i];
    s.delta_p = grid[i];

    const double n = base.ensemble.density;
    const auto rho = five_level_steady_state(FiveLevelProblem::from(d, base.species));
    s.alpha_full = alpha_tilde(rho.rho31(), d.omega_p, base.species, n);
    try {
      const ReducedPoint pt = reduce(d, base.species);
      const double rho55_num = reduced_steady_state_numeric(pt, d.ground_decoherence).rho55();
      s.alpha_reduced = absorption(rho55_num, d.omega_p, base.species, n);
      s.alpha_closed = absorption(rho55_closed_form(pt), d.omega_p, base.species, n);
    } catch (const SingularityError&) {
      s.singular = true;
      s.alpha_reduced = s.alpha_closed = std::numeric_limits<double>::quiet_NaN();
    }
  });

  double peak = 0.0;
  for (const auto& s : rep.samples) {
    peak = std::max(peak, std::abs(s.alpha_full));
    if (s.singular) ++rep.singular_samples;
  }
  if (peak > 0.0) {
    for (const auto& s : rep.samples) {
      if (s.singular) continue;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(s.alpha_reduced - s.alpha_full) / peak);
      rep.max_deviation_closed =
          std::max(rep.max_deviation_closed, std::abs(s.alpha_closed - s.alpha_full) / peak);
    }
  }
  return rep;
}

}  // namespace nrt
