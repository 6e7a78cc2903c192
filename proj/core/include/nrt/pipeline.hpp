#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrt/atomdata.hpp"
#include "nrt/doppler.hpp"
#include "nrt/observables.hpp"
#include "nrt/parallel.hpp"
#include "nrt/reduced.hpp"
#include "nrt/units.hpp"

namespace nrt {

struct Scenario {
  AtomSpecies species = AtomSpecies::rubidium87();
  DriveConfig drive;
  EnsembleConfig ensemble;
  double theta_deg = 180.0;
  QuadratureSpec quadrature;

  void validate() const;
};

struct PointResult {
  DopplerAverage fwd;
  DopplerAverage bwd;
  SpectrumRecord record;
};

// Both propagation directions at the scenario's operating point.
PointResult evaluate_point(const Scenario& sc, Parallelism par = {});

enum class SweepVariable {
  kDeltaP,
  kDeltaA,
  kDeltaC1,
  kDeltaC2,
  kOmegaP,
  kOmegaA,
  kOmegaC1,
  kOmegaC2,
  kOmegaC,  // both coupling fields together
  kTheta,
  kTemperature,
  kDensity,
  kLength,
  kLaserLinewidth,
};

std::optional<SweepVariable> parse_sweep_variable(std::string_view name);
std::string_view sweep_variable_name(SweepVariable v);
units::Dimension sweep_variable_dimension(SweepVariable v);

double get_variable(const Scenario& sc, SweepVariable v);
void set_variable(Scenario& sc, SweepVariable v, double value);

// target = scale * source + offset, applied after the sweep variable is set.
struct LinkedVariable {
  SweepVariable target = SweepVariable::kDeltaA;
  SweepVariable source = SweepVariable::kDeltaP;
  double scale = 1.0;
  double offset = 0.0;
};

struct SweepPlan {
  SweepVariable variable = SweepVariable::kDeltaP;
  std::vector<double> values;  // SI units, strictly increasing
  std::vector<LinkedVariable> links;

  void validate() const;
};

std::vector<double> linspace(double start, double stop, std::size_t points);

Scenario apply_sweep_value(const Scenario& base, const SweepPlan& plan, double value);

// Evaluates every sweep value. Points run in parallel when there are enough
// of them to occupy the pool; otherwise each Doppler average is parallelized.
Spectrum run_sweep(const Scenario& base, const SweepPlan& plan, Parallelism par = {});

// Single-atom (v = 0) comparison of the reduced and five-level absorption.
struct EliminationSample {
  double delta_p = 0.0;
  double alpha_reduced = 0.0;  // from the numeric reduced steady state
  double alpha_closed = 0.0;   // from the closed-form weak-probe rho55
  double alpha_full = 0.0;     // alpha~ from the five-level steady state
  bool singular = false;       // reduced model undefined here; alphas are NaN
};

struct EliminationReport {
  double ratio = 0.0;
  DriveConfig drive;  // detunings actually used
  std::vector<EliminationSample> samples;
  double max_deviation = 0.0;         // max |reduced - full| / max full
  double max_deviation_closed = 0.0;  // same for the closed form
  std::size_t singular_samples = 0;
};

// Sets Delta_a = ratio * Omega_a and Delta_c1 = ratio * Omega_c1, picks
// Delta_c2 so that the Stark-shifted four-photon resonance sits at
// Delta_p = -Delta_a, and scans Delta_p over -Delta_a +- half_window.
// Samples on a single-photon pole are flagged and left out of the deviation.
EliminationReport elimination_check(const Scenario& base, double ratio, double half_window,
                                    std::size_t points, Parallelism par = {});

// Delta_c2 solving Delta_c1 + Delta_c2 + Delta_5d - Delta_2d = 0 with the
// light shifts evaluated at Delta_p = -Delta_a; the root continuous with
// -Delta_c1 as the Rabi frequencies go to zero.
double four_photon_resonant_delta_c2(const DriveConfig& drive);

}  // namespace nrt
