#pragma once

#include <complex>

#include <Eigen/Dense>

#include "nrt/atomdata.hpp"

namespace nrt {

// The four applied fields. All values are ordinary frequencies in Hz; the
// Rabi frequencies are real and non-negative.
struct DriveConfig {
  double omega_p = 0.0;
  double omega_a = 0.0;
  double omega_c1 = 0.0;
  double omega_c2 = 0.0;
  double delta_p = 0.0;
  double delta_a = 0.0;
  double delta_c1 = 0.0;
  double delta_c2 = 0.0;
  double laser_linewidth = 0.0;     // gamma_l, shared by all lasers
  double ground_decoherence = 0.0;  // gamma_21

  void validate() const;

  // |Delta_p|,|Delta_a| >= ratio * max(Omega_p, Omega_a) and the same for the
  // coupling arm. This is the regime where |3> and |4> may be eliminated.
  bool far_detuned(double ratio = 10.0) const;
};

// Additive single-photon detuning shifts of one velocity class, in Hz.
struct VelocityShifts {
  double p = 0.0;
  double a = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Effective three-level Lambda system {|1>,|2>,|5>} at one velocity class.
struct ReducedPoint {
  double omega_pe = 0.0;  // effective probe Rabi frequency (signed)
  double omega_ce = 0.0;  // effective coupling Rabi frequency (signed)
  double stark_2 = 0.0;   // Delta_2d
  double stark_5 = 0.0;   // Delta_5d
  double delta_12 = 0.0;  // four-photon detuning
  double delta_15 = 0.0;  // two-photon detuning
  double delta_12e = 0.0;
  double delta_15e = 0.0;
  double gamma = 0.0;      // Gamma = (Gamma51 + Gamma52) / 2
  double gamma_opt = 0.0;  // optical coherence decay Gamma + gamma_l
  double eta53 = 0.0;
  double eta54 = 0.0;
  double gamma51 = 0.0;
  double gamma52 = 0.0;
};

// Decay-derived quantities that do not depend on the fields.
struct EffectiveDecay {
  double eta53 = 0.0;
  double eta54 = 0.0;
  double gamma51 = 0.0;
  double gamma52 = 0.0;
  double gamma = 0.0;  // (gamma51 + gamma52) / 2
};

EffectiveDecay effective_decay(const AtomSpecies& species);

// Adiabatically eliminates |3> and |4>. Throws SingularityError if a shifted
// single-photon detuning entering a denominator is exactly zero.
ReducedPoint reduce(const DriveConfig& drive, const AtomSpecies& species,
                    const VelocityShifts& shifts = {});

// Weak-probe steady-state population of |5>:
//
//   rho55 = 2 gamma Ope^2 D12e^2 / Gamma
//           / [Oce^4 - 2 Oce^2 D12e D15e + (Gamma^2 + D15e^2) D12e^2]
//
// gamma_21 is neglected. Throws SingularityError when the denominator
// underflows (Oce = 0 and D12e = 0 together).
double rho55_closed_form(const ReducedPoint& pt);

// Same weak-probe limit with the optical decay gamma = Gamma + gamma_l in the
// Lorentzian denominator, which is what the exact steady state converges to
// when gamma_l > 0. Identical to rho55_closed_form for gamma_l = 0.
double rho55_weak_probe_limit(const ReducedPoint& pt);

// Steady state of the reduced three-level system, basis order {1, 2, 5}.
struct DensityMatrix3 {
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();

  double rho11() const { return rho(0, 0).real(); }
  double rho22() const { return rho(1, 1).real(); }
  double rho55() const { return rho(2, 2).real(); }
  std::complex<double> rho51() const { return rho(2, 0); }
  std::complex<double> rho52() const { return rho(2, 1); }
  std::complex<double> rho21() const { return rho(1, 0); }
};

// Solves the full (not weak-probe) reduced density-matrix equations with all
// time derivatives set to zero and the population constraint
// rho11 + rho22 + (1 + eta53 + eta54) rho55 = 1 in place of the redundant
// rho55 equation. gamma_l enters through pt.gamma_opt; gamma_21 is explicit.
// Throws NumericalError when the system is singular.
DensityMatrix3 reduced_steady_state_numeric(const ReducedPoint& pt, double gamma21);

}  // namespace nrt
