#pragma once

#include <complex>

#include <Eigen/Dense>

#include "nrt/atomdata.hpp"
#include "nrt/reduced.hpp"

namespace nrt {

using Matrix5cd = Eigen::Matrix<std::complex<double>, 5, 5>;

// Five-level density matrix, basis {|1>,...,|5>} at indices 0..4.
struct DensityMatrix5 {
  Matrix5cd rho = Matrix5cd::Zero();

  double population(int level) const { return rho(level - 1, level - 1).real(); }
  std::complex<double> element(int row_level, int col_level) const {
    return rho(row_level - 1, col_level - 1);
  }
  std::complex<double> rho31() const { return rho(2, 0); }
};

// Interaction-picture problem for the original five-level Lambda system.
// Detunings already include any velocity shifts.
struct FiveLevelProblem {
  double omega_p = 0.0;
  double omega_a = 0.0;
  double omega_c1 = 0.0;
  double omega_c2 = 0.0;
  double delta_12 = 0.0;
  double delta_13 = 0.0;
  double delta_14 = 0.0;
  double delta_15 = 0.0;
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma41 = 0.0;
  double gamma42 = 0.0;
  double gamma53 = 0.0;
  double gamma54 = 0.0;
  double laser_linewidth = 0.0;
  double ground_decoherence = 0.0;

  // Delta13 = Dp, Delta15 = Dp + Da, Delta14 = Delta15 - Dc2,
  // Delta12 = Delta15 - Dc1 - Dc2, with shifts applied to each field.
  static FiveLevelProblem from(const DriveConfig& drive, const AtomSpecies& species,
                               const VelocityShifts& shifts = {});

  // H_I / hbar in Hz (the overall minus sign included).
  Matrix5cd hamiltonian() const;

  // Right-hand side of the master equation, d rho / dt.
  Matrix5cd liouvillian(const Matrix5cd& rho) const;
};

// Steady state of the Lindblad equation: spontaneous decay 3,4 -> 1,2 and
// 5 -> 3,4, gamma_l dephasing on every optical coherence, gamma_21 on rho21.
// Solved as a 25-dimensional real linear system with the rho11 row replaced
// by the trace condition. Throws DegenerateSteadyStateError when the kernel
// of the Liouvillian is not one-dimensional, NumericalError when the system
// is too ill-conditioned.
DensityMatrix5 five_level_steady_state(const FiveLevelProblem& prob);

// alpha~ = N d13^2 / (hbar eps0) * 2 pi / lambda_p * Im rho31 / Omega_p, 1/m.
// Throws DomainError for Omega_p <= 0.
double alpha_tilde(std::complex<double> rho31, double omega_p, const AtomSpecies& species,
                   double density);

}  // namespace nrt
