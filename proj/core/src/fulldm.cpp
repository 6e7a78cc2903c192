#include "nrt/fulldm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nrt/errors.hpp"

namespace nrt {
namespace {

using cd = std::complex<double>;
constexpr int kLevels = 5;
constexpr int kDim = kLevels * kLevels;
using RealMatrix = Eigen::Matrix<double, kDim, kDim>;
using RealVector = Eigen::Matrix<double, kDim, 1>;

struct Decay {
  int from;
  int to;
  double rate;
};

// Hermitian coordinates: populations first, then (Re, Im) of rho_mn, m > n.
RealVector to_real(const Matrix5cd& m) {
  RealVector x;
  int k = 0;
  for (int d = 0; d < kLevels; ++d) x(k++) = m(d, d).real();
  for (int r = 1; r < kLevels; ++r) {
    for (int c = 0; c < r; ++c) {
      x(k++) = m(r, c).real();
      x(k++) = m(r, c).imag();
    }
  }
  return x;
}

Matrix5cd from_real(const RealVector& x) {
  Matrix5cd m = Matrix5cd::Zero();
  int k = 0;
  for (int d = 0; d < kLevels; ++d) m(d, d) = x(k++);
  for (int r = 1; r < kLevels; ++r) {
    for (int c = 0; c < r; ++c) {
      m(r, c) = cd{x(k), x(k + 1)};
      m(c, r) = std::conj(m(r, c));
      k += 2;
    }
  }
  return m;
}

Matrix5cd basis_element(int index) {
  RealVector e = RealVector::Zero();
  e(index) = 1.0;
  return from_real(e);
}

bool is_optical(int a, int b) {
  // Levels are 0-based here; ground states are 0 and 1, the 3-4 coherence
  // is a hyperfine coherence.
  const bool a_ground = a < 2;
  const bool b_ground = b < 2;
  if (a_ground && b_ground) return false;
  if ((a == 2 && b == 3) || (a == 3 && b == 2)) return false;
  return true;
}

}  // namespace

FiveLevelProblem FiveLevelProblem::from(const DriveConfig& drive, const AtomSpecies& species,
                                        const VelocityShifts& shifts) {
  FiveLevelProblem p;
  p.omega_p = drive.omega_p;
  p.omega_a = drive.omega_a;
  p.omega_c1 = drive.omega_c1;
  p.omega_c2 = drive.omega_c2;
  const double dp = drive.delta_p + shifts.p;
  const double da = drive.delta_a + shifts.a;
  const double dc1 = drive.delta_c1 + shifts.c1;
  const double dc2 = drive.delta_c2 + shifts.c2;
  p.delta_13 = dp;
  p.delta_15 = dp + da;
  p.delta_14 = p.delta_15 - dc2;
  p.delta_12 = p.delta_15 - dc1 - dc2;
  p.gamma31 = species.gamma31;
  p.gamma32 = species.gamma32;
  p.gamma41 = species.gamma41;
  p.gamma42 = species.gamma42;
  p.gamma53 = species.gamma53;
  p.gamma54 = species.gamma54;
  p.laser_linewidth = drive.laser_linewidth;
  p.ground_decoherence = drive.ground_decoherence;
  return p;
}

Matrix5cd FiveLevelProblem::hamiltonian() const {
  Matrix5cd h = Matrix5cd::Zero();
  h(1, 1) = delta_12;
  h(2, 2) = delta_13;
  h(3, 3) = delta_14;
  h(4, 4) = delta_15;
  h(2, 0) = h(0, 2) = omega_p;
  h(4, 2) = h(2, 4) = omega_a;
  h(3, 1) = h(1, 3) = omega_c1;
  h(4, 3) = h(3, 4) = omega_c2;
  return -h;
}

Matrix5cd FiveLevelProblem::liouvillian(const Matrix5cd& rho) const {
  const cd i{0.0, 1.0};
  const Matrix5cd h = hamiltonian();
  Matrix5cd out = -i * (h * rho - rho * h);

  const std::array<Decay, 6> decays{{{2, 0, gamma31},
                                     {2, 1, gamma32},
                                     {3, 0, gamma41},
                                     {3, 1, gamma42},
                                     {4, 2, gamma53},
                                     {4, 3, gamma54}}};
  // L = sqrt(G) |to><from|: L rho L^+ - {L^+ L, rho} / 2.
  for (const auto& d : decays) {
    if (d.rate == 0.0) continue;
    out(d.to, d.to) += d.rate * rho(d.from, d.from);
    for (int k = 0; k < kLevels; ++k) {
      out(d.from, k) -= 0.5 * d.rate * rho(d.from, k);
      out(k, d.from) -= 0.5 * d.rate * rho(k, d.from);
    }
  }

  for (int r = 0; r < kLevels; ++r) {
    for (int c = 0; c < kLevels; ++c) {
      if (r == c) continue;
      if (is_optical(r, c)) {
        out(r, c) -= laser_linewidth * rho(r, c);
      } else if (r < 2 && c < 2) {
        out(r, c) -= ground_decoherence * rho(r, c);
      }
    }
  }
  return out;
}

DensityMatrix5 five_level_steady_state(const FiveLevelProblem& prob) {
  const double total_decay =
      prob.gamma31 + prob.gamma32 + prob.gamma41 + prob.gamma42 + prob.gamma53 + prob.gamma54;
  if (!(total_decay > 0.0)) {
    throw DomainError("five-level model needs at least one spontaneous decay channel");
  }

  RealMatrix a;
  for (int k = 0; k < kDim; ++k) a.col(k) = to_real(prob.liouvillian(basis_element(k)));

  // Rank test on the bare Liouvillian before the trace row hides a
  // degenerate kernel. Scale-free: compare against the largest singular value.
  const Eigen::JacobiSVD<RealMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax > 0.0 && sv(kDim - 2) / smax < 1e-13) {
    throw DegenerateSteadyStateError(
        "steady state is not unique (Liouvillian kernel has dimension > 1)",
        smax / std::max(sv(kDim - 2), std::numeric_limits<double>::min()));
  }

  RealVector b = RealVector::Zero();
  a.row(0).setZero();
  for (int d = 0; d < kLevels; ++d) a(0, d) = 1.0;
  b(0) = 1.0;
  for (int r = 1; r < kDim; ++r) {
    const double scale = a.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) a.row(r) /= scale;
  }

  const Eigen::PartialPivLU<RealMatrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw NumericalError("five-level steady-state system is singular", 1.0 / rcond);
  }
  DensityMatrix5 dm;
  dm.rho = from_real(lu.solve(b));
  return dm;
}

double alpha_tilde(std::complex<double> rho31, double omega_p, const AtomSpecies& species,
                   double density) {
  if (!(omega_p > 0.0)) throw DomainError("alpha_tilde needs a positive probe Rabi frequency");
  const double prefactor = density * species.d13 * species.d13 /
                           (PhysicalConstants::hbar * PhysicalConstants::epsilon0);
  return prefactor * 2.0 * std::numbers::pi / species.lambda_p * rho31.imag() / omega_p;
}

}  // namespace nrt
