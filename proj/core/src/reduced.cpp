#include "nrt/reduced.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nrt/errors.hpp"

namespace nrt {

void DriveConfig::validate() const {
  for (double o : {omega_p, omega_a, omega_c1, omega_c2}) {
    if (!(o >= 0.0)) throw DomainError("Rabi frequencies must be non-negative");
  }
  for (double d : {delta_p, delta_a, delta_c1, delta_c2}) {
    if (!std::isfinite(d)) throw DomainError("detunings must be finite");
  }
  if (!(laser_linewidth >= 0.0)) throw DomainError("laser linewidth must be non-negative");
  if (!(ground_decoherence >= 0.0)) throw DomainError("ground decoherence must be non-negative");
}

bool DriveConfig::far_detuned(double ratio) const {
  const double probe_arm = ratio * std::max(omega_p, omega_a);
  const double coupling_arm = ratio * std::max(omega_c1, omega_c2);
  return std::abs(delta_p) >= probe_arm && std::abs(delta_a) >= probe_arm &&
         std::abs(delta_c1) >= coupling_arm && std::abs(delta_c2) >= coupling_arm;
}

EffectiveDecay effective_decay(const AtomSpecies& species) {
  EffectiveDecay d;
  const double out3 = species.gamma31 + species.gamma32;
  const double out4 = species.gamma41 + species.gamma42;
  d.eta53 = out3 > 0.0 ? species.gamma53 / out3 : 0.0;
  d.eta54 = out4 > 0.0 ? species.gamma54 / out4 : 0.0;
  d.gamma51 = species.gamma31 * d.eta53 + species.gamma41 * d.eta54;
  d.gamma52 = species.gamma32 * d.eta53 + species.gamma42 * d.eta54;
  d.gamma = 0.5 * (d.gamma51 + d.gamma52);
  return d;
}

ReducedPoint reduce(const DriveConfig& drive, const AtomSpecies& species,
                    const VelocityShifts& shifts) {
  const double dp = drive.delta_p + shifts.p;
  const double da = drive.delta_a + shifts.a;
  const double dc1 = drive.delta_c1 + shifts.c1;
  const double dc2 = drive.delta_c2 + shifts.c2;

  const std::array<std::pair<const char*, double>, 4> arms{
      {{"probe", dp}, {"assistant", da}, {"first coupling", dc1}, {"second coupling", dc2}}};
  for (const auto& [name, value] : arms) {
    if (value == 0.0) {
      throw SingularityError(std::string("shifted ") + name +
                             " detuning is zero: single-photon resonance");
    }
  }

  const EffectiveDecay decay = effective_decay(species);

  ReducedPoint pt;
  pt.omega_pe = -drive.omega_p * drive.omega_a / dp;
  pt.omega_ce = -drive.omega_c1 * drive.omega_c2 / dc2;
  pt.stark_2 = -drive.omega_c1 * drive.omega_c1 / dc1;
  pt.stark_5 = drive.omega_a * drive.omega_a / da + drive.omega_c2 * drive.omega_c2 / dc2;
  pt.delta_15 = dp + da;
  pt.delta_12 = pt.delta_15 - dc1 - dc2;
  pt.delta_12e = pt.delta_12 + pt.stark_2;
  pt.delta_15e = pt.delta_15 + pt.stark_5;
  pt.eta53 = decay.eta53;
  pt.eta54 = decay.eta54;
  pt.gamma51 = decay.gamma51;
  pt.gamma52 = decay.gamma52;
  pt.gamma = decay.gamma;
  pt.gamma_opt = decay.gamma + drive.laser_linewidth;
  return pt;
}

namespace {

constexpr double kDenominatorFloor = 1e-30;

double weak_probe(const ReducedPoint& pt, double lorentz_width) {
  if (!(pt.gamma > 0.0)) throw DomainError("effective decay Gamma must be positive");
  const double oce2 = pt.omega_ce * pt.omega_ce;
  const double d12 = pt.delta_12e;
  const double d15 = pt.delta_15e;
  // (Oce^2 - D12 D15)^2 + w^2 D12^2 expands to the textbook denominator but
  // never goes negative through cancellation.
  const double cross = oce2 - d12 * d15;
  const double den = cross * cross + lorentz_width * lorentz_width * d12 * d12;
  if (den < kDenominatorFloor) {
    throw SingularityError("weak-probe denominator vanishes (Omega_ce = 0 and Delta_12e = 0)");
  }
  return 2.0 * pt.gamma_opt * pt.omega_pe * pt.omega_pe * d12 * d12 / pt.gamma / den;
}

}  // namespace

double rho55_closed_form(const ReducedPoint& pt) { return weak_probe(pt, pt.gamma); }

double rho55_weak_probe_limit(const ReducedPoint& pt) { return weak_probe(pt, pt.gamma_opt); }

namespace {

// Real unknowns: rho11, rho22, rho55, Re/Im rho51, Re/Im rho52, Re/Im rho21.
enum Unknown : int { k11 = 0, k22, k55, k51, k52 = 5, k21 = 7, kCount = 9 };

class RealSystem {
 public:
  RealSystem() : a_(Eigen::Matrix<double, kCount, kCount>::Zero()), b_(Eigen::Matrix<double, kCount, 1>::Zero()) {}

  // Adds c * z (or c * conj(z)) to the complex equation occupying rows
  // (row, row + 1), where z is the complex unknown starting at column var.
  void add_complex(int row, std::complex<double> c, int var, bool conjugate = false) {
    const double s = conjugate ? -1.0 : 1.0;
    a_(row, var) += c.real();
    a_(row, var + 1) += -s * c.imag();
    a_(row + 1, var) += c.imag();
    a_(row + 1, var + 1) += s * c.real();
  }

  void add_real(int row, std::complex<double> c, int var) {
    a_(row, var) += c.real();
    a_(row + 1, var) += c.imag();
  }

  Eigen::Matrix<double, kCount, kCount>& matrix() { return a_; }
  Eigen::Matrix<double, kCount, 1>& rhs() { return b_; }

 private:
  Eigen::Matrix<double, kCount, kCount> a_;
  Eigen::Matrix<double, kCount, 1> b_;
};

}  // namespace

DensityMatrix3 reduced_steady_state_numeric(const ReducedPoint& pt, double gamma21) {
  if (!(pt.gamma51 + pt.gamma52 > 0.0)) {
    throw DomainError("reduced model needs Gamma51 + Gamma52 > 0");
  }
  using cd = std::complex<double>;
  const cd i{0.0, 1.0};
  const double ope = pt.omega_pe;
  const double oce = pt.omega_ce;
  const cd g51{pt.gamma_opt, -pt.delta_15e};
  const cd g52{pt.gamma_opt, pt.delta_15e - pt.delta_12e};
  const cd g21{gamma21, -pt.delta_12e};

  RealSystem sys;
  auto& a = sys.matrix();
  // d/dt rho22 = Gamma52 rho55 + i Oce (rho52 - rho25) = Gamma52 rho55 - 2 Oce Im rho52
  a(0, k55) = pt.gamma52;
  a(0, k52 + 1) = -2.0 * oce;
  // d/dt rho11 = Gamma51 rho55 - 2 Ope Im rho51
  a(1, k55) = pt.gamma51;
  a(1, k51 + 1) = -2.0 * ope;
  // d/dt rho52 = -g52 rho52 + i Ope rho12 + i Oce (rho22 - rho55)
  sys.add_complex(2, -g52, k52);
  sys.add_complex(2, i * ope, k21, /*conjugate=*/true);
  sys.add_real(2, i * oce, k22);
  sys.add_real(2, -i * oce, k55);
  // d/dt rho51 = -g51 rho51 + i Oce rho21 + i Ope (rho11 - rho55)
  sys.add_complex(4, -g51, k51);
  sys.add_complex(4, i * oce, k21);
  sys.add_real(4, i * ope, k11);
  sys.add_real(4, -i * ope, k55);
  // d/dt rho21 = -g21 rho21 + i Oce rho51 - i Ope rho25
  sys.add_complex(6, -g21, k21);
  sys.add_complex(6, i * oce, k51);
  sys.add_complex(6, -i * ope, k52, /*conjugate=*/true);
  // Population constraint replaces the rho55 equation.
  a(8, k11) = 1.0;
  a(8, k22) = 1.0;
  a(8, k55) = 1.0 + pt.eta53 + pt.eta54;
  sys.rhs()(8) = 1.0;

  // Rows mix Hz-sized rates with the dimensionless constraint; equilibrate.
  for (int r = 0; r < kCount; ++r) {
    const double scale = a.row(r).cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      a.row(r) /= scale;
      sys.rhs()(r) /= scale;
    }
  }

  const Eigen::PartialPivLU<Eigen::Matrix<double, kCount, kCount>> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw NumericalError("reduced steady-state system is singular", 1.0 / rcond);
  }
  const Eigen::Matrix<double, kCount, 1> x = lu.solve(sys.rhs());

  DensityMatrix3 dm;
  dm.rho(0, 0) = x(k11);
  dm.rho(1, 1) = x(k22);
  dm.rho(2, 2) = x(k55);
  dm.rho(2, 0) = cd{x(k51), x(k51 + 1)};
  dm.rho(2, 1) = cd{x(k52), x(k52 + 1)};
  dm.rho(1, 0) = cd{x(k21), x(k21 + 1)};
  dm.rho(0, 2) = std::conj(dm.rho(2, 0));
  dm.rho(1, 2) = std::conj(dm.rho(2, 1));
  dm.rho(0, 1) = std::conj(dm.rho(1, 0));
  return dm;
}

}  // namespace nrt
