#include "nrt/doppler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nrt/errors.hpp"

namespace nrt {

void Geometry::validate() const {
  if (!(theta_deg > 90.0 && theta_deg <= 180.0)) {
    throw DomainError("misalignment angle theta must lie in (90, 180] degrees");
  }
}

void QuadratureSpec::validate() const {
  if (!(span >= 4.0)) throw DomainError("quadrature span must be at least 4 v_p");
  if (nodes < 3 || nodes % 2 == 0) throw DomainError("quadrature node count must be odd and >= 3");
  if (!(rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!(abs_tol >= 0.0)) throw DomainError("quadrature absolute floor must be non-negative");
  if (!(validity_ratio >= 0.0)) throw DomainError("validity ratio must be non-negative");
}

double effective_wavevector(double k, double theta_deg) {
  if (!(theta_deg > 90.0 && theta_deg <= 180.0)) {
    throw DomainError("misalignment angle theta must lie in (90, 180] degrees");
  }
  return k * std::cos((180.0 - theta_deg) * std::numbers::pi / 180.0);
}

namespace {

// Shift per unit velocity for each arm.
VelocityShifts shift_rates(const Geometry& geom, const AtomSpecies& species) {
  const double ka = effective_wavevector(species.k_a(), geom.theta_deg);
  const double kc2 = effective_wavevector(species.k_c2(), geom.theta_deg);
  const double s = geom.direction == ProbeDirection::kForward ? 1.0 : -1.0;
  return VelocityShifts{s * species.k_p(), -s * ka, species.k_c1(), -kc2};
}

}  // namespace

VelocityShifts shifts_for(const Geometry& geom, const AtomSpecies& species, double v) {
  const VelocityShifts r = shift_rates(geom, species);
  return VelocityShifts{r.p * v, r.a * v, r.c1 * v, r.c2 * v};
}

double maxwell_density(double v, double vp) {
  const double x = v / vp;
  return std::exp(-x * x) / (vp * std::sqrt(std::numbers::pi));
}

VelocityWindow valid_velocity_window(const Geometry& geom, const DriveConfig& drive,
                                     const AtomSpecies& species, double ratio) {
  const VelocityShifts rate = shift_rates(geom, species);
  const double probe_arm = ratio * std::max(drive.omega_p, drive.omega_a);
  const double coupling_arm = ratio * std::max(drive.omega_c1, drive.omega_c2);
  const std::array<std::array<double, 3>, 4> arms{{{drive.delta_p, rate.p, probe_arm},
                                                   {drive.delta_a, rate.a, probe_arm},
                                                   {drive.delta_c1, rate.c1, coupling_arm},
                                                   {drive.delta_c2, rate.c2, coupling_arm}}};
  VelocityWindow w;
  for (const auto& [delta, slope, margin] : arms) {
    if (std::abs(delta) < margin || delta == 0.0) {
      throw SingularityError("velocity class v = 0 m/s is not far detuned from a single-photon "
                             "transition");
    }
    if (slope == 0.0 || margin == 0.0) continue;
    // |delta + slope v| >= margin fails between these two velocities.
    const double a = (-delta - margin) / slope;
    const double b = (-delta + margin) / slope;
    const double near = std::abs(a) < std::abs(b) ? a : b;
    if (near > 0.0) {
      w.hi = std::min(w.hi, near);
    } else {
      w.lo = std::max(w.lo, near);
    }
  }
  return w;
}

namespace {

struct Integrand {
  const Geometry& geom;
  const DriveConfig& drive;
  const AtomSpecies& species;
  double vp;

  double operator()(double v) const {
    try {
      const ReducedPoint pt = reduce(drive, species, shifts_for(geom, species, v));
      return maxwell_density(v, vp) * rho55_closed_form(pt);
    } catch (const SingularityError& e) {
      throw SingularityError(std::string(e.what()) + " at velocity class v = " +
                             std::to_string(v) + " m/s");
    }
  }
};

double erf_weight(double lo, double hi, double vp) {
  return 0.5 * (std::erf(hi / vp) - std::erf(lo / vp));
}

DopplerAverage trapezoid(const Integrand& g, double lo, double hi, std::size_t nodes,
                         Parallelism par) {
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  std::vector<double> values(nodes);
  // Symmetric windows evaluate v = 0 exactly at the centre node.
  const bool symmetric = lo == -hi;
  const std::size_t centre = nodes / 2;
  parallel_for(nodes, par, [&](std::size_t i) {
    double v;
    if (symmetric) {
      v = (static_cast<double>(i) - static_cast<double>(centre)) * h;
    } else {
      v = lo + static_cast<double>(i) * h;
    }
    if (i == 0) v = lo;
    if (i == nodes - 1) v = hi;
    values[i] = g(v);
  });
  values.front() *= 0.5;
  values.back() *= 0.5;
  const double fine = h * pairwise_sum(values);

  std::vector<double> every_other;
  every_other.reserve(nodes / 2 + 1);
  for (std::size_t i = 0; i < nodes; i += 2) every_other.push_back(values[i]);
  const double coarse = 2.0 * h * pairwise_sum(every_other);

  DopplerAverage out;
  out.value = fine;
  out.evaluations = nodes;
  out.error_estimate = fine != 0.0 ? std::abs(fine - coarse) / std::abs(fine) : std::abs(coarse);
  return out;
}

struct PanelBudgetExceeded {};

DopplerAverage adaptive(const Integrand& g, double lo, double hi, double rel_tol,
                        double abs_tol, Parallelism par) {
  // Off-resonant Raman features can be far narrower than 1 m/s, so the
  // starting panels must be fine enough for the recursion to notice them.
  constexpr std::size_t kPanels = 2048;
  constexpr unsigned kMaxDepth = 15;
  // Bisection is exponential in depth; an unreachable tolerance must not
  // stall the caller.
  constexpr std::size_t kPanelBudget = std::size_t{1} << 14;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double h = (hi - lo) / static_cast<double>(kPanels);
  const double panel_abs = abs_tol / static_cast<double>(kPanels);

  std::vector<double> value(kPanels);
  std::vector<double> error(kPanels);
  std::vector<std::size_t> evals(kPanels);
  std::vector<char> ok(kPanels);
  parallel_for(kPanels, par, [&](std::size_t i) {
    const double a = lo + static_cast<double>(i) * h;
    const double b = i + 1 == kPanels ? hi : a + h;
    std::size_t n = 0;
    double err = 0.0;
    double l1 = 0.0;
    try {
      value[i] = Rule::integrate(
          [&](double v) {
            if (++n > kPanelBudget) throw PanelBudgetExceeded{};
            return g(v);
          },
          a, b, kMaxDepth, rel_tol, &err, &l1);
      ok[i] = err <= rel_tol * l1 + panel_abs;
    } catch (const PanelBudgetExceeded&) {
      value[i] = Rule::integrate(g, a, b, 0, 0.0, &err, &l1);
      n += 2 * Rule::abscissa().size() - 1;
      ok[i] = false;
    }
    error[i] = err;
    evals[i] = n;
  });

  DopplerAverage out;
  out.value = pairwise_sum(value);
  const double abs_err = pairwise_sum(error);
  out.error_estimate = out.value != 0.0 ? abs_err / std::abs(out.value) : abs_err;
  for (std::size_t n : evals) out.evaluations += n;
  const bool converged = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  if (!converged && abs_err > rel_tol * std::abs(out.value) + abs_tol) {
    throw QuadratureError("adaptive velocity quadrature did not converge", out.value,
                          out.error_estimate);
  }
  return out;
}

}  // namespace

DopplerAverage rho55_avg(const Geometry& geom, const DriveConfig& drive,
                         const AtomSpecies& species, const EnsembleConfig& ens,
                         const QuadratureSpec& quad, Parallelism par) {
  geom.validate();
  quad.validate();
  ens.validate();
  const double vp = most_probable_speed(species, ens.temperature);

  double lo = -quad.span * vp;
  double hi = quad.span * vp;
  if (quad.validity_ratio > 0.0) {
    const VelocityWindow w = valid_velocity_window(geom, drive, species, quad.validity_ratio);
    lo = std::max(lo, w.lo);
    hi = std::min(hi, w.hi);
  }

  const Integrand g{geom, drive, species, vp};
  DopplerAverage out = quad.scheme == QuadratureScheme::kTrapezoid
                           ? trapezoid(g, lo, hi, quad.nodes, par)
                           : adaptive(g, lo, hi, quad.rel_tol, quad.abs_tol, par);
  out.v_lo = lo;
  out.v_hi = hi;
  out.excluded_weight = std::max(0.0, 1.0 - erf_weight(lo, hi, vp));
  return out;
}

}  // namespace nrt
