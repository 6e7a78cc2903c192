#pragma once

#include <cstddef>
#include <limits>

#include "nrt/atomdata.hpp"
#include "nrt/parallel.hpp"
#include "nrt/reduced.hpp"

namespace nrt {

enum class ProbeDirection { kForward, kBackward };

// The probe and first coupling beams run along +-z; the assistant and second
// coupling beams cross them at 180 deg - theta (theta = 180 deg means exactly
// counter-propagating pairs).
struct Geometry {
  ProbeDirection direction = ProbeDirection::kForward;
  double theta_deg = 180.0;

  void validate() const;  // theta in (90, 180]
};

enum class QuadratureScheme { kTrapezoid, kAdaptive };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::kTrapezoid;
  double span = 5.0;          // integration half-width in units of v_p
  std::size_t nodes = 20001;  // trapezoid nodes, odd so that v = 0 is a node
  double rel_tol = 1e-6;      // adaptive scheme target
  // Absolute floor on the averaged rho55. Tails this small change alpha by
  // about 1e-6 per metre and are not worth chasing.
  double abs_tol = 1e-14;
  // Velocity classes whose shifted single-photon detuning falls below
  // validity_ratio times the Rabi frequencies of that arm are outside the
  // reduced model and are excluded from the average. 0 disables clipping.
  double validity_ratio = 2.0;

  void validate() const;
};

// k cos(180 deg - theta).
double effective_wavevector(double k, double theta_deg);

// Forward:  (+k_p v, -k_a^eff v, +k_c1 v, -k_c2^eff v)
// Backward: (-k_p v, +k_a^eff v, +k_c1 v, -k_c2^eff v)
VelocityShifts shifts_for(const Geometry& geom, const AtomSpecies& species, double v);

// One-dimensional Maxwell distribution exp(-v^2/v_p^2) / (v_p sqrt(pi)).
double maxwell_density(double v, double vp);

struct VelocityWindow {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

// Largest interval around v = 0 in which every arm stays far detuned by the
// given ratio. Throws SingularityError if v = 0 itself is excluded.
VelocityWindow valid_velocity_window(const Geometry& geom, const DriveConfig& drive,
                                     const AtomSpecies& species, double ratio);

struct DopplerAverage {
  double value = 0.0;
  double v_lo = 0.0;
  double v_hi = 0.0;
  double excluded_weight = 0.0;  // Maxwell weight outside [v_lo, v_hi]
  double error_estimate = 0.0;   // relative; half-grid or Gauss-Kronrod estimate
  std::size_t evaluations = 0;
};

// Maxwell average of rho55_closed_form over the velocity classes. Throws
// SingularityError naming the velocity class if a node lands on a pole, and
// QuadratureError if the adaptive scheme cannot reach rel_tol. The trapezoid
// never throws; its half-grid estimate is reported for the caller to judge.
DopplerAverage rho55_avg(const Geometry& geom, const DriveConfig& drive,
                         const AtomSpecies& species, const EnsembleConfig& ens,
                         const QuadratureSpec& quad, Parallelism par = {});

}  // namespace nrt
