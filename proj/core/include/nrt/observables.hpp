#pragma once

#include <span>
#include <string>
#include <vector>

#include "nrt/atomdata.hpp"
#include "nrt/doppler.hpp"

namespace nrt {

// alpha = N d13^2 / (hbar eps0) * pi Gamma / lambda_p * rho55 / Omega_p^2, 1/m,
// with Gamma the effective |5> -> |1>,|2> decay. Throws DomainError for
// Omega_p <= 0.
double absorption(double rho55, double omega_p, const AtomSpecies& species, double density);

// exp(-alpha L). Throws DomainError for L <= 0.
double transmissivity(double alpha, double length);

// 10 log10(T+/T-) and -10 log10(T+). Throw DomainError unless T in (0, 1].
double isolation_ratio(double t_fwd, double t_bwd);
double insertion_loss(double t_fwd);

// Log-space forms used by the pipeline: a backward transmissivity far below
// the double range still yields a finite isolation ratio.
double isolation_ratio_from_alpha(double alpha_fwd, double alpha_bwd, double length);
double insertion_loss_from_alpha(double alpha_fwd, double length);

struct SpectrumRecord {
  double axis = 0.0;  // SI value of the swept variable
  double alpha_fwd = 0.0;
  double alpha_bwd = 0.0;
  double t_fwd = 1.0;
  double t_bwd = 1.0;
  double ir_db = 0.0;
  double il_db = 0.0;
};

SpectrumRecord make_record(double axis, double alpha_fwd, double alpha_bwd, double length);

struct SpectrumMetadata {
  std::string axis_name = "delta_p";
  std::string config_hash;
  QuadratureSpec quadrature;
  std::string timestamp;
  double length = 0.0;
  double max_excluded_weight = 0.0;
  double max_quadrature_error = 0.0;
};

struct Spectrum {
  std::vector<SpectrumRecord> records;
  SpectrumMetadata meta;

  // Throws DomainError when the axis is not strictly increasing.
  void check_sorted() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct BandwidthResult {
  std::vector<Interval> intervals;
  double total_width = 0.0;
};

// Axis intervals where IR > ir_min and IL < il_max, treating both curves as
// piecewise linear between samples.
BandwidthResult bandwidth(const Spectrum& spectrum, double ir_min_db = 20.0,
                          double il_max_db = 1.0);

// Axis positions where the piecewise-linear curve y(x) crosses level.
std::vector<double> threshold_crossings(std::span<const double> x, std::span<const double> y,
                                        double level);

}  // namespace nrt
