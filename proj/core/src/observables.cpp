#include "nrt/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "nrt/errors.hpp"
#include "nrt/reduced.hpp"

namespace nrt {

namespace {
constexpr double kDbPerNeper = 10.0 / std::numbers::ln10;
}

double absorption(double rho55, double omega_p, const AtomSpecies& species, double density) {
  if (!(omega_p > 0.0)) throw DomainError("absorption needs a positive probe Rabi frequency");
  const double gamma = effective_decay(species).gamma;
  const double prefactor = density * species.d13 * species.d13 /
                           (PhysicalConstants::hbar * PhysicalConstants::epsilon0);
  return prefactor * std::numbers::pi * gamma / species.lambda_p * rho55 / (omega_p * omega_p);
}

double transmissivity(double alpha, double length) {
  if (!(length > 0.0)) throw DomainError("cell length must be positive");
  return std::exp(-alpha * length);
}

double isolation_ratio(double t_fwd, double t_bwd) {
  if (!(t_fwd > 0.0 && t_fwd <= 1.0) || !(t_bwd > 0.0 && t_bwd <= 1.0)) {
    throw DomainError("transmissivities must lie in (0, 1]");
  }
  return 10.0 * std::log10(t_fwd / t_bwd);
}

double insertion_loss(double t_fwd) {
  if (!(t_fwd > 0.0 && t_fwd <= 1.0)) throw DomainError("transmissivity must lie in (0, 1]");
  return -10.0 * std::log10(t_fwd);
}

double isolation_ratio_from_alpha(double alpha_fwd, double alpha_bwd, double length) {
  return (alpha_bwd - alpha_fwd) * length * kDbPerNeper;
}

double insertion_loss_from_alpha(double alpha_fwd, double length) {
  return alpha_fwd * length * kDbPerNeper;
}

SpectrumRecord make_record(double axis, double alpha_fwd, double alpha_bwd, double length) {
  SpectrumRecord r;
  r.axis = axis;
  r.alpha_fwd = alpha_fwd;
  r.alpha_bwd = alpha_bwd;
  r.t_fwd = transmissivity(alpha_fwd, length);
  r.t_bwd = transmissivity(alpha_bwd, length);
  r.ir_db = isolation_ratio_from_alpha(alpha_fwd, alpha_bwd, length);
  r.il_db = insertion_loss_from_alpha(alpha_fwd, length);
  return r;
}

void Spectrum::check_sorted() const {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].axis > records[i - 1].axis)) {
      throw DomainError("spectrum axis must be strictly increasing");
    }
  }
}

namespace {

// Sub-interval of [0, 1] where the linear function f0 + t (f1 - f0) > 0.
std::optional<std::pair<double, double>> positive_part(double f0, double f1) {
  if (f0 > 0.0 && f1 > 0.0) return std::pair{0.0, 1.0};
  if (f0 <= 0.0 && f1 <= 0.0) return std::nullopt;
  const double t = f0 / (f0 - f1);
  return f0 > 0.0 ? std::pair{0.0, t} : std::pair{t, 1.0};
}

}  // namespace

BandwidthResult bandwidth(const Spectrum& spectrum, double ir_min_db, double il_max_db) {
  BandwidthResult result;
  const auto& rec = spectrum.records;
  auto push = [&](double lo, double hi) {
    if (!result.intervals.empty() && lo <= result.intervals.back().hi) {
      result.intervals.back().hi = std::max(result.intervals.back().hi, hi);
    } else {
      result.intervals.push_back({lo, hi});
    }
  };

  if (rec.size() == 1) {
    if (rec[0].ir_db > ir_min_db && rec[0].il_db < il_max_db) push(rec[0].axis, rec[0].axis);
  }
  for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
    const auto ir = positive_part(rec[i].ir_db - ir_min_db, rec[i + 1].ir_db - ir_min_db);
    const auto il = positive_part(il_max_db - rec[i].il_db, il_max_db - rec[i + 1].il_db);
    if (!ir || !il) continue;
    const double t0 = std::max(ir->first, il->first);
    const double t1 = std::min(ir->second, il->second);
    if (t0 > t1) continue;
    const double x0 = rec[i].axis;
    const double dx = rec[i + 1].axis - x0;
    push(x0 + t0 * dx, x0 + t1 * dx);
  }
  for (const auto& iv : result.intervals) result.total_width += iv.width();
  return result;
}

std::vector<double> threshold_crossings(std::span<const double> x, std::span<const double> y,
                                        double level) {
  std::vector<double> out;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = y[i] - level;
    const double b = y[i + 1] - level;
    if (a == 0.0) {
      out.push_back(x[i]);
    } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
      out.push_back(x[i] + (x[i + 1] - x[i]) * a / (a - b));
    }
  }
  if (n > 0 && y[n - 1] == level) out.push_back(x[n - 1]);
  return out;
}

}  // namespace nrt
