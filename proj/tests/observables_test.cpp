#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "nrt/errors.hpp"
#include "nrt/observables.hpp"
#include "nrt/reduced.hpp"

using namespace nrt;

namespace {

Spectrum spectrum_from(const std::vector<double>& x, const std::vector<double>& ir,
                       const std::vector<double>& il) {
  Spectrum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    SpectrumRecord r;
    r.axis = x[i];
    r.ir_db = ir[i];
    r.il_db = il[i];
    s.records.push_back(r);
  }
  return s;
}

}  // namespace

TEST(Absorption, Formula) {
  const auto rb = AtomSpecies::rubidium87();
  EXPECT_EQ(absorption(0.0, 0.1e6, rb, 2e18), 0.0);
  const double pre = 2e18 * rb.d13 * rb.d13 / (PhysicalConstants::hbar * PhysicalConstants::epsilon0);
  const double expect = pre * std::numbers::pi * 0.19e6 / rb.lambda_p * 1e-9 / 1e10;
  EXPECT_NEAR(absorption(1e-9, 0.1e6, rb, 2e18), expect, 1e-9 * expect);
  EXPECT_THROW(absorption(1e-9, 0.0, rb, 2e18), DomainError);
}

TEST(Absorption, IndependentOfWeakProbe) {
  const auto rb = AtomSpecies::rubidium87();
  DriveConfig d;
  d.omega_a = d.omega_c1 = d.omega_c2 = 50e6;
  d.delta_p = -1000.9e6;
  d.delta_a = d.delta_c1 = 1000e6;
  d.delta_c2 = -1002.5e6;
  d.laser_linewidth = 0.05e6;
  std::vector<double> alphas;
  for (double op : {0.05e6, 0.1e6, 0.2e6}) {
    d.omega_p = op;
    alphas.push_back(absorption(rho55_closed_form(reduce(d, rb)), op, rb, 2e18));
  }
  EXPECT_NEAR(alphas[0], alphas[1], 1e-6 * alphas[1]);
  EXPECT_NEAR(alphas[2], alphas[1], 1e-6 * alphas[1]);
}

TEST(Transmission, Values) {
  EXPECT_EQ(transmissivity(0.0, 0.01), 1.0);
  EXPECT_NEAR(transmissivity(std::numbers::ln10 / 0.01, 0.01), 0.1, 1e-15);
  EXPECT_THROW(transmissivity(1.0, 0.0), DomainError);
}

TEST(FiguresOfMerit, Values) {
  EXPECT_EQ(isolation_ratio(0.3, 0.3), 0.0);
  EXPECT_EQ(insertion_loss(1.0), 0.0);
  EXPECT_NEAR(isolation_ratio(1.0, 0.01), 20.0, 1e-12);
  EXPECT_NEAR(insertion_loss(0.1), 10.0, 1e-12);
  EXPECT_THROW(isolation_ratio(0.0, 0.5), DomainError);
  EXPECT_THROW(isolation_ratio(0.5, -0.1), DomainError);
  EXPECT_THROW(insertion_loss(0.0), DomainError);
  EXPECT_THROW(insertion_loss(1.5), DomainError);
}

TEST(FiguresOfMerit, LogSpaceMatchesDirectForm) {
  for (double af : {0.0, 3.0, 40.0}) {
    for (double ab : {5.0, 200.0, 1500.0}) {
      const double L = 0.01;
      const double direct = isolation_ratio(transmissivity(af, L), transmissivity(ab, L));
      const double logspace = isolation_ratio_from_alpha(af, ab, L);
      EXPECT_NEAR(logspace, direct, 1e-9 * std::abs(direct));
      EXPECT_NEAR(insertion_loss_from_alpha(af, L), insertion_loss(transmissivity(af, L)), 1e-12);
    }
  }
}

TEST(FiguresOfMerit, HugeIsolationDoesNotUnderflow) {
  const auto r = make_record(0.0, 1.0, 1e6, 0.01);
  EXPECT_EQ(r.t_bwd, 0.0);
  EXPECT_NEAR(r.ir_db, (1e6 - 1.0) * 0.01 * 10.0 / std::numbers::ln10, 1e-6);
  EXPECT_TRUE(std::isfinite(r.ir_db));
}

TEST(FiguresOfMerit, InsertionLossMonotoneInAlpha) {
  double prev = insertion_loss_from_alpha(100.0, 0.01);
  for (double a = 99.0; a >= 0.0; a -= 1.0) {
    const double cur = insertion_loss_from_alpha(a, 0.01);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(Record, RecomputableFromTransmissivities) {
  const auto r = make_record(-1e9, 6.1, 212.0, 0.01);
  EXPECT_DOUBLE_EQ(r.t_fwd, std::exp(-6.1 * 0.01));
  EXPECT_DOUBLE_EQ(r.t_bwd, std::exp(-212.0 * 0.01));
  EXPECT_NEAR(r.ir_db, isolation_ratio(r.t_fwd, r.t_bwd), 1e-12);
  EXPECT_NEAR(r.il_db, insertion_loss(r.t_fwd), 1e-12);
}

TEST(Spectrum, SortedAxis) {
  auto s = spectrum_from({1, 2, 3}, {0, 0, 0}, {0, 0, 0});
  EXPECT_NO_THROW(s.check_sorted());
  s.records[2].axis = 2;
  EXPECT_THROW(s.check_sorted(), DomainError);
}

TEST(Bandwidth, AllFailing) {
  const auto s = spectrum_from({0, 1, 2, 3}, {5, 10, 15, 19}, {0.1, 0.1, 0.1, 0.1});
  const auto b = bandwidth(s);
  EXPECT_TRUE(b.intervals.empty());
  EXPECT_EQ(b.total_width, 0.0);
}

TEST(Bandwidth, LinearCrossings) {
  // IR is a tent peaking at 40 dB; IL ramps through 1 dB at x = 7.
  const std::vector<double> x{0, 2, 4, 6, 8, 10};
  const auto s = spectrum_from(x, {0, 20, 40, 40, 20, 0}, {0.0, 0.0, 0.5, 0.5, 1.5, 2.0});
  const auto b = bandwidth(s, 20.0, 1.0);
  ASSERT_EQ(b.intervals.size(), 1u);
  EXPECT_DOUBLE_EQ(b.intervals[0].lo, 2.0);
  EXPECT_DOUBLE_EQ(b.intervals[0].hi, 7.0);
  EXPECT_DOUBLE_EQ(b.total_width, 5.0);
}

TEST(Bandwidth, DisjointIntervalsSorted) {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6};
  const auto s = spectrum_from(x, {30, 30, 10, 10, 30, 30, 10}, std::vector<double>(7, 0.2));
  const auto b = bandwidth(s);
  ASSERT_EQ(b.intervals.size(), 2u);
  EXPECT_DOUBLE_EQ(b.intervals[0].lo, 0.0);
  EXPECT_DOUBLE_EQ(b.intervals[0].hi, 1.5);
  EXPECT_DOUBLE_EQ(b.intervals[1].lo, 3.5);
  EXPECT_DOUBLE_EQ(b.intervals[1].hi, 5.5);
  EXPECT_LT(b.intervals[0].hi, b.intervals[1].lo);
  EXPECT_DOUBLE_EQ(b.total_width, 1.5 + 2.0);
}

TEST(Bandwidth, ResamplingInvariance) {
  // Piecewise-linear data resampled on midpoints keeps the same crossings.
  const std::vector<double> x{0, 1, 2, 3, 4, 5};
  const std::vector<double> ir{0, 25, 35, 28, 12, 3};
  const std::vector<double> il{0.2, 0.4, 0.8, 1.3, 0.9, 0.1};
  std::vector<double> x2, ir2, il2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x2.push_back(x[i]);
    ir2.push_back(ir[i]);
    il2.push_back(il[i]);
    if (i + 1 < x.size()) {
      x2.push_back(0.5 * (x[i] + x[i + 1]));
      ir2.push_back(0.5 * (ir[i] + ir[i + 1]));
      il2.push_back(0.5 * (il[i] + il[i + 1]));
    }
  }
  const auto a = bandwidth(spectrum_from(x, ir, il));
  const auto b = bandwidth(spectrum_from(x2, ir2, il2));
  ASSERT_EQ(a.intervals.size(), b.intervals.size());
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    EXPECT_NEAR(a.intervals[i].lo, b.intervals[i].lo, 1e-12);
    EXPECT_NEAR(a.intervals[i].hi, b.intervals[i].hi, 1e-12);
  }
  EXPECT_NEAR(a.total_width, b.total_width, 1e-12);
}

TEST(Crossings, Linear) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{0, 2, 2, -2};
  const auto c = threshold_crossings(x, y, 1.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 2.25);
  EXPECT_TRUE(threshold_crossings(x, y, 5.0).empty());
}
