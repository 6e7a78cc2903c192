#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "nrt/errors.hpp"
#include "nrt/fulldm.hpp"
#include "oracles.hpp"

using namespace nrt;

namespace {

FiveLevelProblem toy_problem() {
  FiveLevelProblem p;
  p.omega_p = 0.7;
  p.omega_a = 1.3;
  p.omega_c1 = 1.1;
  p.omega_c2 = 0.9;
  p.delta_12 = 0.3;
  p.delta_13 = -4.0;
  p.delta_14 = 3.5;
  p.delta_15 = 0.4;
  p.gamma31 = p.gamma32 = 1.0;
  p.gamma41 = 0.8;
  p.gamma42 = 1.2;
  p.gamma53 = 0.3;
  p.gamma54 = 0.2;
  p.laser_linewidth = 0.05;
  p.ground_decoherence = 0.02;
  return p;
}

oracle::FiveLevel to_oracle(const FiveLevelProblem& p) {
  oracle::FiveLevel o;
  o.op = p.omega_p;
  o.oa = p.omega_a;
  o.oc1 = p.omega_c1;
  o.oc2 = p.omega_c2;
  o.d12 = p.delta_12;
  o.d13 = p.delta_13;
  o.d14 = p.delta_14;
  o.d15 = p.delta_15;
  o.g31 = p.gamma31;
  o.g32 = p.gamma32;
  o.g41 = p.gamma41;
  o.g42 = p.gamma42;
  o.g53 = p.gamma53;
  o.g54 = p.gamma54;
  o.gl = p.laser_linewidth;
  o.g21 = p.ground_decoherence;
  return o;
}

DriveConfig caption_drive() {
  DriveConfig d;
  d.omega_p = 0.1e6;
  d.omega_a = 50e6;
  d.omega_c1 = 50e6;
  d.omega_c2 = 50e6;
  d.delta_p = -1000.4e6;
  d.delta_a = 1000e6;
  d.delta_c1 = 1000e6;
  d.delta_c2 = -1002.5e6;
  d.laser_linewidth = 0.05e6;
  d.ground_decoherence = 2e3;
  return d;
}

}  // namespace

TEST(FiveLevel, DetuningComposition) {
  const auto rb = AtomSpecies::rubidium87();
  const auto p = FiveLevelProblem::from(caption_drive(), rb, {1e6, 2e6, 3e6, 4e6});
  EXPECT_DOUBLE_EQ(p.delta_13, -999.4e6);
  EXPECT_DOUBLE_EQ(p.delta_15, -999.4e6 + 1002e6);
  EXPECT_DOUBLE_EQ(p.delta_14, p.delta_15 - (-1002.5e6 + 4e6));
  EXPECT_DOUBLE_EQ(p.delta_12, p.delta_15 - (1003e6) - (-998.5e6));
  EXPECT_DOUBLE_EQ(p.gamma53, rb.gamma53);
  EXPECT_DOUBLE_EQ(p.laser_linewidth, 0.05e6);
}

TEST(FiveLevel, HamiltonianLayout) {
  const auto p = toy_problem();
  const Matrix5cd h = p.hamiltonian();
  EXPECT_LT((h - oracle::hamiltonian(to_oracle(p))).norm(), 1e-15);
}

TEST(FiveLevel, MatchesSuperoperatorNullVector) {
  const auto p = toy_problem();
  const auto rho = five_level_steady_state(p).rho;
  const auto ref = oracle::null_vector_steady_state(to_oracle(p));
  EXPECT_LT((rho - ref).norm(), 1e-10);
}

TEST(FiveLevel, MatchesTimeEvolution) {
  const auto p = toy_problem();
  const auto rho = five_level_steady_state(p).rho;
  const auto ref = oracle::evolve_five_level(to_oracle(p), 1500.0, 0.01);
  EXPECT_LT((rho - ref).norm(), 1e-7);
}

TEST(FiveLevel, CaptionParametersMatchNullVector) {
  const auto p = FiveLevelProblem::from(caption_drive(), AtomSpecies::rubidium87());
  const auto rho = five_level_steady_state(p);
  const auto ref = oracle::null_vector_steady_state(to_oracle(p));
  const auto r31 = rho.rho31();
  EXPECT_LT(std::abs(r31 - ref(2, 0)), 1e-6 * std::abs(r31));
  EXPECT_LT(std::abs(rho.population(5) - ref(4, 4).real()), 1e-4 * rho.population(5));
}

TEST(FiveLevel, SteadyStateInvariants) {
  for (const auto& p :
       {toy_problem(), FiveLevelProblem::from(caption_drive(), AtomSpecies::rubidium87())}) {
    const auto rho = five_level_steady_state(p).rho;
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-10 * rho.norm());
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(rho.trace().imag(), 0.0, 1e-12);
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(rho(i, i).real(), -1e-12);
      EXPECT_LE(rho(i, i).real(), 1.0 + 1e-12);
    }
    const Matrix5cd l = p.liouvillian(rho);
    EXPECT_LT(l.cwiseAbs().maxCoeff(), 1e-9 * p.hamiltonian().cwiseAbs().maxCoeff());
  }
}

TEST(FiveLevel, FieldsOffIsDegenerate) {
  auto p = toy_problem();
  p.omega_p = p.omega_a = p.omega_c1 = p.omega_c2 = 0.0;
  p.ground_decoherence = 0.0;
  EXPECT_THROW(five_level_steady_state(p), DegenerateSteadyStateError);
}

TEST(FiveLevel, NoDecayIsRejected) {
  auto p = toy_problem();
  p.gamma31 = p.gamma32 = p.gamma41 = p.gamma42 = p.gamma53 = p.gamma54 = 0.0;
  EXPECT_THROW(five_level_steady_state(p), DomainError);
}

TEST(FiveLevel, EmptyProbeLeavesUpperStatesEmpty) {
  auto p = toy_problem();
  p.omega_p = 1e-9;
  const auto rho = five_level_steady_state(p);
  EXPECT_LT(rho.population(3), 1e-15);
  EXPECT_LT(rho.population(5), 1e-15);
}

TEST(FiveLevel, WeakProbeLinearity) {
  auto p = FiveLevelProblem::from(caption_drive(), AtomSpecies::rubidium87());
  p.omega_p = 5e3;
  const auto a = five_level_steady_state(p).rho31() / p.omega_p;
  p.omega_p = 5e4;
  const auto b = five_level_steady_state(p).rho31() / p.omega_p;
  EXPECT_LT(std::abs(a - b), 1e-3 * std::abs(a));
}

TEST(AlphaTilde, Formula) {
  const auto rb = AtomSpecies::rubidium87();
  EXPECT_EQ(alpha_tilde({0.3, 0.0}, 0.1e6, rb, 2e18), 0.0);
  const double expect = 2e18 * rb.d13 * rb.d13 / (PhysicalConstants::hbar * PhysicalConstants::epsilon0) *
                        2 * std::numbers::pi / rb.lambda_p * 1e-6 / 0.1e6;
  EXPECT_NEAR(alpha_tilde({0.0, 1e-6}, 0.1e6, rb, 2e18), expect, 1e-12 * expect);
  EXPECT_THROW(alpha_tilde({0.0, 1e-6}, 0.0, rb, 2e18), DomainError);
}
