#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "nrt/atomdata.hpp"
#include "nrt/errors.hpp"

using namespace nrt;

TEST(AtomData, ConstantsArePositive) {
  EXPECT_GT(PhysicalConstants::boltzmann_k, 0.0);
  EXPECT_GT(PhysicalConstants::hbar, 0.0);
  EXPECT_GT(PhysicalConstants::epsilon0, 0.0);
  EXPECT_GT(PhysicalConstants::amu, 0.0);
}

TEST(AtomData, RubidiumPreset) {
  const auto rb = AtomSpecies::rubidium87();
  EXPECT_NO_THROW(rb.validate());
  EXPECT_DOUBLE_EQ(rb.gamma31, 5.75e6);
  EXPECT_DOUBLE_EQ(rb.gamma42, 5.75e6);
  EXPECT_DOUBLE_EQ(rb.gamma53, 0.19e6);
  EXPECT_DOUBLE_EQ(rb.lambda_p, 795.0e-9);
  EXPECT_DOUBLE_EQ(rb.lambda_c1, 795.0e-9);
  EXPECT_DOUBLE_EQ(rb.lambda_a, 728.7e-9);
  EXPECT_DOUBLE_EQ(rb.lambda_c2, 728.7e-9);
  EXPECT_DOUBLE_EQ(rb.d13, 2.537e-29);
  // Equal branching into |3> and |4>, so Gamma51 = Gamma52 downstream.
  EXPECT_DOUBLE_EQ(rb.gamma53 / (rb.gamma31 + rb.gamma32), rb.gamma54 / (rb.gamma41 + rb.gamma42));
}

TEST(AtomData, MostProbableSpeed) {
  const auto rb = AtomSpecies::rubidium87();
  const double v300 = most_probable_speed(rb, 300.0);
  EXPECT_NEAR(v300, 240.0, 1.0);
  EXPECT_NEAR(most_probable_speed(rb, 75.0), 0.5 * v300, 1e-12 * v300);
  EXPECT_LT(most_probable_speed(rb, 1e-12), 1e-3);
  EXPECT_THROW(most_probable_speed(rb, 0.0), DomainError);
  EXPECT_THROW(most_probable_speed(rb, -3.0), DomainError);
}

TEST(AtomData, DopplerWidths) {
  EXPECT_NEAR(doppler_half_width(795.0e-9, 240.0) / 1e6, 250.0, 1.5);
  EXPECT_NEAR(doppler_half_width(728.7e-9, 240.0) / 1e6, 274.0, 1.5);
  const double two_photon = 1.0 / std::abs(1.0 / 795.0e-9 - 1.0 / 728.7e-9);
  EXPECT_NEAR(doppler_half_width(two_photon, 240.0) / 1e6, 22.8, 0.1);
  EXPECT_DOUBLE_EQ(doppler_half_width(795.0e-9, 480.0), 2.0 * doppler_half_width(795.0e-9, 240.0));
  EXPECT_DOUBLE_EQ(doppler_half_width(2 * 795.0e-9, 240.0),
                   0.5 * doppler_half_width(795.0e-9, 240.0));
  EXPECT_THROW(doppler_half_width(0.0, 240.0), DomainError);
}

TEST(AtomData, EnsembleValidation) {
  EXPECT_NO_THROW(EnsembleConfig{}.validate());
  EXPECT_THROW((EnsembleConfig{0.0, 1e18, 0.01}.validate()), DomainError);
  EXPECT_THROW((EnsembleConfig{300, -1.0, 0.01}.validate()), DomainError);
  EXPECT_THROW((EnsembleConfig{300, 1e18, 0.0}.validate()), DomainError);
}

TEST(AtomData, SpeciesValidation) {
  auto rb = AtomSpecies::rubidium87();
  rb.gamma32 = -1.0;
  EXPECT_THROW(rb.validate(), DomainError);
  rb = AtomSpecies::rubidium87();
  rb.lambda_a = 0.0;
  EXPECT_THROW(rb.validate(), DomainError);
  rb = AtomSpecies::rubidium87();
  rb.mass = 0.0;
  EXPECT_THROW(rb.validate(), DomainError);
}

namespace {
const char* kSpeciesText = R"(
; test species
[species]
name = Test
mass = 86.909180527 u
gamma31 = 5.75 MHz
gamma32 = 5.75 MHz
gamma41 = 5.75 MHz
gamma42 = 5.75 MHz
gamma53 = 0.19 MHz
gamma54 = 0.19 MHz
lambda_p = 795.0 nm
lambda_a = 728.7 nm
lambda_c1 = 795.0 nm
lambda_c2 = 728.7 nm
d13 = 2.537e-29 C*m
)";
}

TEST(AtomData, ReadSpecies) {
  std::istringstream in(kSpeciesText);
  const auto s = read_species(in);
  const auto rb = AtomSpecies::rubidium87();
  EXPECT_EQ(s.name, "Test");
  EXPECT_NEAR(s.mass, rb.mass, 1e-12 * rb.mass);
  EXPECT_DOUBLE_EQ(s.gamma53, rb.gamma53);
  EXPECT_DOUBLE_EQ(s.lambda_a, rb.lambda_a);
  EXPECT_DOUBLE_EQ(s.d13, rb.d13);
}

TEST(AtomData, ReadSpeciesRejectsUnitless) {
  std::string text = kSpeciesText;
  text.replace(text.find("5.75 MHz"), 8, "5.75");
  std::istringstream in(text);
  EXPECT_THROW(read_species(in), ConfigError);
}

TEST(AtomData, ReadSpeciesRejectsMissingField) {
  std::string text = kSpeciesText;
  text.erase(text.find("d13"));
  std::istringstream in(text);
  EXPECT_THROW(read_species(in), ConfigError);
}

TEST(AtomData, ShippedSpeciesFileMatchesBuiltin) {
  const auto s = load_species(std::string(NRT_SPECIES_DIR) + "/rb87.ini");
  const auto rb = AtomSpecies::rubidium87();
  EXPECT_NEAR(s.mass, rb.mass, 1e-12 * rb.mass);
  EXPECT_DOUBLE_EQ(s.gamma31, rb.gamma31);
  EXPECT_DOUBLE_EQ(s.lambda_c2, rb.lambda_c2);
  EXPECT_DOUBLE_EQ(species_by_name("rb87").lambda_p, rb.lambda_p);
  EXPECT_THROW(species_by_name("/no/such/species.ini"), ConfigError);
}
