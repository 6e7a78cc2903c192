#pragma once

#include <filesystem>
#include <istream>
#include <string>

namespace nrt {

// CODATA 2018 values; not configurable.
struct PhysicalConstants {
  static constexpr double boltzmann_k = 1.380649e-23;     // J/K
  static constexpr double hbar = 1.054571817e-34;         // J s
  static constexpr double epsilon0 = 8.8541878128e-12;    // F/m
  static constexpr double amu = 1.66053906660e-27;        // kg
};

// Level scheme |1>,|2> (ground), |3>,|4> (intermediate), |5> (upper).
// Decay rates are ordinary frequencies in Hz, wavelengths in m.
struct AtomSpecies {
  std::string name;
  double mass = 0.0;  // kg
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma41 = 0.0;
  double gamma42 = 0.0;
  double gamma53 = 0.0;
  double gamma54 = 0.0;
  double lambda_p = 0.0;   // |1>-|3>
  double lambda_a = 0.0;   // |3>-|5>
  double lambda_c1 = 0.0;  // |2>-|4>
  double lambda_c2 = 0.0;  // |4>-|5>
  double d13 = 0.0;        // probe dipole moment, C m

  // 87Rb: 5S1/2 F=1,2 / 5P1/2 F=1,2 / 7S1/2 F=2.
  static AtomSpecies rubidium87();

  // Throws DomainError on a negative rate, non-positive wavelength or mass.
  void validate() const;

  double k_p() const { return 1.0 / lambda_p; }
  double k_a() const { return 1.0 / lambda_a; }
  double k_c1() const { return 1.0 / lambda_c1; }
  double k_c2() const { return 1.0 / lambda_c2; }
};

struct EnsembleConfig {
  double temperature = 300.0;  // K
  double density = 2.0e18;     // m^-3
  double length = 0.01;        // m

  void validate() const;
};

// v_p = sqrt(2 k_B T / M).
double most_probable_speed(const AtomSpecies& species, double temperature);

// Doppler half width sqrt(ln 2) v_p / lambda, in Hz.
double doppler_half_width(double lambda, double most_probable_speed);

// Reads a species description:
//
//   [species]
//   name = Rb87
//   mass = 86.909180527 u
//   gamma31 = 5.75 MHz
//   lambda_p = 795.0 nm
//   d13 = 2.537e-29 C*m
//   ...
//
// Every field is required and must carry a unit. Throws ConfigError.
AtomSpecies read_species(std::istream& in);
AtomSpecies load_species(const std::filesystem::path& path);

// Resolves "rb87" (built in) or a path to a species file.
AtomSpecies species_by_name(const std::string& name_or_path);

}  // namespace nrt
