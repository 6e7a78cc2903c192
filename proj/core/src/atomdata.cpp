#include "nrt/atomdata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nrt/errors.hpp"
#include "nrt/units.hpp"

namespace nrt {

AtomSpecies AtomSpecies::rubidium87() {
  AtomSpecies s;
  s.name = "Rb87";
  s.mass = 86.909180527 * PhysicalConstants::amu;
  s.gamma31 = s.gamma32 = s.gamma41 = s.gamma42 = 5.75e6;
  s.gamma53 = s.gamma54 = 0.19e6;
  s.lambda_p = s.lambda_c1 = 795.0e-9;
  s.lambda_a = s.lambda_c2 = 728.7e-9;
  s.d13 = 2.537e-29;
  return s;
}

void AtomSpecies::validate() const {
  if (!(mass > 0.0)) throw DomainError("species mass must be positive");
  for (double g : {gamma31, gamma32, gamma41, gamma42, gamma53, gamma54}) {
    if (!(g >= 0.0)) throw DomainError("species decay rates must be non-negative");
  }
  for (double l : {lambda_p, lambda_a, lambda_c1, lambda_c2}) {
    if (!(l > 0.0)) throw DomainError("species wavelengths must be positive");
  }
  if (!(d13 > 0.0)) throw DomainError("probe dipole moment must be positive");
}

void EnsembleConfig::validate() const {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  if (!(density > 0.0)) throw DomainError("number density must be positive");
  if (!(length > 0.0)) throw DomainError("cell length must be positive");
}

double most_probable_speed(const AtomSpecies& species, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return std::sqrt(2.0 * PhysicalConstants::boltzmann_k * temperature / species.mass);
}

double doppler_half_width(double lambda, double most_probable_speed) {
  if (!(lambda > 0.0)) throw DomainError("wavelength must be positive");
  return std::sqrt(std::numbers::ln2) * most_probable_speed / lambda;
}

AtomSpecies read_species(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("species", e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const auto section = tree.get_child_optional("species");
  if (!section) throw ConfigError("species", "missing [species] section");

  auto quantity = [&](const char* key, units::Dimension dim) {
    const auto raw = section->get_optional<std::string>(key);
    if (!raw) throw ConfigError(std::string("species.") + key, "required field missing");
    try {
      return units::parse_quantity(*raw, dim);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("species.") + key, e.what());
    }
  };

  AtomSpecies s;
  s.name = section->get<std::string>("name", "custom");
  s.mass = quantity("mass", units::Dimension::kMass);
  s.gamma31 = quantity("gamma31", units::Dimension::kFrequency);
  s.gamma32 = quantity("gamma32", units::Dimension::kFrequency);
  s.gamma41 = quantity("gamma41", units::Dimension::kFrequency);
  s.gamma42 = quantity("gamma42", units::Dimension::kFrequency);
  s.gamma53 = quantity("gamma53", units::Dimension::kFrequency);
  s.gamma54 = quantity("gamma54", units::Dimension::kFrequency);
  s.lambda_p = quantity("lambda_p", units::Dimension::kLength);
  s.lambda_a = quantity("lambda_a", units::Dimension::kLength);
  s.lambda_c1 = quantity("lambda_c1", units::Dimension::kLength);
  s.lambda_c2 = quantity("lambda_c2", units::Dimension::kLength);
  s.d13 = quantity("d13", units::Dimension::kDipole);
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError("species", e.what());
  }
  return s;
}

AtomSpecies load_species(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("species", "cannot open species file " + path.string());
  return read_species(in);
}

AtomSpecies species_by_name(const std::string& name_or_path) {
  std::string lowered = name_or_path;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "rb87" || lowered == "87rb") return AtomSpecies::rubidium87();
  return load_species(name_or_path);
}

}  // namespace nrt
