#include "nrt/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

#include "nrt/errors.hpp"

namespace nrt::units {
namespace {

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  double to_si;
};

constexpr double kAmu = 1.66053906660e-27;

// Offsets are not needed: temperatures are absolute.
constexpr std::array kUnits{
    UnitEntry{"Hz", Dimension::kFrequency, 1.0},
    UnitEntry{"kHz", Dimension::kFrequency, 1e3},
    UnitEntry{"MHz", Dimension::kFrequency, 1e6},
    UnitEntry{"GHz", Dimension::kFrequency, 1e9},
    UnitEntry{"m", Dimension::kLength, 1.0},
    UnitEntry{"cm", Dimension::kLength, 1e-2},
    UnitEntry{"mm", Dimension::kLength, 1e-3},
    UnitEntry{"um", Dimension::kLength, 1e-6},
    UnitEntry{"nm", Dimension::kLength, 1e-9},
    UnitEntry{"K", Dimension::kTemperature, 1.0},
    UnitEntry{"mK", Dimension::kTemperature, 1e-3},
    UnitEntry{"uK", Dimension::kTemperature, 1e-6},
    UnitEntry{"m^-3", Dimension::kNumberDensity, 1.0},
    UnitEntry{"cm^-3", Dimension::kNumberDensity, 1e6},
    UnitEntry{"deg", Dimension::kAngle, 1.0},
    UnitEntry{"kg", Dimension::kMass, 1.0},
    UnitEntry{"u", Dimension::kMass, kAmu},
    UnitEntry{"amu", Dimension::kMass, kAmu},
    UnitEntry{"C*m", Dimension::kDipole, 1.0},
    UnitEntry{"Cm", Dimension::kDipole, 1.0},
    UnitEntry{"dB", Dimension::kDecibel, 1.0},
};

}  // namespace

std::string_view dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::kFrequency: return "frequency";
    case Dimension::kLength: return "length";
    case Dimension::kTemperature: return "temperature";
    case Dimension::kNumberDensity: return "number density";
    case Dimension::kAngle: return "angle";
    case Dimension::kMass: return "mass";
    case Dimension::kDipole: return "dipole moment";
    case Dimension::kDecibel: return "decibel";
  }
  return "unknown";
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

namespace {

std::pair<double, std::string_view> split_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr == text.data()) {
    throw ConfigError("", "expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ConfigError("", "non-finite value '" + std::string(text) + "'");
  }
  return {value, trim(text.substr(static_cast<std::size_t>(ptr - text.data())))};
}

}  // namespace

double parse_number(std::string_view text) {
  const auto [value, rest] = split_number(text);
  if (!rest.empty()) {
    throw ConfigError("", "unexpected trailing text '" + std::string(rest) + "'");
  }
  return value;
}

double parse_quantity(std::string_view text, Dimension dim) {
  const auto [value, unit] = split_number(text);
  if (unit.empty()) {
    throw ConfigError("", "missing unit for " + std::string(dimension_name(dim)) + " '" +
                              std::string(trim(text)) + "'");
  }
  for (const auto& entry : kUnits) {
    if (entry.symbol == unit) {
      if (entry.dim != dim) {
        throw ConfigError("", "unit '" + std::string(unit) + "' is not a " +
                                  std::string(dimension_name(dim)) + " unit");
      }
      return value * entry.to_si;
    }
  }
  throw ConfigError("", "unknown unit '" + std::string(unit) + "'");
}

}  // namespace nrt::units
