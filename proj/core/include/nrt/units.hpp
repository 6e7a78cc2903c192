#pragma once

#include <string>
#include <string_view>

namespace nrt::units {

// Internal convention: every rate, Rabi frequency and detuning is an ordinary
// frequency in Hz. Wavenumbers are 1/lambda so that k*v is directly in Hz.
inline constexpr double kHz = 1.0;
inline constexpr double kKHz = 1e3;
inline constexpr double kMHz = 1e6;
inline constexpr double kGHz = 1e9;
inline constexpr double kNanometre = 1e-9;
inline constexpr double kCentimetre = 1e-2;
inline constexpr double kPerCubicCentimetre = 1e6;  // cm^-3 -> m^-3

enum class Dimension {
  kFrequency,      // Hz
  kLength,         // m
  kTemperature,    // K
  kNumberDensity,  // m^-3
  kAngle,          // degrees
  kMass,           // kg
  kDipole,         // C m
  kDecibel,        // dB
};

std::string_view dimension_name(Dimension dim);

// Parses "<number> <unit>" into SI (degrees for angles). A bare number is
// rejected: physical inputs must carry a unit. Throws ConfigError.
double parse_quantity(std::string_view text, Dimension dim);

// Parses a plain number (no unit allowed). Throws ConfigError.
double parse_number(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace nrt::units
