#pragma once

#include <numbers>

// Frequencies are wavenumbers in cm^-1 and times are in fs throughout.
namespace pseudosun::units {

/// Speed of light in cm/fs (exact).
inline constexpr double kSpeedOfLight = 2.99792458e-5;

/// Second radiation constant hc/k_B in cm K.
inline constexpr double kSecondRadiation = 1.4387769;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angular frequency in rad/fs of a wavenumber.
constexpr double angular(double wavenumber) {
  return kTwoPi * kSpeedOfLight * wavenumber;
}

/// Phase omega * t accumulated at a given wavenumber after t fs.
constexpr double phase(double wavenumber, double t) {
  return angular(wavenumber) * t;
}

/// hbar omega / k_B T.
constexpr double thermal_exponent(double wavenumber, double temperature) {
  return kSecondRadiation * wavenumber / temperature;
}

}  // namespace pseudosun::units
