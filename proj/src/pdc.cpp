#include "pseudosun/pdc.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "pseudosun/errors.hpp"
#include "pseudosun/quadrature.hpp"
#include "pseudosun/units.hpp"

namespace pseudosun {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParamsError(what);
}

}  // namespace

void PdcParams::validate() const {
  require(std::isfinite(pump_cm1) && pump_cm1 > 0.0, "pump frequency must be positive");
  require(std::isfinite(signal_center_cm1) && signal_center_cm1 > 0.0 &&
              signal_center_cm1 < pump_cm1,
          "signal center must lie in (0, pump frequency)");
  require(std::isfinite(entanglement_time_fs) && entanglement_time_fs > 0.0,
          "entanglement time must be positive");
  require(std::isfinite(gain) && gain > 0.0 && gain < std::numbers::pi / 2.0,
          "gain must lie in (0, pi/2)");
}

double PdcParams::lobe_width_cm1() const {
  return 1.0 / (units::kSpeedOfLight * entanglement_time_fs);
}

void CrystalParams::validate() const {
  require(length_mm > 0.0, "crystal length must be positive");
  require(group_velocity_pump > 0.0 && group_velocity_signal > 0.0 && group_velocity_idler > 0.0,
          "group velocities must be positive");
}

void ThermalParams::validate() const {
  require(std::isfinite(temperature_k) && temperature_k > 0.0, "temperature must be positive");
}

PhotonSpectrum::PhotonSpectrum(FrequencyGrid grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.count())
    throw InvalidInputError("spectrum has " + std::to_string(values_.size()) +
                            " values for a grid of " + std::to_string(grid_.count()));
  for (Eigen::Index k = 0; k < values_.size(); ++k)
    if (!std::isfinite(values_[k]) || values_[k] < 0.0)
      throw InvalidInputError("spectrum values must be finite and non-negative");
}

double squeeze_profile(double omega_cm1, const PdcParams& p) {
  // (omega - omega_s) T_e / 2 with omega in rad/fs.
  const double x = std::numbers::pi * units::kSpeedOfLight *
                   (omega_cm1 - p.signal_center_cm1) * p.entanglement_time_fs;
  return p.gain * sinc(x);
}

EntanglementTimes entanglement_time_from_crystal(const CrystalParams& c) {
  c.validate();
  const double pump = c.length_mm / c.group_velocity_pump;
  const double ts = pump - c.length_mm / c.group_velocity_signal;
  const double ti = pump - c.length_mm / c.group_velocity_idler;
  return {ts, ti, std::abs(ts - ti)};
}

double squeeze_fraction(double omega_cm1, const PdcParams& p) {
  const double t = std::tanh(squeeze_profile(omega_cm1, p));
  return t * t;
}

Eigen::VectorXd geometric_pmf(double zeta, int n_max) {
  if (n_max < 0) throw InvalidInputError("n_max must be non-negative");
  if (!(zeta >= 0.0 && zeta < 1.0)) throw InvalidInputError("zeta must lie in [0, 1)");
  Eigen::VectorXd pmf(n_max + 1);
  double term = 1.0 - zeta;
  for (int n = 0; n <= n_max; ++n) {
    pmf[n] = term;
    term *= zeta;
  }
  return pmf;
}

Eigen::VectorXd photon_number_pmf(double omega_cm1, const PdcParams& p, int n_max) {
  p.validate();
  return geometric_pmf(squeeze_fraction(omega_cm1, p), n_max);
}

PhotonSpectrum mean_photon_number(const FrequencyGrid& grid, const PdcParams& p) {
  p.validate();
  Eigen::VectorXd n(grid.count());
  for (Eigen::Index k = 0; k < grid.count(); ++k) {
    const double s = std::sinh(squeeze_profile(grid[k], p));
    n[k] = s * s;
  }
  return {grid, std::move(n)};
}

PhotonSpectrum thermal_mean(const FrequencyGrid& grid, const ThermalParams& t) {
  t.validate();
  if (grid.min() <= 0.0)
    throw InvalidInputError("thermal occupation diverges at zero frequency; grid min must be > 0");
  Eigen::VectorXd n(grid.count());
  for (Eigen::Index k = 0; k < grid.count(); ++k)
    n[k] = 1.0 / std::expm1(units::thermal_exponent(grid[k], t.temperature_k));
  return {grid, std::move(n)};
}

double vacuum_amplitude(double omega_cm1, double reference_cm1) {
  if (omega_cm1 < 0.0) throw InvalidInputError("field amplitude needs a non-negative frequency");
  if (!(reference_cm1 > 0.0)) throw InvalidInputError("amplitude reference must be positive");
  return std::sqrt(omega_cm1 / reference_cm1);
}

}  // namespace pseudosun
