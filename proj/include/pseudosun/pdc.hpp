#pragma once

#include <Eigen/Dense>

#include "pseudosun/errors.hpp"
#include "pseudosun/grid.hpp"

namespace pseudosun {

/// CW-pumped PDC source. Together these fix the squeeze profile r(omega);
/// the idler center is pump_cm1 - signal_center_cm1.
struct PdcParams {
  double pump_cm1 = 0.0;
  double signal_center_cm1 = 0.0;
  double entanglement_time_fs = 0.0;
  double gain = 0.0;

  /// Throws InvalidParamsError unless 0 < signal < pump, T_e > 0 and
  /// 0 < gain < pi/2.
  void validate() const;

  double idler_center_cm1() const { return pump_cm1 - signal_center_cm1; }
  /// Width of one sinc lobe of r(omega) in cm^-1, i.e. 1/(c T_e).
  double lobe_width_cm1() const;

  friend bool operator==(const PdcParams&, const PdcParams&) = default;
};

/// Crystal length and group velocities of the three beams.
struct CrystalParams {
  double length_mm = 0.0;
  double group_velocity_pump = 0.0;  // mm/fs
  double group_velocity_signal = 0.0;
  double group_velocity_idler = 0.0;

  void validate() const;
};

struct EntanglementTimes {
  double signal_fs;
  double idler_fs;
  double entanglement_fs;
};

struct ThermalParams {
  double temperature_k = 5777.0;

  void validate() const;
};

/// Mean photon number per mode sampled on a frequency grid.
class PhotonSpectrum {
 public:
  /// Throws InvalidInputError if sizes differ or a value is negative or
  /// not finite.
  PhotonSpectrum(FrequencyGrid grid, Eigen::VectorXd values);

  const FrequencyGrid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  FrequencyGrid grid_;
  Eigen::VectorXd values_;
};

/// r(omega) = B sinc[(omega - omega_s) T_e / 2].
double squeeze_profile(double omega_cm1, const PdcParams& p);

/// T_sigma = L/v_p - L/v_sigma and T_e = |T_s - T_i|.
EntanglementTimes entanglement_time_from_crystal(const CrystalParams& c);

/// zeta(omega) = tanh^2 r(omega).
double squeeze_fraction(double omega_cm1, const PdcParams& p);

/// Geometric law (1 - zeta) zeta^n for n = 0..n_max.
Eigen::VectorXd geometric_pmf(double zeta, int n_max);

Eigen::VectorXd photon_number_pmf(double omega_cm1, const PdcParams& p, int n_max);

/// sinh^2 r(omega) on every grid point.
PhotonSpectrum mean_photon_number(const FrequencyGrid& grid, const PdcParams& p);

/// Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1). Rejects grids
/// that touch zero frequency.
PhotonSpectrum thermal_mean(const FrequencyGrid& grid, const ThermalParams& t);

/// Field amplitude A(omega) = sqrt(omega / reference), so A(reference) = 1.
double vacuum_amplitude(double omega_cm1, double reference_cm1);

}  // namespace pseudosun
