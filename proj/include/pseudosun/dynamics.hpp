#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pseudosun/grid.hpp"
#include "pseudosun/pdc.hpp"
#include "pseudosun/trajectory.hpp"

namespace pseudosun {

/// One optically allowed excited state: transition energy from the ground
/// state and a real transition dipole.
struct Level {
  double energy_cm1;
  double dipole;
};

struct MolecularSystem {
  std::vector<Level> levels;

  /// At least one level, all energies positive and finite dipoles.
  void validate() const;

  Eigen::Index size() const { return static_cast<Eigen::Index>(levels.size()); }
  Eigen::VectorXd dipoles() const;
  Eigen::VectorXd energies() const;
};

/// Reference frequency of the field amplitude when none is given; it only
/// sets the overall scale of raw trajectories.
inline constexpr double kUnitAmplitudeReference = 1.0;

/// Frequency grid used for unconditional dynamics unless configured otherwise.
inline FrequencyGrid default_dynamics_grid() { return {1000.0, 25000.0, 8192}; }

/// Trapezoid weights over angular frequency multiplied by A(omega)^2 n(omega),
/// i.e. the measure behind every omega-integral of the first-order
/// correlation function.
Eigen::VectorXd spectral_weights(const PhotonSpectrum& spectrum,
                                 double amplitude_reference_cm1 = kUnitAmplitudeReference);

/// G(t2, t1) = int d omega exp(i omega (t2 - t1)) A(omega)^2 n(omega).
std::complex<double> correlation_cw(double t2_fs, double t1_fs, const PhotonSpectrum& spectrum,
                                    double amplitude_reference_cm1 = kUnitAmplitudeReference);

/// Excited-state density matrix under stationary illumination switched on
/// at t = 0.
///
/// The double time integral over G(t2, t1) is done in closed form per
/// frequency: with J_c(omega, t) = int_0^t exp(i (omega - omega_c) tau) d tau,
///   rho_ab(t) = mu_a mu_b exp(-i omega_ab t) int d omega A^2 n J_b J_a^*
///             = mu_a mu_b t^2 exp(-i omega_ab t / 2)
///               int d omega A^2 n sinc((omega - omega_a) t/2) sinc((omega - omega_b) t/2).
/// Each time point is independent of the others.
DensityTrajectory evolve_unconditional(const MolecularSystem& mol, const PhotonSpectrum& spectrum,
                                       const TimeGrid& times,
                                       double amplitude_reference_cm1 = kUnitAmplitudeReference);

/// evolve_unconditional with the black-body occupation at temperature t.
DensityTrajectory evolve_under_blackbody(const MolecularSystem& mol, const ThermalParams& t,
                                         const FrequencyGrid& grid, const TimeGrid& times,
                                         double amplitude_reference_cm1 = kUnitAmplitudeReference);

}  // namespace pseudosun
