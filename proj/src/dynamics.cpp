#include "pseudosun/dynamics.hpp"

#include <cmath>
#include <string>

#include "pseudosun/errors.hpp"
#include "pseudosun/quadrature.hpp"
#include "pseudosun/units.hpp"

namespace pseudosun {

void MolecularSystem::validate() const {
  if (levels.empty()) throw InvalidParamsError("molecule needs at least one excited level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i].energy_cm1) || levels[i].energy_cm1 <= 0.0)
      throw InvalidParamsError("level " + std::to_string(i + 1) +
                               ": transition energy must be positive");
    if (!std::isfinite(levels[i].dipole))
      throw InvalidParamsError("level " + std::to_string(i + 1) + ": dipole must be finite");
  }
}

Eigen::VectorXd MolecularSystem::dipoles() const {
  Eigen::VectorXd d(size());
  for (Eigen::Index i = 0; i < size(); ++i) d[i] = levels[static_cast<std::size_t>(i)].dipole;
  return d;
}

Eigen::VectorXd MolecularSystem::energies() const {
  Eigen::VectorXd e(size());
  for (Eigen::Index i = 0; i < size(); ++i) e[i] = levels[static_cast<std::size_t>(i)].energy_cm1;
  return e;
}

Eigen::VectorXd spectral_weights(const PhotonSpectrum& spectrum, double amplitude_reference_cm1) {
  const FrequencyGrid& grid = spectrum.grid();
  Eigen::VectorXd w = grid.trapezoid_weights() * units::angular(1.0);
  for (Eigen::Index k = 0; k < grid.count(); ++k) {
    const double a = vacuum_amplitude(grid[k], amplitude_reference_cm1);
    w[k] *= a * a * spectrum.values()[k];
  }
  return w;
}

std::complex<double> correlation_cw(double t2_fs, double t1_fs, const PhotonSpectrum& spectrum,
                                    double amplitude_reference_cm1) {
  const Eigen::VectorXd w = spectral_weights(spectrum, amplitude_reference_cm1);
  const FrequencyGrid& grid = spectrum.grid();
  const double dt = t2_fs - t1_fs;
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < grid.count(); ++k)
    sum += w[k] * std::polar(1.0, units::phase(grid[k], dt));
  return sum;
}

DensityTrajectory evolve_unconditional(const MolecularSystem& mol, const PhotonSpectrum& spectrum,
                                       const TimeGrid& times, double amplitude_reference_cm1) {
  mol.validate();
  if (times.min() < 0.0)
    throw InvalidInputError("light is switched on at t = 0; time grid starts at " +
                            std::to_string(times.min()) + " fs");
  const Eigen::VectorXd w = spectral_weights(spectrum, amplitude_reference_cm1);
  const Eigen::VectorXd omega = spectrum.grid().points() * units::angular(1.0);
  const Eigen::VectorXd levels = mol.energies() * units::angular(1.0);
  const Eigen::VectorXd mu = mol.dipoles();
  const Eigen::Index n = mol.size();
  const Eigen::Index nw = omega.size();

  DensityTrajectory traj{times, {}, Normalization::Raw};
  traj.matrices.reserve(static_cast<std::size_t>(times.count()));
  Eigen::MatrixXd envelope(nw, n);
  for (Eigen::Index k = 0; k < times.count(); ++k) {
    const double t = times[k];
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index j = 0; j < nw; ++j)
        envelope(j, a) = sinc(0.5 * (omega[j] - levels[a]) * t);
    Eigen::MatrixXcd rho(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const Eigen::VectorXd weighted = w.cwiseProduct(envelope.col(a));
      rho(a, a) = mu[a] * mu[a] * t * t * weighted.dot(envelope.col(a));
      for (Eigen::Index b = a + 1; b < n; ++b) {
        const double overlap = mu[a] * mu[b] * t * t * weighted.dot(envelope.col(b));
        rho(a, b) = overlap * std::polar(1.0, -0.5 * (levels[a] - levels[b]) * t);
        rho(b, a) = std::conj(rho(a, b));
      }
    }
    traj.matrices.push_back(std::move(rho));
  }
  return traj;
}

DensityTrajectory evolve_under_blackbody(const MolecularSystem& mol, const ThermalParams& t,
                                         const FrequencyGrid& grid, const TimeGrid& times,
                                         double amplitude_reference_cm1) {
  return evolve_unconditional(mol, thermal_mean(grid, t), times, amplitude_reference_cm1);
}

}  // namespace pseudosun
