#include "pseudosun/heralded.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "pseudosun/errors.hpp"
#include "pseudosun/quadrature.hpp"
#include "pseudosun/units.hpp"

namespace pseudosun {

std::string_view to_string(FieldMethod m) {
  switch (m) {
    case FieldMethod::ExactQuadrature: return "exact_quadrature";
    case FieldMethod::RectApprox: return "rect_approx";
  }
  return "?";
}

std::optional<FieldMethod> parse_field_method(std::string_view name) {
  for (FieldMethod m : {FieldMethod::ExactQuadrature, FieldMethod::RectApprox})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

FrequencyGrid default_field_grid(const PdcParams& p, double max_delay_fs) {
  p.validate();
  const double lobe = p.lobe_width_cm1();
  const double lo = std::max(0.0, p.signal_center_cm1 - kFieldLobes * lobe);
  const double hi = p.signal_center_cm1 + kFieldLobes * lobe;
  double spacing = lobe / kPointsPerLobe;
  if (max_delay_fs > 0.0)
    spacing = std::min(spacing, 1.0 / (kPointsPerDelayCycle * units::kSpeedOfLight * max_delay_fs));
  const auto count = static_cast<Eigen::Index>(std::ceil((hi - lo) / spacing)) + 1;
  return {lo, hi, count};
}

FrequencyGrid default_field_grid(const PdcParams& p, const TimeGrid& times, double herald_time_fs) {
  return default_field_grid(
      p, std::max(std::abs(times.min() - herald_time_fs), std::abs(times.max() - herald_time_fs)));
}

namespace {

constexpr int kReanchorEvery = 64;
// Relative distance from the rect edge that still counts as "on" the edge.
constexpr double kEdgeTolerance = 1e-9;

Eigen::VectorXcd exact_field(const TimeGrid& times, double herald_time_fs, const PdcParams& p,
                             const FrequencyGrid& grid) {
  const Eigen::VectorXd w = grid.trapezoid_weights() * units::angular(1.0);
  const double first_lag = times.min() - herald_time_fs;
  const double dt = times.step();
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(times.count());
  for (Eigen::Index k = 0; k < grid.count(); ++k) {
    const double nu = grid[k];
    const double amp = w[k] * vacuum_amplitude(nu, p.signal_center_cm1) *
                       std::tanh(squeeze_profile(nu, p));
    if (amp == 0.0) continue;
    const std::complex<double> advance = std::polar(1.0, -units::phase(nu, dt));
    std::complex<double> rot;
    for (Eigen::Index j = 0; j < times.count(); ++j) {
      // Recurrence in time, re-anchored to an exact phase periodically.
      if (j % kReanchorEvery == 0)
        rot = std::polar(amp, -units::phase(nu, first_lag + static_cast<double>(j) * dt));
      else
        rot *= advance;
      e[j] += rot;
    }
  }
  return e;
}

Eigen::VectorXcd rect_field(const TimeGrid& times, double herald_time_fs, const PdcParams& p) {
  const double te = p.entanglement_time_fs;
  // B A(omega_s) (2 pi / T_e); the Fourier pair of B sinc((omega - omega_s) T_e / 2).
  const double height = p.gain * units::kTwoPi / te;
  Eigen::VectorXcd e(times.count());
  for (Eigen::Index j = 0; j < times.count(); ++j) {
    const double lag = times[j] - herald_time_fs;
    const double x = std::abs(lag / te);
    double window = 0.0;
    if (std::abs(x - 0.5) <= kEdgeTolerance)
      window = 0.5;
    else if (x < 0.5)
      window = 1.0;
    e[j] = window == 0.0 ? std::complex<double>(0.0)
                         : std::polar(height * window, -units::phase(p.signal_center_cm1, lag));
  }
  return e;
}

// phi_a(t_j) for every level (rows) and time (columns); zero before the turn-on.
Eigen::MatrixXcd heralded_amplitudes(const MolecularSystem& mol, const HeraldedField& field) {
  const TimeGrid& times = field.times;
  const Eigen::Index n = mol.size();
  const Eigen::Index count = times.count();
  // First grid point at or after the turn-on.
  const double offset = (field.turn_on_fs() - times.min()) / times.step();
  const auto first = std::min<Eigen::Index>(
      count, static_cast<Eigen::Index>(std::max(0.0, std::ceil(offset - kEdgeTolerance))));
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(n, count);
  if (count - first < 2) return phi;
  Eigen::VectorXcd integrand(count - first);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double energy = mol.levels[static_cast<std::size_t>(a)].energy_cm1;
    const double mu = mol.levels[static_cast<std::size_t>(a)].dipole;
    for (Eigen::Index j = first; j < count; ++j)
      integrand[j - first] = std::polar(1.0, units::phase(energy, times[j])) * field.amplitudes[j];
    const Eigen::VectorXcd accumulated = cumulative_trapezoid(integrand, times.step());
    for (Eigen::Index j = first; j < count; ++j)
      phi(a, j) = mu * std::polar(1.0, -units::phase(energy, times[j])) * accumulated[j - first];
  }
  return phi;
}

void check_turn_on(const TimeGrid& times) {
  if (times.min() < 0.0)
    throw InvalidInputError("light is switched on at t = 0; time grid starts at " +
                            std::to_string(times.min()) + " fs");
}

// Herald offsets in whole time steps relative to times.min().
std::vector<long> herald_offsets(const TimeGrid& times, const PdcParams& p, int samples,
                                 HeraldSampling sampling, std::uint64_t seed) {
  p.validate();
  if (samples < 1) throw InvalidInputError("herald_samples must be at least 1");
  const double dt = times.step();
  const long pad = static_cast<long>(std::ceil(p.entanglement_time_fs / dt - 1e-9));
  const long first = -pad;
  const long span = (times.count() - 1) + 2 * pad;
  std::vector<long> offsets;
  offsets.reserve(static_cast<std::size_t>(samples));
  if (sampling == HeraldSampling::Uniform) {
    if (samples == 1) {
      offsets.push_back(first + span / 2);
    } else {
      const long stride = (span + samples - 2) / (samples - 1);
      for (int k = 0; k < samples; ++k) offsets.push_back(first + k * stride);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(0, span);
    for (int k = 0; k < samples; ++k) offsets.push_back(first + pick(rng));
  }
  return offsets;
}

}  // namespace

double HeraldedField::turn_on_fs() const {
  return std::max(times.min(), herald_time_fs - 0.5 * entanglement_time_fs);
}

HeraldedField heralded_field(const TimeGrid& times, double herald_time_fs, const PdcParams& p,
                             const FrequencyGrid& grid, FieldMethod method) {
  p.validate();
  if (method == FieldMethod::ExactQuadrature)
    return {times, herald_time_fs, exact_field(times, herald_time_fs, p, grid), method,
            p.entanglement_time_fs};
  return {times, herald_time_fs, rect_field(times, herald_time_fs, p), method,
          p.entanglement_time_fs};
}

HeraldedTrajectory evolve_heralded(const MolecularSystem& mol, const HeraldedField& field) {
  mol.validate();
  check_turn_on(field.times);
  if (field.amplitudes.size() != field.times.count())
    throw InvalidGridError("field samples do not match the time grid");
  const Eigen::MatrixXcd phi = heralded_amplitudes(mol, field);
  DensityTrajectory traj{field.times, {}, Normalization::Raw};
  traj.matrices.reserve(static_cast<std::size_t>(field.times.count()));
  for (Eigen::Index j = 0; j < phi.cols(); ++j)
    traj.matrices.push_back(phi.col(j) * phi.col(j).adjoint());
  return {std::move(traj), field.herald_time_fs};
}

Eigen::MatrixXcd long_time_closed_form(const MolecularSystem& mol, const PdcParams& p, double t_fs,
                                       double herald_time_fs) {
  mol.validate();
  p.validate();
  if (!(t_fs > herald_time_fs + 0.5 * p.entanglement_time_fs))
    throw PreconditionError("long-time form needs t > t_i + T_e/2");
  const Eigen::Index n = mol.size();
  Eigen::VectorXd amp(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Level& l = mol.levels[static_cast<std::size_t>(a)];
    amp[a] = l.dipole * sinc(std::numbers::pi * units::kSpeedOfLight *
                             (l.energy_cm1 - p.signal_center_cm1) * p.entanglement_time_fs);
  }
  Eigen::MatrixXcd rho(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const double w_ab = mol.levels[static_cast<std::size_t>(a)].energy_cm1 -
                          mol.levels[static_cast<std::size_t>(b)].energy_cm1;
      rho(a, b) = amp[a] * amp[b] * std::polar(1.0, -units::phase(w_ab, t_fs - herald_time_fs));
    }
  return normalize_max_diag(rho);
}

Eigen::MatrixXcd impulsive_limit(const MolecularSystem& mol, double t_fs, double herald_time_fs) {
  mol.validate();
  if (t_fs < herald_time_fs) throw PreconditionError("impulsive limit needs t >= t_i");
  const Eigen::Index n = mol.size();
  Eigen::MatrixXcd rho(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const Level& la = mol.levels[static_cast<std::size_t>(a)];
      const Level& lb = mol.levels[static_cast<std::size_t>(b)];
      rho(a, b) = la.dipole * lb.dipole *
                  std::polar(1.0, -units::phase(la.energy_cm1 - lb.energy_cm1,
                                                t_fs - herald_time_fs));
    }
  return normalize_max_diag(rho);
}

std::vector<double> herald_schedule(const TimeGrid& times, const PdcParams& p, int samples,
                                    HeraldSampling sampling, std::uint64_t seed) {
  std::vector<double> out;
  for (long off : herald_offsets(times, p, samples, sampling, seed))
    out.push_back(times.min() + static_cast<double>(off) * times.step());
  return out;
}

double herald_max_delay(const TimeGrid& times, const PdcParams& p, int samples,
                        HeraldSampling sampling, std::uint64_t seed) {
  double delay = 0.0;
  for (double ti : herald_schedule(times, p, samples, sampling, seed))
    delay = std::max({delay, std::abs(times.min() - ti), std::abs(times.max() - ti)});
  return delay;
}

DensityTrajectory average_over_heralds(const MolecularSystem& mol, const PdcParams& p,
                                       const FrequencyGrid& grid, const TimeGrid& times,
                                       int herald_samples, const HeraldAveraging& options) {
  mol.validate();
  check_turn_on(times);
  const std::vector<long> offsets =
      herald_offsets(times, p, herald_samples, options.sampling, options.seed);
  const long last = times.count() - 1;
  const auto [lo_it, hi_it] = std::minmax_element(offsets.begin(), offsets.end());
  const long lag_lo = -*hi_it;
  const long lag_hi = last - *lo_it;
  const double dt = times.step();

  // The field only depends on t - t_i, so one herald at t_i = 0 evaluated on
  // every lag the schedule needs serves all of them.
  const TimeGrid lags(static_cast<double>(lag_lo) * dt, static_cast<double>(lag_hi) * dt,
                      lag_hi - lag_lo + 1);
  const HeraldedField base = heralded_field(lags, 0.0, p, grid, options.method);

  const Eigen::Index n = mol.size();
  std::vector<Eigen::MatrixXcd> sum(static_cast<std::size_t>(times.count()),
                                    Eigen::MatrixXcd::Zero(n, n));
  for (long off : offsets) {
    HeraldedField field{times, times.min() + static_cast<double>(off) * dt,
                        base.amplitudes.segment(-off - lag_lo, times.count()), options.method,
                        p.entanglement_time_fs};
    const Eigen::MatrixXcd phi = heralded_amplitudes(mol, field);
    for (Eigen::Index j = 0; j < times.count(); ++j)
      sum[static_cast<std::size_t>(j)].noalias() += phi.col(j) * phi.col(j).adjoint();
  }
  DensityTrajectory traj{times, std::move(sum), Normalization::Raw};
  for (auto& m : traj.matrices) m /= static_cast<double>(herald_samples);
  return traj;
}

CoincidenceSignal coincidence_signal(const MolecularSystem& mol, const HeraldedTrajectory& heralded,
                                     const PdcParams& p) {
  mol.validate();
  p.validate();
  const DensityTrajectory& traj = heralded.trajectory;
  if (traj.levels() != mol.size())
    throw InvalidInputError("trajectory dimension does not match the molecule");
  const Eigen::VectorXcd mu = mol.dipoles().cast<std::complex<double>>();
  CoincidenceSignal out{traj.times, heralded.herald_time_fs,
                        Eigen::VectorXd(static_cast<Eigen::Index>(traj.matrices.size())), 0.0};
  for (std::size_t j = 0; j < traj.matrices.size(); ++j) {
    const std::complex<double> s = mu.dot(traj.matrices[j] * mu);
    const double ratio = s.real() == 0.0 ? (s.imag() == 0.0 ? 0.0 : INFINITY)
                                         : std::abs(s.imag() / s.real());
    out.max_imaginary_ratio = std::max(out.max_imaginary_ratio, ratio);
    out.values[static_cast<Eigen::Index>(j)] = s.real();
  }
  if (out.max_imaginary_ratio > 1e-10)
    throw NumericalError("coincidence signal has a non-negligible imaginary part");
  return out;
}

}  // namespace pseudosun
