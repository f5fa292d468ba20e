#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pseudosun/dynamics.hpp"
#include "pseudosun/grid.hpp"
#include "pseudosun/pdc.hpp"
#include "pseudosun/trajectory.hpp"

namespace pseudosun {

/// How the heralded signal field is evaluated.
///  - ExactQuadrature: frequency integral of A(omega) tanh r(omega).
///  - RectApprox: weak-gain, narrow-band closed form, a carrier under a
///    rectangular window of width T_e centred on the herald time.
enum class FieldMethod { ExactQuadrature, RectApprox };

std::string_view to_string(FieldMethod m);
std::optional<FieldMethod> parse_field_method(std::string_view name);

/// Effective signal field seen by the molecule once the idler has been
/// detected at herald_time_fs. Absolute scale is arbitrary (the herald
/// probability and partition function are dropped) but the two methods
/// share it, so their samples are directly comparable.
struct HeraldedField {
  TimeGrid times;
  double herald_time_fs;
  Eigen::VectorXcd amplitudes;
  FieldMethod method;
  double entanglement_time_fs;

  /// The molecule sees the field from max(times.min, t_i - T_e/2) onward.
  double turn_on_fs() const;
};

/// Conditional excited-state trajectory for one herald time. Every matrix
/// is the rank-1 projector |phi(t)><phi(t)|.
struct HeraldedTrajectory {
  DensityTrajectory trajectory;
  double herald_time_fs;
};

inline constexpr int kFieldLobes = 50;
inline constexpr int kPointsPerLobe = 32;
/// Frequency samples per period of exp(i omega max_delay) in the default grid.
inline constexpr int kPointsPerDelayCycle = 32;

/// Frequency grid for the exact field: omega_s +- 50 sinc lobes clipped at
/// zero, at least 32 points per lobe and 32 per period of the phase
/// e^{i omega max_delay}. The sqrt(omega) amplitude makes the integrand
/// non-smooth at a clipped zero, which is why the second bound is generous.
FrequencyGrid default_field_grid(const PdcParams& p, double max_delay_fs);
FrequencyGrid default_field_grid(const PdcParams& p, const TimeGrid& times, double herald_time_fs);

/// Samples E(t) for a herald at t_i. The rectangular window takes the value
/// 1/2 on its edges.
HeraldedField heralded_field(const TimeGrid& times, double herald_time_fs, const PdcParams& p,
                             const FrequencyGrid& grid, FieldMethod method);

/// phi_a(t) = mu_a int_{t_0}^t exp(-i omega_a (t - tau)) E(tau) d tau on the
/// field's time grid (trapezoid rule), rho = phi phi^H.
HeraldedTrajectory evolve_heralded(const MolecularSystem& mol, const HeraldedField& field);

/// Populations and coherences after the heralded wavepacket has passed,
/// max_diag normalized. Requires t > t_i + T_e/2.
Eigen::MatrixXcd long_time_closed_form(const MolecularSystem& mol, const PdcParams& p, double t_fs,
                                       double herald_time_fs);

/// Delta-function excitation at the herald time, max_diag normalized.
Eigen::MatrixXcd impulsive_limit(const MolecularSystem& mol, double t_fs, double herald_time_fs);

enum class HeraldSampling { Uniform, Random };

struct HeraldAveraging {
  FieldMethod method = FieldMethod::ExactQuadrature;
  HeraldSampling sampling = HeraldSampling::Uniform;
  std::uint64_t seed = 0;
};

/// Herald times used by average_over_heralds. They lie on the lattice of
/// the time grid and cover [t_min - T_e, t_max + T_e] (padded to whole
/// steps): evenly spaced for Uniform, drawn with a seeded generator for
/// Random.
std::vector<double> herald_schedule(const TimeGrid& times, const PdcParams& p, int samples,
                                    HeraldSampling sampling = HeraldSampling::Uniform,
                                    std::uint64_t seed = 0);

/// Largest |t - t_i| that average_over_heralds evaluates the field at.
double herald_max_delay(const TimeGrid& times, const PdcParams& p, int samples,
                        HeraldSampling sampling = HeraldSampling::Uniform, std::uint64_t seed = 0);

/// Equal-weight average of heralded trajectories over herald_schedule().
/// Raw normalization; accumulation runs in schedule order.
DensityTrajectory average_over_heralds(const MolecularSystem& mol, const PdcParams& p,
                                       const FrequencyGrid& grid, const TimeGrid& times,
                                       int herald_samples, const HeraldAveraging& options = {});

/// Two-photon coincidence signal S(t, t_i) = mu^T rho(t; t_i) mu.
struct CoincidenceSignal {
  TimeGrid times;
  double herald_time_fs;
  Eigen::VectorXd values;
  double max_imaginary_ratio;  // max |Im S| / |Re S| of the raw quadratic form
};

/// Throws NumericalError if the quadratic form is not real to 1e-10.
CoincidenceSignal coincidence_signal(const MolecularSystem& mol, const HeraldedTrajectory& heralded,
                                     const PdcParams& p);

}  // namespace pseudosun
