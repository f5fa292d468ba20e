#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pseudosun/errors.hpp"
#include "pseudosun/grid.hpp"
#include "pseudosun/pdc.hpp"

namespace pseudosun {

enum class FitParam { PumpFreq, SignalCenter, EntanglementTime, Gain };

inline constexpr std::array<FitParam, 4> kAllFitParams = {
    FitParam::PumpFreq, FitParam::SignalCenter, FitParam::EntanglementTime, FitParam::Gain};

/// Config/report name of a parameter, e.g. "gain".
std::string_view to_string(FitParam p);
std::optional<FitParam> parse_fit_param(std::string_view name);

double get(const PdcParams& p, FitParam which);
void set(PdcParams& p, FitParam which, double value);

struct Bounds {
  double lo;
  double hi;
};

/// Floor added inside the logarithms of the objective.
inline constexpr double kLogFloor = 1e-12;

/// Emulate a target spectrum over `window` by tuning a subset of PdcParams.
/// The target is either a black body or, for round-trip checks, another
/// PDC source.
struct FitProblem {
  FrequencyGrid window;
  std::variant<ThermalParams, PdcParams> target;
  std::vector<FitParam> free_params;
  PdcParams initial;
  std::array<std::optional<Bounds>, 4> bounds{};

  const std::optional<Bounds>& bounds_of(FitParam p) const {
    return bounds[static_cast<std::size_t>(p)];
  }
  void set_bounds(FitParam p, Bounds b) { bounds[static_cast<std::size_t>(p)] = b; }

  /// Throws InvalidInputError on an empty parameter set, missing or
  /// inverted bounds, an initial point outside the box, a box that would
  /// admit invalid PdcParams, or a window touching zero frequency.
  void validate() const;

  PhotonSpectrum target_spectrum() const;
};

struct FitResult {
  PdcParams params;
  double objective_value;
  std::size_t iterations;
  bool converged;
  double initial_objective;
  std::vector<double> objective_trace;
};

/// Raised when the objective turns non-finite; carries the offending point.
class FitDivergedError : public NumericalError {
 public:
  FitDivergedError(const std::string& what, PdcParams params)
      : NumericalError(what), params_(params) {}
  const PdcParams& params() const { return params_; }

 private:
  PdcParams params_;
};

/// Mean over the window of [log(n + eps) - log(n_target + eps)]^2.
double fit_objective(const PdcParams& p, const FitProblem& problem);

/// Same, against a precomputed target on the problem window.
double fit_objective(const PdcParams& p, const PhotonSpectrum& target);

/// Bounded simplex search over the free parameters. Convergence is declared
/// when the simplex diameter in the normalized box [0,1]^k drops below tol.
FitResult fit_pdc_to_thermal(const FitProblem& problem, std::size_t max_iters, double tol);

}  // namespace pseudosun
