#include "pseudosun/spectral_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <type_traits>
#include <utility>

#include "pseudosun/simplex.hpp"

namespace pseudosun {

std::string_view to_string(FitParam p) {
  switch (p) {
    case FitParam::PumpFreq: return "pump_cm1";
    case FitParam::SignalCenter: return "signal_center_cm1";
    case FitParam::EntanglementTime: return "entanglement_time_fs";
    case FitParam::Gain: return "gain";
  }
  return "?";
}

std::optional<FitParam> parse_fit_param(std::string_view name) {
  for (FitParam p : kAllFitParams)
    if (to_string(p) == name) return p;
  return std::nullopt;
}

double get(const PdcParams& p, FitParam which) {
  switch (which) {
    case FitParam::PumpFreq: return p.pump_cm1;
    case FitParam::SignalCenter: return p.signal_center_cm1;
    case FitParam::EntanglementTime: return p.entanglement_time_fs;
    case FitParam::Gain: return p.gain;
  }
  return 0.0;
}

void set(PdcParams& p, FitParam which, double value) {
  switch (which) {
    case FitParam::PumpFreq: p.pump_cm1 = value; break;
    case FitParam::SignalCenter: p.signal_center_cm1 = value; break;
    case FitParam::EntanglementTime: p.entanglement_time_fs = value; break;
    case FitParam::Gain: p.gain = value; break;
  }
}

namespace {

// Range a parameter may take inside its box (its fixed value if not free).
Bounds span_of(const FitProblem& problem, FitParam p) {
  for (FitParam f : problem.free_params)
    if (f == p) return *problem.bounds_of(p);
  const double v = get(problem.initial, p);
  return {v, v};
}

}  // namespace

void FitProblem::validate() const {
  if (window.min() <= 0.0) throw InvalidInputError("fit window must lie at positive frequencies");
  if (free_params.empty()) throw InvalidInputError("fit needs at least one free parameter");
  initial.validate();
  std::visit([](const auto& t) { t.validate(); }, target);
  for (std::size_t i = 0; i < free_params.size(); ++i) {
    const FitParam p = free_params[i];
    for (std::size_t j = 0; j < i; ++j)
      if (free_params[j] == p)
        throw InvalidInputError("duplicate free parameter " + std::string(to_string(p)));
    const auto& b = bounds_of(p);
    if (!b) throw InvalidInputError("missing bounds for " + std::string(to_string(p)));
    if (!(b->lo < b->hi))
      throw InvalidInputError("bounds for " + std::string(to_string(p)) + " must have lo < hi");
    const double v = get(initial, p);
    if (v < b->lo || v > b->hi)
      throw InvalidInputError("initial " + std::string(to_string(p)) + " lies outside its bounds");
  }
  // Every point of the box must be a valid source.
  const Bounds pump = span_of(*this, FitParam::PumpFreq);
  const Bounds signal = span_of(*this, FitParam::SignalCenter);
  const Bounds te = span_of(*this, FitParam::EntanglementTime);
  const Bounds gain = span_of(*this, FitParam::Gain);
  if (!(signal.lo > 0.0 && signal.hi < pump.lo))
    throw InvalidInputError("bounds admit a signal center outside (0, pump frequency)");
  if (!(te.lo > 0.0)) throw InvalidInputError("bounds admit a non-positive entanglement time");
  if (!(gain.lo > 0.0 && gain.hi < std::numbers::pi / 2.0))
    throw InvalidInputError("bounds admit a gain outside (0, pi/2)");
}

PhotonSpectrum FitProblem::target_spectrum() const {
  return std::visit(
      [this](const auto& t) -> PhotonSpectrum {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ThermalParams>)
          return thermal_mean(window, t);
        else
          return mean_photon_number(window, t);
      },
      target);
}

double fit_objective(const PdcParams& p, const PhotonSpectrum& target) {
  const FrequencyGrid& window = target.grid();
  if (window.min() <= 0.0) throw InvalidInputError("fit window must lie at positive frequencies");
  const Eigen::VectorXd model = mean_photon_number(window, p).values();
  const Eigen::ArrayXd residual = (model.array() + kLogFloor).log() -
                                  (target.values().array() + kLogFloor).log();
  return residual.square().mean();
}

double fit_objective(const PdcParams& p, const FitProblem& problem) {
  if (problem.window.min() <= 0.0)
    throw InvalidInputError("fit window must lie at positive frequencies");
  return fit_objective(p, problem.target_spectrum());
}

FitResult fit_pdc_to_thermal(const FitProblem& problem, std::size_t max_iters, double tol) {
  problem.validate();
  if (max_iters < 1) throw InvalidInputError("max_iters must be at least 1");
  if (!(tol > 0.0)) throw InvalidInputError("tol must be positive");

  const PhotonSpectrum target = problem.target_spectrum();
  const auto k = static_cast<Eigen::Index>(problem.free_params.size());

  auto to_params = [&](const Eigen::VectorXd& unit) {
    PdcParams p = problem.initial;
    for (Eigen::Index i = 0; i < k; ++i) {
      const FitParam which = problem.free_params[static_cast<std::size_t>(i)];
      const Bounds b = *problem.bounds_of(which);
      set(p, which, b.lo + unit[i] * (b.hi - b.lo));
    }
    return p;
  };

  Eigen::VectorXd start(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const FitParam which = problem.free_params[static_cast<std::size_t>(i)];
    const Bounds b = *problem.bounds_of(which);
    start[i] = (get(problem.initial, which) - b.lo) / (b.hi - b.lo);
  }

  const double initial_objective = fit_objective(problem.initial, target);
  if (!std::isfinite(initial_objective))
    throw FitDivergedError("objective is not finite at the initial point", problem.initial);

  BoxedSimplex<double> simplex;
  auto objective = [&](const Eigen::VectorXd& unit) { return fit_objective(to_params(unit), target); };
  auto diverged = [&](const Eigen::VectorXd& unit) {
    throw FitDivergedError("objective is not finite", to_params(unit));
  };
  auto run = simplex.minimize(objective, start, max_iters, tol, diverged);

  // The initial vertex is in the starting simplex, so best <= initial; keep
  // the unprojected initial parameters when nothing improved on them.
  PdcParams best = run.best_value < initial_objective ? to_params(run.best) : problem.initial;
  return {best,
          std::min(run.best_value, initial_objective),
          run.iterations,
          run.converged,
          initial_objective,
          std::move(run.trace)};
}

}  // namespace pseudosun
