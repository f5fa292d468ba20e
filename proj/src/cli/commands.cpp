#include "pseudosun/cli/commands.hpp"

#include <cmath>
#include <cstdio>

#include "pseudosun/cli/csv.hpp"
#include "pseudosun/dynamics.hpp"
#include "pseudosun/heralded.hpp"
#include "pseudosun/spectral_fit.hpp"

namespace pseudosun::cli {

namespace {

std::filesystem::path resolve(const RunContext& ctx, const std::string& name) {
  std::filesystem::path p(name);
  return p.is_absolute() ? p : ctx.out_dir / p;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void emit(const CsvTable& table, const std::filesystem::path& path, const std::string& title,
          CommandResult& result) {
  write_atomic(path, table.str());
  std::filesystem::path gp = path;
  gp.replace_extension(".gp");
  write_atomic(gp, gnuplot_script(path, table.columns(), title));
  result.files.push_back(path);
  result.files.push_back(gp);
}

std::vector<std::string> matrix_columns(Eigen::Index n) {
  std::vector<std::string> cols{"t_fs"};
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a; b < n; ++b) {
      const std::string ij = std::to_string(a + 1) + std::to_string(b + 1);
      cols.push_back("re_rho_" + ij);
      cols.push_back("im_rho_" + ij);
    }
  return cols;
}

CsvTable trajectory_table(const DensityTrajectory& traj, OutputHeader header) {
  const Eigen::Index n = traj.levels();
  CsvTable table(std::move(header), matrix_columns(n));
  std::vector<double> row;
  for (std::size_t k = 0; k < traj.matrices.size(); ++k) {
    row.assign(1, traj.times[static_cast<Eigen::Index>(k)]);
    const Eigen::MatrixXcd& m = traj.matrices[k];
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b) {
        row.push_back(m(a, b).real());
        row.push_back(m(a, b).imag());
      }
    table.add_row(row);
  }
  return table;
}

OutputHeader header_for(const std::string& command, const LoadedConfig& config) {
  return {command, config.hash, {}};
}

}  // namespace

CommandResult run_spectrum(const LoadedConfig& config, const RunContext& ctx) {
  const SpectrumConfig c = parse_spectrum(config.document);
  const PhotonSpectrum pdc = mean_photon_number(c.grid, c.source);
  const PhotonSpectrum thermal = thermal_mean(c.grid, c.thermal);

  OutputHeader h = header_for("spectrum", config);
  h.extra.emplace_back("temperature_k", format_double(c.thermal.temperature_k));
  CsvTable table(h, {"omega_cm1", "n_pdc", "n_thermal"});
  for (Eigen::Index k = 0; k < c.grid.count(); ++k)
    table.add_row({c.grid[k], pdc.values()[k], thermal.values()[k]});

  CommandResult result;
  emit(table, resolve(ctx, c.output), "mean photon number", result);
  result.summary = "spectrum: " + std::to_string(table.rows()) + " points";
  return result;
}

CommandResult run_fit(const LoadedConfig& config, const RunContext& ctx) {
  const FitConfig c = parse_fit(config.document);
  const FitResult fit = fit_pdc_to_thermal(c.problem, c.max_iters, c.tol);

  std::string report = header_text(header_for("fit", config));
  report += "converged=" + std::string(fit.converged ? "true" : "false") + "\n";
  report += "iterations=" + std::to_string(fit.iterations) + "\n";
  report += "initial_objective=" + format_double(fit.initial_objective) + "\n";
  report += "objective=" + format_double(fit.objective_value) + "\n";
  for (FitParam p : kAllFitParams)
    report += std::string(to_string(p)) + "=" + format_double(get(fit.params, p)) + "\n";
  report += "objective_trace:\n";
  for (std::size_t i = 0; i < fit.objective_trace.size(); ++i)
    report += std::to_string(i) + " " + format_double(fit.objective_trace[i]) + "\n";

  const PhotonSpectrum target = c.problem.target_spectrum();
  const PhotonSpectrum initial = mean_photon_number(c.problem.window, c.problem.initial);
  const PhotonSpectrum fitted = mean_photon_number(c.problem.window, fit.params);
  CsvTable table(header_for("fit", config), {"omega_cm1", "n_target", "n_initial", "n_fitted"});
  for (Eigen::Index k = 0; k < c.problem.window.count(); ++k)
    table.add_row({c.problem.window[k], target.values()[k], initial.values()[k],
                   fitted.values()[k]});

  CommandResult result;
  const auto report_path = resolve(ctx, c.report);
  write_atomic(report_path, report);
  result.files.push_back(report_path);
  emit(table, resolve(ctx, c.output), "fitted spectrum", result);
  result.summary = "fit: objective " + format_double(fit.initial_objective) + " -> " +
                   format_double(fit.objective_value) + " in " +
                   std::to_string(fit.iterations) + " iterations" +
                   (fit.converged ? "" : " (not converged)");
  return result;
}

CommandResult run_dynamics(const LoadedConfig& config, const RunContext& ctx) {
  const DynamicsConfig c = parse_dynamics(config.document);
  CommandResult result;
  for (const DynamicsRun& run : c.runs) {
    OutputHeader h = header_for("dynamics", config);
    h.extra.emplace_back("run", run.name);
    const auto* p = std::get_if<PdcParams>(&run.illumination);
    if (p) {
      h.extra.emplace_back("source", "pdc");
    } else {
      h.extra.emplace_back("source", "thermal");
      h.extra.emplace_back("temperature_k",
                           format_double(std::get<ThermalParams>(run.illumination).temperature_k));
    }
    const DensityTrajectory raw =
        p ? evolve_unconditional(c.molecule, mean_photon_number(c.frequency_grid, *p), c.time_grid,
                                 c.amplitude_reference_cm1)
          : evolve_under_blackbody(c.molecule, std::get<ThermalParams>(run.illumination),
                                   c.frequency_grid, c.time_grid, c.amplitude_reference_cm1);
    h.extra.emplace_back("normalization", std::string(to_string(c.normalization)));
    const DensityTrajectory traj = normalize_trajectory(raw, c.normalization);
    emit(trajectory_table(traj, h), resolve(ctx, run.output), run.name, result);
  }
  result.summary = "dynamics: " + std::to_string(c.runs.size()) + " trajectories";
  return result;
}

CommandResult run_heralded(const LoadedConfig& config, const RunContext& ctx) {
  const HeraldedConfig c = parse_heralded(config.document);
  CommandResult result;
  for (double ti : c.herald_times_fs) {
    const FrequencyGrid grid =
        c.frequency_grid ? *c.frequency_grid : default_field_grid(c.source, c.time_grid, ti);
    const HeraldedField field = heralded_field(c.time_grid, ti, c.source, grid, c.method);
    const HeraldedTrajectory h = evolve_heralded(c.molecule, field);
    OutputHeader head = header_for("heralded", config);
    head.extra.emplace_back("t_i_fs", format_double(ti));
    head.extra.emplace_back("method", std::string(to_string(c.method)));
    head.extra.emplace_back("normalization", std::string(to_string(c.normalization)));
    const DensityTrajectory traj = normalize_trajectory(h.trajectory, c.normalization);
    emit(trajectory_table(traj, head),
         resolve(ctx, c.output_prefix + "_ti_" + short_number(ti) + ".csv"),
         "heralded, t_i = " + short_number(ti) + " fs", result);
  }
  if (c.average) {
    const AverageConfig& a = *c.average;
    const std::uint64_t seed = ctx.seed ? *ctx.seed : a.seed.value_or(0);
    const FrequencyGrid grid =
        c.frequency_grid
            ? *c.frequency_grid
            : default_field_grid(c.source,
                                 herald_max_delay(c.time_grid, c.source, a.samples, a.sampling, seed));
    const DensityTrajectory avg = average_over_heralds(c.molecule, c.source, grid, c.time_grid,
                                                       a.samples, {c.method, a.sampling, seed});
    OutputHeader head = header_for("heralded", config);
    head.extra.emplace_back("herald_samples", std::to_string(a.samples));
    head.extra.emplace_back("sampling", a.sampling == HeraldSampling::Uniform ? "uniform" : "random");
    head.extra.emplace_back("seed", std::to_string(seed));
    head.extra.emplace_back("method", std::string(to_string(c.method)));
    head.extra.emplace_back("normalization", std::string(to_string(c.normalization)));
    emit(trajectory_table(normalize_trajectory(avg, c.normalization), head),
         resolve(ctx, a.output), "herald average", result);
  }
  result.summary = "heralded: " + std::to_string(c.herald_times_fs.size()) + " herald times" +
                   (c.average ? " + average" : "");
  return result;
}

CommandResult run_coincidence(const LoadedConfig& config, const RunContext& ctx) {
  const CoincidenceConfig c = parse_coincidence(config.document);
  const FrequencyGrid grid = c.frequency_grid
                                 ? *c.frequency_grid
                                 : default_field_grid(c.source, c.time_grid, c.herald_time_fs);
  const HeraldedField field = heralded_field(c.time_grid, c.herald_time_fs, c.source, grid, c.method);
  const CoincidenceSignal s =
      coincidence_signal(c.molecule, evolve_heralded(c.molecule, field), c.source);
  const double peak = s.values.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw CannotNormalizeError("coincidence signal is identically zero");

  OutputHeader h = header_for("coincidence", config);
  h.extra.emplace_back("t_i_fs", format_double(c.herald_time_fs));
  h.extra.emplace_back("method", std::string(to_string(c.method)));
  h.extra.emplace_back("normalization", "max_abs");
  h.extra.emplace_back("max_imaginary_ratio", format_double(s.max_imaginary_ratio));
  CsvTable table(h, {"t_fs", "S"});
  for (Eigen::Index k = 0; k < s.values.size(); ++k)
    table.add_row({s.times[k], s.values[k] / peak});

  CommandResult result;
  emit(table, resolve(ctx, c.output), "coincidence", result);
  result.summary = "coincidence: " + std::to_string(table.rows()) + " points";
  return result;
}

CommandResult run_command(std::string_view command, const LoadedConfig& config,
                          const RunContext& ctx) {
  if (command == "spectrum") return run_spectrum(config, ctx);
  if (command == "fit") return run_fit(config, ctx);
  if (command == "dynamics") return run_dynamics(config, ctx);
  if (command == "heralded") return run_heralded(config, ctx);
  if (command == "coincidence") return run_coincidence(config, ctx);
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const CannotNormalizeError*>(&e))
    return kExitNumerical;
  if (dynamic_cast<const Error*>(&e)) return kExitConfig;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kExitIo;
  return kExitNumerical;
}

int execute(std::string_view command, const std::filesystem::path& config_path,
            const RunContext& ctx, std::ostream& out, std::ostream& err) {
  try {
    const LoadedConfig config = load_config(config_path);
    const CommandResult r = run_command(command, config, ctx);
    out << r.summary << "\n";
    for (const auto& f : r.files) out << "  wrote " << f.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "pseudosun " << command << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace pseudosun::cli
