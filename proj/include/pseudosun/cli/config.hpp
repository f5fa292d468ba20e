#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pseudosun/dynamics.hpp"
#include "pseudosun/errors.hpp"
#include "pseudosun/heralded.hpp"
#include "pseudosun/pdc.hpp"
#include "pseudosun/spectral_fit.hpp"
#include "pseudosun/trajectory.hpp"

namespace pseudosun::cli {

using json = nlohmann::json;

/// Malformed or invalid configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A parsed config file together with the hash recorded in output headers.
struct LoadedConfig {
  json document;
  std::string hash;  // FNV-1a 64 of the file bytes, 16 hex digits
};

LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config_text(const std::string& text);

std::string fnv1a64_hex(std::string_view bytes);

struct SpectrumConfig {
  PdcParams source;
  ThermalParams thermal;
  FrequencyGrid grid;
  std::string output;
};

struct FitConfig {
  FitProblem problem;
  std::size_t max_iters;
  double tol;
  std::string report;
  std::string output;
};

/// One illumination of the dynamics command: a PDC source or a black body.
struct DynamicsRun {
  std::string name;
  std::variant<PdcParams, ThermalParams> illumination;
  std::string output;
};

struct DynamicsConfig {
  MolecularSystem molecule;
  FrequencyGrid frequency_grid;
  TimeGrid time_grid;
  Normalization normalization;
  double amplitude_reference_cm1;
  std::vector<DynamicsRun> runs;
};

struct AverageConfig {
  int samples;
  HeraldSampling sampling;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct HeraldedConfig {
  MolecularSystem molecule;
  PdcParams source;
  TimeGrid time_grid;
  std::optional<FrequencyGrid> frequency_grid;  // default_field_grid when absent
  std::vector<double> herald_times_fs;
  FieldMethod method;
  Normalization normalization;
  std::string output_prefix;
  std::optional<AverageConfig> average;
};

struct CoincidenceConfig {
  MolecularSystem molecule;
  PdcParams source;
  TimeGrid time_grid;
  std::optional<FrequencyGrid> frequency_grid;
  double herald_time_fs;
  FieldMethod method;
  std::string output;
};

// Each parser reads the block of the same name and rejects unknown keys.
SpectrumConfig parse_spectrum(const json& document);
FitConfig parse_fit(const json& document);
DynamicsConfig parse_dynamics(const json& document);
HeraldedConfig parse_heralded(const json& document);
CoincidenceConfig parse_coincidence(const json& document);

}  // namespace pseudosun::cli
