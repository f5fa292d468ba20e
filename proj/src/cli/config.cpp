#include "pseudosun/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pseudosun::cli {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LoadedConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  return {std::move(doc), fnv1a64_hex(text)};
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

// Read-once view of a JSON object that remembers which keys were consumed.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config: " + path_ + ": " + msg);
  }

  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError("config: " + at(key) + ": missing required field");
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError("config: " + at(key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("config: " + at(key) + ": must be finite");
    return d;
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  long long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError("config: " + at(key) + ": expected an integer");
    return v.get<long long>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError("config: " + at(key) + ": expected a string");
    return v.get<std::string>();
  }

  Node child(const std::string& key) { return Node(raw(key), at(key)); }

  std::vector<Node> objects(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array() || v.empty())
      throw ConfigError("config: " + at(key) + ": expected a non-empty array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.emplace_back(v[i], at(key) + "[" + std::to_string(i) + "]");
    return out;
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array() || v.empty())
      throw ConfigError("config: " + at(key) + ": expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError("config: " + at(key) + ": expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("config: " + at(it.key()) + ": unknown key");
  }

  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Runs a domain constructor/validator, reporting failures against the node.
template <typename F>
auto checked(const Node& node, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

Node block(const json& doc, const std::string& name) {
  if (!doc.contains(name)) throw ConfigError("config: missing top-level block '" + name + "'");
  return Node(doc.at(name), name);
}

PdcParams read_pdc(Node n) {
  PdcParams p;
  p.pump_cm1 = n.number("pump_cm1");
  p.signal_center_cm1 = n.number("signal_center_cm1");
  p.gain = n.number("gain");
  const bool has_te = n.has("entanglement_time_fs");
  const bool has_crystal = n.has("crystal");
  if (has_te == has_crystal)
    n.fail("give exactly one of 'entanglement_time_fs' or 'crystal'");
  if (has_te) {
    p.entanglement_time_fs = n.number("entanglement_time_fs");
  } else {
    Node c = n.child("crystal");
    CrystalParams crystal{c.number("length_mm"), c.number("group_velocity_pump_mm_per_fs"),
                          c.number("group_velocity_signal_mm_per_fs"),
                          c.number("group_velocity_idler_mm_per_fs")};
    c.finish();
    p.entanglement_time_fs =
        checked(c, [&] { return entanglement_time_from_crystal(crystal).entanglement_fs; });
  }
  n.finish();
  checked(n, [&] {
    p.validate();
    return 0;
  });
  return p;
}

ThermalParams read_thermal(Node n) {
  ThermalParams t{n.number_or("temperature_k", 5777.0)};
  n.finish();
  checked(n, [&] {
    t.validate();
    return 0;
  });
  return t;
}

Eigen::Index read_count(Node& n) {
  const long long count = n.integer("count");
  if (count < 2) n.fail("count must be at least 2");
  return static_cast<Eigen::Index>(count);
}

FrequencyGrid read_frequency_grid(Node n) {
  const double lo = n.number("min_cm1");
  const double hi = n.number("max_cm1");
  const Eigen::Index count = read_count(n);
  n.finish();
  return checked(n, [&] { return FrequencyGrid(lo, hi, count); });
}

TimeGrid read_time_grid(Node n) {
  const double lo = n.number("min_fs");
  const double hi = n.number("max_fs");
  const Eigen::Index count = read_count(n);
  n.finish();
  if (lo < 0.0) n.fail("light is switched on at t = 0, so min_fs must be >= 0");
  return checked(n, [&] { return TimeGrid(lo, hi, count); });
}

MolecularSystem read_molecule(Node n) {
  MolecularSystem mol;
  for (Node& l : n.objects("levels")) {
    mol.levels.push_back({l.number("energy_cm1"), l.number("dipole")});
    l.finish();
  }
  n.finish();
  checked(n, [&] {
    mol.validate();
    return 0;
  });
  return mol;
}

Normalization read_normalization(Node& n, const std::string& key, Normalization fallback) {
  if (!n.has(key)) return fallback;
  const std::string s = n.string(key);
  auto parsed = parse_normalization(s);
  if (!parsed) n.fail("unknown normalization '" + s + "'");
  return *parsed;
}

FieldMethod read_method(Node& n) {
  if (!n.has("method")) return FieldMethod::ExactQuadrature;
  const std::string s = n.string("method");
  auto parsed = parse_field_method(s);
  if (!parsed) n.fail("unknown field method '" + s + "'");
  return *parsed;
}

}  // namespace

SpectrumConfig parse_spectrum(const json& document) {
  Node n = block(document, "spectrum");
  SpectrumConfig c{read_pdc(n.child("source")), read_thermal(n.child("thermal")),
                   read_frequency_grid(n.child("grid")), n.string("output")};
  n.finish();
  return c;
}

FitConfig parse_fit(const json& document) {
  Node n = block(document, "fit");
  FrequencyGrid window = read_frequency_grid(n.child("window"));
  Node target = n.child("target");
  std::variant<ThermalParams, PdcParams> tgt;
  if (target.has("thermal") == target.has("source"))
    target.fail("give exactly one of 'thermal' or 'source'");
  if (target.has("thermal"))
    tgt = read_thermal(target.child("thermal"));
  else
    tgt = read_pdc(target.child("source"));
  target.finish();

  FitProblem problem{window, tgt, {}, read_pdc(n.child("initial")), {}};
  const json& free = n.raw("free_params");
  if (!free.is_array()) n.fail("free_params must be an array");
  if (free.empty()) n.fail("free_params must name at least one parameter");
  for (const auto& f : free) {
    auto p = f.is_string() ? parse_fit_param(f.get<std::string>()) : std::nullopt;
    if (!p) n.fail("unknown free parameter " + f.dump());
    problem.free_params.push_back(*p);
  }
  Node bounds = n.child("bounds");
  for (FitParam p : kAllFitParams) {
    const std::string key(to_string(p));
    if (!bounds.has(key)) continue;
    const json& b = bounds.raw(key);
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      bounds.fail(key + " must be [lo, hi]");
    problem.set_bounds(p, {b[0].get<double>(), b[1].get<double>()});
  }
  bounds.finish();
  checked(n, [&] {
    problem.validate();
    return 0;
  });

  const long long iters = n.has("max_iters") ? n.integer("max_iters") : 2000;
  if (iters < 1) n.fail("max_iters must be at least 1");
  const double tol = n.number_or("tol", 1e-9);
  if (!(tol > 0.0)) n.fail("tol must be positive");
  FitConfig c{std::move(problem), static_cast<std::size_t>(iters), tol, n.string("report"),
              n.string("output")};
  n.finish();
  return c;
}

DynamicsConfig parse_dynamics(const json& document) {
  Node n = block(document, "dynamics");
  DynamicsConfig c{read_molecule(n.child("molecule")),
                   n.has("frequency_grid") ? read_frequency_grid(n.child("frequency_grid"))
                                           : default_dynamics_grid(),
                   read_time_grid(n.child("time_grid")),
                   read_normalization(n, "normalization", Normalization::MaxRepartOffdiag),
                   n.number_or("amplitude_reference_cm1", kUnitAmplitudeReference),
                   {}};
  if (!(c.amplitude_reference_cm1 > 0.0)) n.fail("amplitude_reference_cm1 must be positive");
  for (Node& r : n.objects("runs")) {
    DynamicsRun run{r.string("name"), {}, r.string("output")};
    if (r.has("source") == r.has("thermal")) r.fail("give exactly one of 'source' or 'thermal'");
    if (r.has("source"))
      run.illumination = read_pdc(r.child("source"));
    else
      run.illumination = read_thermal(r.child("thermal"));
    r.finish();
    if (std::holds_alternative<ThermalParams>(run.illumination) && c.frequency_grid.min() <= 0.0)
      r.fail("black-body illumination needs a frequency grid above zero");
    c.runs.push_back(std::move(run));
  }
  n.finish();
  return c;
}

HeraldedConfig parse_heralded(const json& document) {
  Node n = block(document, "heralded");
  HeraldedConfig c{read_molecule(n.child("molecule")),
                   read_pdc(n.child("source")),
                   read_time_grid(n.child("time_grid")),
                   std::nullopt,
                   n.numbers("herald_times_fs"),
                   read_method(n),
                   read_normalization(n, "normalization", Normalization::MaxDiag),
                   n.string("output_prefix"),
                   std::nullopt};
  if (n.has("frequency_grid")) c.frequency_grid = read_frequency_grid(n.child("frequency_grid"));
  if (n.has("average")) {
    Node a = n.child("average");
    const long long samples = a.integer("samples");
    if (samples < 1) a.fail("samples must be at least 1");
    AverageConfig avg{static_cast<int>(samples), HeraldSampling::Uniform, std::nullopt,
                      a.string("output")};
    if (a.has("sampling")) {
      const std::string s = a.string("sampling");
      if (s == "uniform")
        avg.sampling = HeraldSampling::Uniform;
      else if (s == "random")
        avg.sampling = HeraldSampling::Random;
      else
        a.fail("sampling must be 'uniform' or 'random'");
    }
    if (a.has("seed")) {
      const long long seed = a.integer("seed");
      if (seed < 0) a.fail("seed must be non-negative");
      avg.seed = static_cast<std::uint64_t>(seed);
    }
    a.finish();
    c.average = std::move(avg);
  }
  n.finish();
  return c;
}

CoincidenceConfig parse_coincidence(const json& document) {
  Node n = block(document, "coincidence");
  CoincidenceConfig c{read_molecule(n.child("molecule")),
                      read_pdc(n.child("source")),
                      read_time_grid(n.child("time_grid")),
                      std::nullopt,
                      n.number("herald_time_fs"),
                      read_method(n),
                      n.string("output")};
  if (n.has("frequency_grid")) c.frequency_grid = read_frequency_grid(n.child("frequency_grid"));
  n.finish();
  return c;
}

}  // namespace pseudosun::cli
