#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgflow/function_space.hpp"
#include "rgflow/kernel.hpp"
#include "rgflow/nonlinear_flow.hpp"
#include "rgflow/rg_engine.hpp"
#include "rgflow/timescale.hpp"

namespace rgflow {

/// Flat run configuration. Every key has a default; see README for the schema.
struct RunConfig {
  std::string scenario = "run-linear";
  // kernel and time scale: c(t) = t^p + sum_k c_lower_coeffs[k] t^{c_lower_exponents[k]}
  std::string kernel = "gauss";
  double p = 0.0;
  std::vector<double> c_lower_coeffs;
  std::vector<double> c_lower_exponents;
  // frequency grid
  double q = 2.0;
  double omega_max = 16.0;
  int n = 1025;
  std::string interp = "spectral";
  double dealias_pad = 2.0;
  // nonlinearity: none | burgers | series (a_{alpha+k} = coeffs[k])
  std::string nonlinearity = "none";
  int alpha = 1;
  std::vector<double> coeffs{1.0};
  double radius = std::numeric_limits<double>::infinity();
  double lambda = 0.0;
  // RG iteration
  double L = 4.0;
  int n_max = 8;
  double delta = 0.2;
  // time evolution
  int nt = 33;
  std::string quadrature = "trapezoid";
  double picard_tol = 1e-12;
  int picard_max = 50;
  // initial data: profile = amplitude G_p + g2_weight (iw)^2 g(w); random = seeded zero-mass mixture
  std::string initial = "profile";
  double amplitude = 1.0;
  double g2_weight = 0.0;
  std::uint64_t seed = 0;
  // run-direct horizon and compare depth
  double T = 16.0;
  int compare_steps = 2;
  std::string out = "rgflow_out";

  bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& scenario_names();

/// Parses flat JSON text. Duplicate keys are a parse error, unknown keys a
/// config error naming the key, and values are validated.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Applies "key=value"; value is read as JSON when it parses, else as a string.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Canonical JSON: all keys, sorted, radius as "inf" when unbounded.
nlohmann::json to_json(const RunConfig& cfg);
std::string canonical_text(const RunConfig& cfg);

/// Checks values and cross-key consistency (q > 3/2 when a nonlinearity is set).
void validate(const RunConfig& cfg);

KernelSpec make_kernel(const RunConfig& cfg);
TimeScale make_timescale(const RunConfig& cfg);
SpaceConfig make_space(const RunConfig& cfg);
Nonlinearity make_nonlinearity(const RunConfig& cfg);
EvolutionConfig make_evolution(const RunConfig& cfg);
RGConfig make_rg_config(const RunConfig& cfg);
/// Initial data per the `initial` key; always zero mass.
SampledFunction make_initial(const RunConfig& cfg);

}  // namespace rgflow
