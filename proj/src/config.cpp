#include "rgflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rgflow/error.hpp"

namespace rgflow {

using nlohmann::json;

namespace {

struct Field {
  std::function<void(RunConfig&, const json&)> set;
  std::function<json(const RunConfig&)> get;
};

template <typename T>
T as(const json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw Error(ErrorKind::Config, "key '" + key + "' expects a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw Error(ErrorKind::Config, "key '" + key + "' expects an integer");
      }
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw Error(ErrorKind::Config, "key '" + key + "' expects a string");
      return v.get<std::string>();
    } else {
      if (!v.is_array()) throw Error(ErrorKind::Config, "key '" + key + "' expects an array of numbers");
      std::vector<double> out;
      for (const json& x : v) {
        if (!x.is_number()) throw Error(ErrorKind::Config, "key '" + key + "' expects an array of numbers");
        out.push_back(x.get<double>());
      }
      return out;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, "key '" + key + "': " + e.what());
  }
}

template <typename T>
Field field(T RunConfig::*member, const std::string& key) {
  return Field{[member, key](RunConfig& c, const json& v) { c.*member = as<T>(v, key); },
               [member](const RunConfig& c) { return json(c.*member); }};
}

const std::map<std::string, Field>& registry() {
  static const std::map<std::string, Field> fields = [] {
    std::map<std::string, Field> f;
    f["scenario"] = field(&RunConfig::scenario, "scenario");
    f["kernel"] = field(&RunConfig::kernel, "kernel");
    f["p"] = field(&RunConfig::p, "p");
    f["c_lower_coeffs"] = field(&RunConfig::c_lower_coeffs, "c_lower_coeffs");
    f["c_lower_exponents"] = field(&RunConfig::c_lower_exponents, "c_lower_exponents");
    f["q"] = field(&RunConfig::q, "q");
    f["omega_max"] = field(&RunConfig::omega_max, "omega_max");
    f["n"] = field(&RunConfig::n, "n");
    f["interp"] = field(&RunConfig::interp, "interp");
    f["dealias_pad"] = field(&RunConfig::dealias_pad, "dealias_pad");
    f["nonlinearity"] = field(&RunConfig::nonlinearity, "nonlinearity");
    f["alpha"] = field(&RunConfig::alpha, "alpha");
    f["coeffs"] = field(&RunConfig::coeffs, "coeffs");
    f["radius"] = Field{[](RunConfig& c, const json& v) {
                          if (v.is_string() && v.get<std::string>() == "inf") {
                            c.radius = std::numeric_limits<double>::infinity();
                          } else {
                            c.radius = as<double>(v, "radius");
                          }
                        },
                        [](const RunConfig& c) { return std::isinf(c.radius) ? json("inf") : json(c.radius); }};
    f["lambda"] = field(&RunConfig::lambda, "lambda");
    f["L"] = field(&RunConfig::L, "L");
    f["n_max"] = field(&RunConfig::n_max, "n_max");
    f["delta"] = field(&RunConfig::delta, "delta");
    f["nt"] = field(&RunConfig::nt, "nt");
    f["quadrature"] = field(&RunConfig::quadrature, "quadrature");
    f["picard_tol"] = field(&RunConfig::picard_tol, "picard_tol");
    f["picard_max"] = field(&RunConfig::picard_max, "picard_max");
    f["initial"] = field(&RunConfig::initial, "initial");
    f["amplitude"] = field(&RunConfig::amplitude, "amplitude");
    f["g2_weight"] = field(&RunConfig::g2_weight, "g2_weight");
    f["seed"] = field(&RunConfig::seed, "seed");
    f["T"] = field(&RunConfig::T, "T");
    f["compare_steps"] = field(&RunConfig::compare_steps, "compare_steps");
    f["out"] = field(&RunConfig::out, "out");
    return f;
  }();
  return fields;
}

void set_key(RunConfig& cfg, const std::string& key, const json& value) {
  const auto it = registry().find(key);
  if (it == registry().end()) throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
  it->second.set(cfg, value);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"validate-kernel", "run-linear", "run-rg",
                                              "run-direct",      "compare",    "constants"};
  return names;
}

RunConfig parse_config_text(const std::string& text) {
  std::set<std::string> seen;
  json doc;
  try {
    doc = json::parse(text, [&seen](int depth, json::parse_event_t event, json& parsed) {
      if (event == json::parse_event_t::key && depth == 1) {
        const std::string key = parsed.get<std::string>();
        if (!seen.insert(key).second) throw Error(ErrorKind::Parse, "duplicate config key '" + key + "'");
      }
      return true;
    });
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) throw Error(ErrorKind::Parse, "config is flat; key '" + key + "' holds an object");
    set_key(cfg, key, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorKind::Config, "override must read key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_key(cfg, key, value);
}

json to_json(const RunConfig& cfg) {
  json out = json::object();
  for (const auto& [key, f] : registry()) out[key] = f.get(cfg);
  return out;
}

std::string canonical_text(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

void validate(const RunConfig& cfg) {
  if (std::find(scenario_names().begin(), scenario_names().end(), cfg.scenario) == scenario_names().end()) {
    throw Error(ErrorKind::Config, "unknown scenario '" + cfg.scenario + "'");
  }
  (void)make_kernel(cfg);
  (void)make_timescale(cfg);
  make_space(cfg).validate();
  make_evolution(cfg).validate();
  if (cfg.nonlinearity != "none" && cfg.nonlinearity != "burgers" && cfg.nonlinearity != "series") {
    throw Error(ErrorKind::Config, "nonlinearity must be none, burgers or series");
  }
  if (cfg.nonlinearity != "none") {
    make_nonlinearity(cfg).validate();
    if (!(cfg.q > 1.5)) {
      throw Error(ErrorKind::Admissibility, "a nonlinearity requires q > 3/2 (got q = " + std::to_string(cfg.q) + ")");
    }
  }
  if (!(cfg.L > 1.0)) throw Error(ErrorKind::Config, "L must exceed 1");
  if (cfg.n_max < 0) throw Error(ErrorKind::Config, "n_max must be nonnegative");
  if (!(cfg.T >= 1.0)) throw Error(ErrorKind::Config, "T must be at least 1");
  if (cfg.compare_steps < 1) throw Error(ErrorKind::Config, "compare_steps must be at least 1");
  if (cfg.initial != "profile" && cfg.initial != "random") {
    throw Error(ErrorKind::Config, "initial must be profile or random");
  }
  if (cfg.out.empty()) throw Error(ErrorKind::Config, "out must name a directory");
}

KernelSpec make_kernel(const RunConfig& cfg) { return KernelSpec::by_name(cfg.kernel); }

TimeScale make_timescale(const RunConfig& cfg) {
  if (cfg.c_lower_coeffs.size() != cfg.c_lower_exponents.size()) {
    throw Error(ErrorKind::Config, "c_lower_coeffs and c_lower_exponents must have equal length");
  }
  if (cfg.c_lower_coeffs.empty()) return TimeScale::pure_power(cfg.p);
  std::vector<PowerTerm> lower;
  for (std::size_t k = 0; k < cfg.c_lower_coeffs.size(); ++k) {
    lower.push_back({cfg.c_lower_coeffs[k], cfg.c_lower_exponents[k]});
  }
  return TimeScale::power_plus_lower(cfg.p, lower);
}

SpaceConfig make_space(const RunConfig& cfg) {
  SpaceConfig s;
  s.q = cfg.q;
  s.omega_max = cfg.omega_max;
  s.n = cfg.n;
  s.interp = interpolation_from_string(cfg.interp);
  s.dealias_pad = cfg.dealias_pad;
  return s;
}

Nonlinearity make_nonlinearity(const RunConfig& cfg) {
  if (cfg.nonlinearity == "burgers") return Nonlinearity::burgers();
  Nonlinearity nl;
  nl.alpha = cfg.alpha;
  nl.radius = cfg.radius;
  nl.coeffs.clear();
  if (cfg.nonlinearity == "series") {
    for (std::size_t k = 0; k < cfg.coeffs.size(); ++k) {
      if (cfg.coeffs[k] != 0.0) nl.coeffs[cfg.alpha + static_cast<int>(k)] = cfg.coeffs[k];
    }
  }
  return nl;
}

EvolutionConfig make_evolution(const RunConfig& cfg) {
  EvolutionConfig e;
  e.nt = cfg.nt;
  e.quadrature = quadrature_from_string(cfg.quadrature);
  e.picard_tol = cfg.picard_tol;
  e.picard_max = cfg.picard_max;
  return e;
}

RGConfig make_rg_config(const RunConfig& cfg) {
  RGConfig r;
  r.L = cfg.L;
  r.n_max = cfg.n_max;
  r.delta = cfg.delta;
  r.lambda = cfg.nonlinearity == "none" ? 0.0 : cfg.lambda;
  r.kernel = make_kernel(cfg);
  r.ts = make_timescale(cfg);
  r.nl = make_nonlinearity(cfg);
  r.space = make_space(cfg);
  r.evolution = make_evolution(cfg);
  return r;
}

SampledFunction make_initial(const RunConfig& cfg) {
  const KernelSpec kernel = make_kernel(cfg);
  const SpaceConfig space = make_space(cfg);
  if (cfg.initial == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> time(0.5, 2.0);
    SampledFunction f = SampledFunction::zero(space, "random");
    for (int order = 1; order <= 3; ++order) {
      const double c = coeff(rng);
      const double t = time(rng);
      f += c * make_derivative_profile(kernel, order, t, space);
    }
    return (cfg.amplitude * f).with_tag("f_0");
  }
  SampledFunction f = cfg.amplitude * make_Gp(kernel, cfg.p, space);
  if (cfg.g2_weight != 0.0) f += cfg.g2_weight * make_derivative_profile(kernel, 2, 1.0, space);
  return f.with_tag("f_0");
}

}  // namespace rgflow
