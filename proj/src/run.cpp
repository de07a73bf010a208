#include "rgflow/run.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "rgflow/diagnostics.hpp"
#include "rgflow/io.hpp"
#include "rgflow/linear_flow.hpp"
#include "rgflow/rg_engine.hpp"

namespace rgflow {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code(ErrorKind kind) noexcept {
  switch (error_class(kind)) {
    case ErrorClass::Hypothesis: return 2;
    case ErrorClass::Numerical: return 3;
    case ErrorClass::Usage: return 1;
  }
  return 1;
}

namespace {

struct Bundle {
  fs::path dir;
  json report = json::object();
  json artifacts = json::array();

  void text(const std::string& name, const std::string& body) {
    io::write_text(dir / name, body);
    artifacts.push_back(name);
  }
  void spectra(const std::string& name, const SampledFunction& f) {
    std::ostringstream os;
    io::write_spectra_csv(os, f);
    text(name, os.str());
  }
};

json classification_json(const RGConfig& rg) {
  const Classification c = classify(rg.nl, rg.ts.p(), rg.kernel.d());
  return json{{"relevance", to_string(c.relevance)}, {"alpha_c", c.alpha_c}, {"d_F", c.d_F}};
}

void scenario_validate_kernel(const RunConfig& cfg, Bundle& b) {
  const KernelSpec kernel = make_kernel(cfg);
  const SpaceConfig space = make_space(cfg);
  const KernelValidation v = validate_kernel(kernel, cfg.q, space.grid(), 1e-12);
  const KernelConstants k = kernel_constants(kernel, cfg.q, scan_grid(40.0, 1e-3));
  b.report = json{{"mass_ok", v.mass_ok},
                  {"mass_residual", v.mass_residual},
                  {"multiplicativity_ok", v.multiplicativity_ok},
                  {"multiplicativity_residual", v.multiplicativity_residual},
                  {"tail_ok", v.tail_ok},
                  {"tail_ratio", v.tail_ratio},
                  {"passed", v.passed()},
                  {"K0", k.K0},
                  {"K1", k.K1},
                  {"K2", k.K2},
                  {"C0", k.C0},
                  {"C1", k.C1},
                  {"C2", k.C2}};
  if (!v.passed()) throw Error(ErrorKind::HypothesisViolation, "kernel failed validation");
}

void emit_orbit(const Orbit& orbit, const RGConfig& rg, Bundle& b) {
  b.report = io::orbit_manifest(orbit, rg);
  b.report["classification"] = classification_json(rg);
  const Thresholds th = rg.ts.thresholds();
  b.report["thresholds"] = json{{"L0", th.L0}, {"L1", th.L1}};
  std::ostringstream steps;
  io::write_step_records_csv(steps, orbit.records());
  b.text("steps.csv", steps.str());
  const RGState& last = orbit.states.back();
  b.spectra("f_final.csv", last.f);
  std::ostringstream profile;
  io::write_profile_csv(profile, last.f, orbit.A_limit * orbit.states.front().reference);
  b.text("profile.csv", profile.str());
}

void throw_if_partial(const Orbit& orbit) {
  if (orbit.partial) throw Error(*orbit.failure_kind, "orbit stopped early: " + orbit.failure);
}

void scenario_run_linear(const RunConfig& cfg, Bundle& b) {
  RGConfig rg = make_rg_config(cfg);
  rg.lambda = 0.0;
  const Orbit orbit = run_flow(make_initial(cfg), rg);
  emit_orbit(orbit, rg, b);
  std::vector<LinearStepReport> rows;
  for (const RGState& s : orbit.states) {
    if (s.n >= rg.n_max || bq_norm(s.g) == 0.0) continue;
    rows.push_back(measure_contraction(s.g, s.n, rg.L, rg.kernel, rg.ts));
  }
  std::ostringstream csv;
  io::write_linear_reports_csv(csv, rows);
  b.text("contraction.csv", csv.str());
  throw_if_partial(orbit);
}

void scenario_run_rg(const RunConfig& cfg, Bundle& b) {
  const RGConfig rg = make_rg_config(cfg);
  const Orbit orbit = run_flow(make_initial(cfg), rg);
  emit_orbit(orbit, rg, b);
  throw_if_partial(orbit);
}

void scenario_run_direct(const RunConfig& cfg, Bundle& b) {
  const RGConfig rg = make_rg_config(cfg);
  const SampledFunction f0 = make_initial(cfg);
  EvolutionConfig evo = rg.evolution;
  evo.nt = scaled_nt(evo.nt, rg.L, cfg.T);
  const SampledFunction u_T = direct_solve(f0, rg.lambda, rg.nl, rg.kernel, rg.ts, cfg.T, evo);
  const double A = moments(f0).prefactor;
  const SampledFunction Gp = make_Gp(rg.kernel, rg.ts.p(), rg.space);
  b.spectra("u_T.csv", u_T);
  b.report = json{{"T", cfg.T},
                  {"A", A},
                  {"norm_u_T", bq_norm(u_T)},
                  {"nt", evo.nt},
                  {"rescaled_error", rescaled_error(u_T, cfg.T, A, Gp, rg.beta())}};
}

void scenario_compare(const RunConfig& cfg, Bundle& b) {
  const RGConfig rg = make_rg_config(cfg);
  const CoherenceReport r = oracle_coherence(make_initial(cfg), rg, cfg.compare_steps);
  b.report = json{{"steps", r.steps},
                  {"T", r.T},
                  {"norm_rg", r.norm_rg},
                  {"abs_error", r.abs_error},
                  {"rel_error", r.rel_error}};
}

void scenario_constants(const RunConfig& cfg, Bundle& b) {
  TheoryInputs in;
  in.kernel = make_kernel(cfg);
  in.ts = make_timescale(cfg);
  in.nl = cfg.nonlinearity == "none" ? Nonlinearity::burgers() : make_nonlinearity(cfg);
  in.space = make_space(cfg);
  in.L = cfg.L;
  in.delta = cfg.delta;
  b.report = io::constants_json(theory_ledger(in));
}

json used_schema(const json& value) {
  json out = json::object();
  const json& defs = io::schema();
  std::function<void(const json&)> walk = [&](const json& v) {
    if (v.is_object()) {
      for (const auto& [key, child] : v.items()) {
        if (defs.contains(key)) out[key] = defs[key];
        walk(child);
      }
    } else if (v.is_array()) {
      for (const json& child : v) walk(child);
    }
  };
  walk(value);
  return out;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  Bundle b;
  b.dir = cfg.out;
  int code = 0;
  json manifest{{"scenario", cfg.scenario}, {"config", to_json(cfg)}};
  try {
    validate(cfg);
    fs::create_directories(b.dir);
    if (cfg.scenario == "validate-kernel") {
      scenario_validate_kernel(cfg, b);
    } else if (cfg.scenario == "run-linear") {
      scenario_run_linear(cfg, b);
    } else if (cfg.scenario == "run-rg") {
      scenario_run_rg(cfg, b);
    } else if (cfg.scenario == "run-direct") {
      scenario_run_direct(cfg, b);
    } else if (cfg.scenario == "compare") {
      scenario_compare(cfg, b);
    } else {
      scenario_constants(cfg, b);
    }
  } catch (const Error& e) {
    code = exit_code(e.kind());
    manifest["error"] = e.what();
    manifest["error_kind"] = to_string(e.kind());
    log << e.what() << '\n';
  } catch (const std::exception& e) {
    code = 3;
    manifest["error"] = e.what();
    manifest["error_kind"] = "internal";
    log << e.what() << '\n';
  }
  manifest["partial"] = code != 0;
  manifest["report"] = b.report;
  manifest["artifacts"] = b.artifacts;
  try {
    io::write_json(b.dir / "manifest.json", manifest);
    io::write_json(b.dir / "schema.json", used_schema(manifest));
  } catch (const std::exception& e) {
    log << "cannot write manifest: " << e.what() << '\n';
    return code == 0 ? 1 : code;
  }
  if (code == 0) log << "wrote " << (b.dir / "manifest.json").string() << '\n';
  return code;
}

}  // namespace rgflow
