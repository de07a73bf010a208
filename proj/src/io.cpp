#include "rgflow/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "rgflow/error.hpp"

namespace rgflow::io {

using nlohmann::json;

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

namespace {

// JSON has no infinities; unbounded values are written as "inf" / "-inf".
json number(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

}  // namespace

json space_json(const SpaceConfig& cfg) {
  return json{{"q", cfg.q},
              {"omega_max", cfg.omega_max},
              {"n", cfg.n},
              {"interp", to_string(cfg.interp)},
              {"dealias_pad", cfg.dealias_pad}};
}

void write_spectra_csv(std::ostream& out, const SampledFunction& f) {
  json header = space_json(f.config());
  header["tag"] = f.tag();
  out << "# " << header.dump() << '\n';
  out << "omega,re_F0,im_F0,re_F1,im_F1,re_F2,im_F2\n";
  const SpaceConfig& cfg = f.config();
  for (int k = 0; k < cfg.n; ++k) {
    out << format_number(cfg.omega(k));
    for (int j = 0; j < 3; ++j) {
      const auto v = f.spectrum(j)[k];
      out << ',' << format_number(v.real()) << ',' << format_number(v.imag());
    }
    out << '\n';
  }
}

SampledFunction read_spectra_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw Error(ErrorKind::Parse, "spectra CSV must start with a '# {json}' header");
  }
  SpaceConfig cfg;
  std::string tag;
  try {
    const json header = json::parse(line.substr(2));
    cfg.q = header.at("q").get<double>();
    cfg.omega_max = header.at("omega_max").get<double>();
    cfg.n = header.at("n").get<int>();
    cfg.interp = interpolation_from_string(header.at("interp").get<std::string>());
    cfg.dealias_pad = header.at("dealias_pad").get<double>();
    tag = header.value("tag", std::string{});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad spectra header: ") + e.what());
  }
  cfg.validate();
  if (!std::getline(in, line) || line != "omega,re_F0,im_F0,re_F1,im_F1,re_F2,im_F2") {
    throw Error(ErrorKind::Parse, "unexpected spectra CSV columns");
  }
  std::array<Eigen::ArrayXcd, 3> spectra{Eigen::ArrayXcd(cfg.n), Eigen::ArrayXcd(cfg.n), Eigen::ArrayXcd(cfg.n)};
  for (int k = 0; k < cfg.n; ++k) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "spectra CSV is truncated");
    std::stringstream row(line);
    std::string cell;
    std::array<double, 7> v{};
    for (double& x : v) {
      if (!std::getline(row, cell, ',')) throw Error(ErrorKind::Parse, "short spectra CSV row");
      // strtod, unlike stod, accepts subnormals
      char* end = nullptr;
      x = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw Error(ErrorKind::Parse, "non-numeric spectra CSV cell '" + cell + "'");
      }
    }
    if (std::abs(v[0] - cfg.omega(k)) > 1e-12 * std::max(1.0, cfg.omega_max)) {
      throw Error(ErrorKind::Parse, "spectra CSV frequency column does not match its header");
    }
    for (int j = 0; j < 3; ++j) spectra[j][k] = {v[1 + 2 * j], v[2 + 2 * j]};
  }
  return SampledFunction(cfg, spectra[0], spectra[1], spectra[2], tag);
}

void write_linear_reports_csv(std::ostream& out, const std::vector<LinearStepReport>& rows) {
  out << "n,L,input_norm,output_norm,contraction_ratio,interp_error\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_number(r.L) << ',' << format_number(r.input_norm) << ','
        << format_number(r.output_norm) << ',' << format_number(r.contraction_ratio) << ','
        << format_number(r.interp_error) << '\n';
  }
}

void write_step_records_csv(std::ostream& out, const std::vector<StepRecord>& rows) {
  out << "n,lambda_n,A_n,delta_A,norm_f,norm_g,picard_iters,rescaled_error\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_number(r.lambda_n) << ',' << format_number(r.A_n) << ','
        << format_number(r.delta_A) << ',' << format_number(r.norm_f) << ',' << format_number(r.norm_g) << ','
        << r.picard_iters << ',' << format_number(r.rescaled_error) << '\n';
  }
}

void write_profile_csv(std::ostream& out, const SampledFunction& rescaled, const SampledFunction& model) {
  if (!(rescaled.config() == model.config())) throw Error(ErrorKind::Domain, "profiles live on different grids");
  out << "omega,re_rescaled,im_rescaled,re_model,im_model\n";
  const SpaceConfig& cfg = model.config();
  for (int k = 0; k < cfg.n; ++k) {
    out << format_number(cfg.omega(k)) << ',' << format_number(rescaled.f0()[k].real()) << ','
        << format_number(rescaled.f0()[k].imag()) << ',' << format_number(model.f0()[k].real()) << ','
        << format_number(model.f0()[k].imag()) << '\n';
  }
}

json trajectory_manifest(const Trajectory& traj, const EvolutionConfig& cfg) {
  return json{{"nt", cfg.nt},
              {"quadrature", to_string(cfg.quadrature)},
              {"tol", cfg.picard_tol},
              {"iterations", traj.picard_iters},
              {"residual", traj.final_residual},
              {"lipschitz_ratio", traj.lipschitz_ratio},
              {"converged", traj.converged},
              {"ball_violation", traj.ball_violation},
              {"times", traj.times}};
}

json orbit_manifest(const Orbit& orbit, const RGConfig& cfg) {
  json steps = json::array();
  for (const StepRecord& r : orbit.records()) {
    steps.push_back(json{{"n", r.n},
                         {"lambda_n", r.lambda_n},
                         {"A_n", r.A_n},
                         {"delta_A", r.delta_A},
                         {"norm_f", r.norm_f},
                         {"norm_g", r.norm_g},
                         {"picard_iters", r.picard_iters},
                         {"rescaled_error", r.rescaled_error}});
  }
  json m{{"L", cfg.L},
         {"n_max", cfg.n_max},
         {"lambda", cfg.lambda},
         {"beta", cfg.beta()},
         {"A_limit", orbit.A_limit},
         {"abs_A_limit", std::abs(orbit.A_limit)},
         {"A_tail", number(orbit.A_tail)},
         {"partial", orbit.partial},
         {"steps", steps}};
  if (orbit.partial) m["failure"] = orbit.failure;
  return m;
}

json constants_json(const TheoryConstants& tc) {
  return json{{"K0", number(tc.kernel.K0)},
              {"K1", number(tc.kernel.K1)},
              {"K2", number(tc.kernel.K2)},
              {"C0", number(tc.kernel.C0)},
              {"C1", number(tc.kernel.C1)},
              {"C2", number(tc.kernel.C2)},
              {"C_q", number(tc.C_q)},
              {"C_dpq", number(tc.C_dpq)},
              {"K_tilde", number(tc.K_tilde)},
              {"K_tilde_measured", number(tc.K_tilde_measured)},
              {"M", number(tc.M)},
              {"N", number(tc.N)},
              {"C_empirical", number(tc.C_empirical)},
              {"C_nl", number(tc.C_nl)},
              {"rho", number(tc.rho)},
              {"Q_0", number(tc.Q_n)},
              {"eps_0", number(tc.eps_n)},
              {"Q_tilde", number(tc.Q_tilde)},
              {"C_tilde", number(tc.C_tilde)},
              {"sigma", number(tc.sigma)},
              {"M_tilde", number(tc.M_tilde)},
              {"D", number(tc.D)},
              {"eps_bar", number(tc.eps_bar)},
              {"L1", number(tc.L1)},
              {"L_delta", number(tc.L_delta)},
              {"ordering_ok", tc.ordering_ok}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void export_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const EvolutionConfig& cfg) {
  std::filesystem::create_directories(dir);
  json files = json::array();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const std::string name = fmt::format("state_{:04d}.csv", i);
    std::ostringstream os;
    write_spectra_csv(os, traj.states[i]);
    write_text(dir / name, os.str());
    files.push_back(name);
  }
  json manifest = trajectory_manifest(traj, cfg);
  manifest["files"] = files;
  write_json(dir / "trajectory.json", manifest);
}

const json& schema() {
  static const json defs = {
      {"A_limit", "asymptotic prefactor: A at the last step plus the geometric tail of Delta A (dimensionless)"},
      {"abs_A_limit", "|A_limit|"},
      {"A_tail", "geometric estimate of sum of |Delta A_k| beyond the last step"},
      {"A_n", "prefactor -i F1_n(0) at step n"},
      {"delta_A", "A_{n+1} - A_n"},
      {"lambda_n", "renormalized coupling L^{-n d_F/d} lambda"},
      {"norm_f", "B_q norm of f_n"},
      {"norm_g", "B_q norm of the remainder g_n = f_n - A_n R^0_{L^n} G_p"},
      {"picard_iters", "Picard iterations used for step n"},
      {"rescaled_error", "B_q norm of f_n - A_limit G_p, i.e. of the rescaled solution at t = L^n minus the limit profile"},
      {"L", "RG scale factor"},
      {"n_max", "number of RG steps"},
      {"lambda", "bare coupling"},
      {"beta", "(p+1)/d, the spatial scaling exponent"},
      {"partial", "true when a step failed and the orbit is incomplete"},
      {"failure", "message of the error that stopped the run"},
      {"steps", "per-step records"},
      {"nt", "time nodes on [1, L]"},
      {"quadrature", "tau-quadrature rule"},
      {"tol", "Picard tolerance in the sup-over-time B_q norm"},
      {"iterations", "Picard iterations"},
      {"residual", "final sup-over-time B_q change between Picard iterates"},
      {"lipschitz_ratio", "last ratio of successive Picard changes"},
      {"converged", "Picard tolerance reached"},
      {"ball_violation", "sup_t ||u - u_f|| exceeded ||f||"},
      {"times", "time nodes"},
      {"files", "per-node spectra CSVs"},
      {"K0", "sup |g|"},
      {"K1", "sup |g'|"},
      {"K2", "sup |g''|"},
      {"C0", "sup (1+|w|^q) w^2 |g|"},
      {"C1", "sup (1+|w|^q) w^2 |g'|"},
      {"C2", "sup (1+|w|^q) w^2 |g''|"},
      {"C_q", "(2 pi)^{-1} integral of (1+|w|^q)^{-1}; sup|u| <= C_q ||u||"},
      {"C_dpq", "closed-form bound on ||G_p||"},
      {"K_tilde", "closed-form uniform bound on ||R^0_{L^n} G_p||"},
      {"K_tilde_measured", "max over n <= 12 of measured ||R^0_{L^n} G_p||"},
      {"M", "fixed-point rate constant multiplying |r/L^{n(p+1)}|^{1/d}"},
      {"N", "fixed-point rate constant multiplying |r/L^{n(p+1)}|^{2/d}"},
      {"C_empirical", "measured contraction constant: ratio * L^beta on the second-derivative profile"},
      {"C_nl", "(2^{q+1}+3) integral of (1+|x|^q)^{-1}"},
      {"rho", "min(r / C_q, 2 pi r / C_nl)"},
      {"Q_0", "nonlinear Lipschitz constant of the step-0 problem"},
      {"eps_0", "smallness threshold of the step-0 problem"},
      {"Q_tilde", "uniform bound on Q_n"},
      {"C_tilde", "uniform bound on 1 + K0 + 2 K1 s_n^{1/d} + K2 s_n^{2/d}"},
      {"sigma", "min(1/(2 Q_tilde), rho / C_tilde)"},
      {"M_tilde", "(L^{(q+1)(p+1)/d} + K_tilde) Q_tilde"},
      {"D", "1 + K_tilde / (1 - L^{-(p+1)(1-delta)/d})"},
      {"eps_bar", "theory smallness threshold for the full RG iteration"},
      {"L1", "scale threshold from the time scale"},
      {"L_delta", "max(L1, [2 C (1 + C_dpq)]^{d/(delta (p+1))})"},
      {"ordering_ok", "eps_bar <= sigma <= eps_0"},
      {"mass_ok", "kernel has unit mass"},
      {"mass_residual", "|g(0) - 1|"},
      {"multiplicativity_ok", "semigroup identity holds on the grid"},
      {"multiplicativity_residual", "max weighted semigroup residual"},
      {"tail_ok", "weighted tails decay at the grid edge"},
      {"tail_ratio", "weighted edge value over weighted sup"},
      {"passed", "all kernel checks passed"},
      {"T", "horizon of the direct solve"},
      {"rel_error", "relative B_q difference between RG composite and rescaled direct solve"},
      {"abs_error", "B_q difference between RG composite and rescaled direct solve"},
      {"norm_rg", "B_q norm of the RG composite"},
      {"A", "prefactor -i F1(0) of the initial data"},
      {"norm_u_T", "B_q norm of u at T on the similarity-adapted grid"},
      {"contraction", "linear step reports for the remainder g_n"},
      {"config", "canonical run configuration"},
      {"scenario", "scenario name"},
      {"artifacts", "files written by the run"},
      {"thresholds", "L0 and L1 of the time scale"},
      {"classification", "relevance class, alpha_c and d_F"},
      {"relevance", "irrelevant (d_F > 0), marginal (d_F = 0) or relevant (d_F < 0)"},
      {"alpha_c", "critical order (d - (p+1)) / (2(p+1))"},
      {"d_F", "scaling dimension (2 alpha + 3)(p+1) - 2(p+1) - d of the nonlinearity"},
      {"L0", "smallest sampled L beyond which |r(L)|/L^{p+1} < 1/[4(p+1)]"},
      {"n", "RG step index"},
      {"report", "scenario results"},
      {"error", "error message when the run failed"},
      {"error_kind", "error kind when the run failed"}};
  return defs;
}

}  // namespace rgflow::io
