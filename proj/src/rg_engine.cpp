#include "rgflow/rg_engine.hpp"

#include <cmath>

#include "rgflow/linear_flow.hpp"

namespace rgflow {

using cplx = std::complex<double>;

const char* to_string(Relevance r) noexcept {
  switch (r) {
    case Relevance::Relevant: return "relevant";
    case Relevance::Marginal: return "marginal";
    case Relevance::Irrelevant: return "irrelevant";
  }
  return "unknown";
}

Classification classify(const Nonlinearity& nl, double p, double d) {
  Classification c;
  c.d_F = (2.0 * nl.alpha + 3.0) * (p + 1.0) - 2.0 * (p + 1.0) - d;
  c.alpha_c = (d - (p + 1.0)) / (2.0 * (p + 1.0));
  if (std::abs(c.d_F) < 1e-12) {
    c.relevance = Relevance::Marginal;
  } else {
    c.relevance = c.d_F > 0.0 ? Relevance::Irrelevant : Relevance::Relevant;
  }
  return c;
}

double lambda_law(double lambda, int n, double L, const Nonlinearity& nl, double p, double d) {
  if (n == 0) return lambda;
  return std::pow(L, -n * classify(nl, p, d).d_F / d) * lambda;
}

Nonlinearity scaled_coeffs(const Nonlinearity& nl, int n, double L, double p, double d) {
  Nonlinearity out = nl;
  for (auto& [j, a] : out.coeffs) {
    if (j != nl.alpha) a *= std::pow(L, 2.0 * n * (p + 1.0) * (nl.alpha - j) / d);
  }
  return out;
}

void RGConfig::validate() const {
  space.validate();
  evolution.validate();
  if (n_max < 0) throw Error(ErrorKind::Config, "n_max must be nonnegative");
  const Thresholds th = ts.thresholds();
  if (!(L > th.L1)) {
    throw Error(ErrorKind::HypothesisViolation,
                "scale L = " + std::to_string(L) + " does not exceed L1 = " + std::to_string(th.L1));
  }
  if (lambda == 0.0) return;
  nl.validate();
  if (!(space.q > 1.5)) {
    throw Error(ErrorKind::Admissibility, "nonlinear runs require q > 3/2");
  }
  const Classification c = classify(nl, ts.p(), kernel.d());
  if (c.relevance != Relevance::Irrelevant) {
    throw Error(ErrorKind::HypothesisViolation,
                std::string("nonlinearity is ") + to_string(c.relevance) + " (d_F = " + std::to_string(c.d_F) +
                    "); only irrelevant nonlinearities are supported");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::Config, "delta must lie in (0, 1)");
  if (!((1.0 - delta) * (ts.p() + 1.0) < c.d_F)) {
    throw Error(ErrorKind::Admissibility, "delta violates (1 - delta)(p + 1) < d_F");
  }
}

RGState initial_state(const SampledFunction& f0, const RGConfig& cfg) {
  if (!(f0.config() == cfg.space)) throw Error(ErrorKind::Domain, "initial data is not on the configured grid");
  const SampledFunction f = project_zero_mass(f0, 1e-12).with_tag("f_0");
  const SampledFunction reference = make_Gp(cfg.kernel, cfg.ts.p(), cfg.space);
  Decomposition dec = decompose_against(f, reference);
  return RGState{0, f, dec.A, std::move(dec.g), reference, lambda_law(cfg.lambda, 0, cfg.L, cfg.nl, cfg.ts.p(), cfg.kernel.d()), {}};
}

RGState rg_step(const RGState& state, const RGConfig& cfg) {
  const int n = state.n;
  const double p = cfg.ts.p();
  const double d = cfg.kernel.d();
  const double a = std::pow(cfg.L, cfg.beta());
  const int c = cfg.space.center();

  StepRecord record;
  record.n = n;
  record.lambda_n = state.lambda_n;
  record.A_n = state.A;
  record.norm_f = bq_norm(state.f);
  record.norm_g = bq_norm(state.g);

  SampledFunction u_L = linear_evolve(state.f, cfg.kernel, cfg.ts, n, cfg.L, cfg.L);
  cplx nu_first(0.0, 0.0);
  if (state.lambda_n != 0.0) {
    const Nonlinearity nl_n = scaled_coeffs(cfg.nl, n, cfg.L, p, d);
    const Trajectory traj =
        picard_solve(state.f, nl_n, state.lambda_n, cfg.kernel, cfg.ts, n, cfg.L, cfg.evolution);
    const SampledFunction nu =
        nu_of(traj, nl_n, state.lambda_n, cfg.kernel, cfg.ts, n, cfg.L, cfg.evolution.quadrature);
    nu_first = nu.f1()[c];
    u_L += nu;
    record.picard_iters = traj.picard_iters;
    record.picard_residual = traj.final_residual;
    record.lipschitz_ratio = traj.lipschitz_ratio;
    record.ball_violation = traj.ball_violation;
  }

  SampledFunction f_next = rg_rescale(u_L, a).function;
  const double norm_next = bq_norm(f_next);
  if (std::abs(f_next.f0()[c]) > 1e-10 * std::max(norm_next, 1e-300)) {
    throw Error(ErrorKind::InternalConsistency, "mass drifted away from zero during the step");
  }
  f_next = f_next.with_center(0.0, f_next.f1()[c]).with_tag("f_" + std::to_string(n + 1));

  SampledFunction reference = rg_rescale(linear_evolve(state.reference, cfg.kernel, cfg.ts, n, cfg.L, cfg.L), a)
                                  .function.with_tag("ref_" + std::to_string(n + 1));
  const double A_next = state.A + (cplx(0.0, -1.0) * nu_first).real();

  SampledFunction g_next = f_next - A_next * reference;
  if (std::abs(g_next.f1()[c]) > 1e-10 * std::max(norm_next, 1e-300)) {
    throw Error(ErrorKind::InternalConsistency, "prefactor update disagrees with the first moment of f");
  }
  g_next = g_next.with_center(0.0, 0.0).with_tag("g_" + std::to_string(n + 1));

  record.delta_A = A_next - state.A;
  std::vector<StepRecord> history = state.history;
  history.push_back(record);
  return RGState{n + 1,
                 std::move(f_next),
                 A_next,
                 std::move(g_next),
                 std::move(reference),
                 lambda_law(cfg.lambda, n + 1, cfg.L, cfg.nl, p, d),
                 std::move(history)};
}

std::vector<StepRecord> Orbit::records() const {
  if (states.empty()) return {};
  std::vector<StepRecord> out = states.back().history;
  const RGState& last = states.back();
  StepRecord tail;
  tail.n = last.n;
  tail.lambda_n = last.lambda_n;
  tail.A_n = last.A;
  tail.norm_f = bq_norm(last.f);
  tail.norm_g = bq_norm(last.g);
  out.push_back(tail);
  const SampledFunction& Gp = states.front().reference;
  for (std::size_t k = 0; k < out.size() && k < states.size(); ++k) {
    out[k].rescaled_error = bq_norm(states[k].f - A_limit * Gp);
  }
  return out;
}

Orbit run_flow(const SampledFunction& f0, const RGConfig& cfg) {
  cfg.validate();
  Orbit orbit;
  orbit.states.push_back(initial_state(f0, cfg));
  try {
    for (int k = 0; k < cfg.n_max; ++k) orbit.states.push_back(rg_step(orbit.states.back(), cfg));
  } catch (const Error& e) {
    orbit.partial = true;
    orbit.failure_kind = e.kind();
    orbit.failure = e.what();
  }

  const std::size_t m = orbit.states.size();
  orbit.A_limit = orbit.states.back().A;
  if (m >= 4) {
    const double d1 = orbit.states[m - 3].A - orbit.states[m - 4].A;
    const double d2 = orbit.states[m - 2].A - orbit.states[m - 3].A;
    const double d3 = orbit.states[m - 1].A - orbit.states[m - 2].A;
    if (d1 != 0.0 && d2 != 0.0 && d3 != 0.0) {
      const double r1 = d2 / d1;
      const double r2 = d3 / d2;
      if (r1 * r2 > 0.0) {
        const double ratio = std::copysign(std::sqrt(r1 * r2), r1);
        if (std::abs(ratio) < 1.0) {
          orbit.A_limit += d3 * ratio / (1.0 - ratio);
          orbit.A_tail = std::abs(d3) * std::abs(ratio) / (1.0 - std::abs(ratio));
        }
      }
    }
  }
  return orbit;
}

}  // namespace rgflow
