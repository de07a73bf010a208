#include "rgflow/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rgflow/error.hpp"
#include "rgflow/linear_flow.hpp"

namespace rgflow {

SampledFunction direct_solve(const SampledFunction& f0, double lambda, const Nonlinearity& nl,
                             const KernelSpec& kernel, const TimeScale& ts, double T, const EvolutionConfig& cfg) {
  if (!(T >= 1.0)) throw Error(ErrorKind::Domain, "horizon T must be at least 1");
  const double beta = (ts.p() + 1.0) / kernel.d();
  const SpaceConfig target = f0.config().narrowed(std::pow(T, beta));
  const SampledFunction f = T == 1.0 ? f0 : dilate(f0, 1.0, AmplitudeLaw{}, target).function;
  if (T == 1.0) return f;
  if (lambda == 0.0) return evolve_by_clock(f, kernel, ts.s(T)).with_tag("u_T");
  const Trajectory traj = picard_solve(f, nl, lambda, kernel, ts, 0, T, cfg);
  return traj.states.back().with_tag("u_T");
}

int scaled_nt(int nt, double L, double T) {
  if (!(L > 1.0) || !(T >= 1.0)) throw Error(ErrorKind::Domain, "scaled_nt needs L > 1 and T >= 1");
  const double intervals = (nt - 1) * (T - 1.0) / (L - 1.0);
  return static_cast<int>(std::ceil(intervals - 1e-9)) + 1;
}

double rescaled_error(const SampledFunction& u_T, double T, double A, const SampledFunction& Gp, double beta) {
  if (!(T >= 1.0)) throw Error(ErrorKind::Domain, "T must be at least 1");
  const double a = std::pow(T, beta);
  const SampledFunction rescaled = dilate(u_T, a, rg_amplitude_law(a), Gp.config()).function;
  return bq_norm(rescaled - A * Gp);
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& e) {
  if (t.size() != e.size()) throw Error(ErrorKind::Domain, "rate fit needs matching series");
  if (t.size() < 3) throw Error(ErrorKind::Domain, "rate fit needs at least 3 points");
  const Eigen::Index m = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd y(m);
  RateFit fit;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double tk = t[static_cast<std::size_t>(k)];
    const double ek = e[static_cast<std::size_t>(k)];
    if (!(ek > 0.0)) throw Error(ErrorKind::Domain, "rate fit needs positive values");
    if (!(tk > 0.0)) throw Error(ErrorKind::Domain, "rate fit needs positive abscissae");
    X(k, 0) = std::log(tk);
    X(k, 1) = 1.0;
    y[k] = std::log(ek);
    fit.points.emplace_back(X(k, 0), y[k]);
  }
  const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);
  fit.slope = beta[0];
  fit.intercept = beta[1];
  fit.residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(m));
  return fit;
}

CoherenceReport oracle_coherence(const SampledFunction& f0, const RGConfig& cfg, int steps) {
  if (steps < 1) throw Error(ErrorKind::Domain, "coherence check needs at least one step");
  cfg.validate();
  RGState state = initial_state(f0, cfg);
  for (int k = 0; k < steps; ++k) state = rg_step(state, cfg);

  CoherenceReport report;
  report.steps = steps;
  report.T = std::pow(cfg.L, steps);
  EvolutionConfig evo = cfg.evolution;
  evo.nt = scaled_nt(cfg.evolution.nt, cfg.L, report.T);
  const SampledFunction u_T = direct_solve(f0, cfg.lambda, cfg.nl, cfg.kernel, cfg.ts, report.T, evo);
  const double a = std::pow(report.T, cfg.beta());
  const SampledFunction rescaled = dilate(u_T, a, rg_amplitude_law(a), cfg.space).function;
  report.norm_rg = bq_norm(state.f);
  report.abs_error = bq_norm(state.f - rescaled);
  report.rel_error = report.abs_error / report.norm_rg;
  return report;
}

namespace {

// sup over the scan of weight(w) * sum_j |G^(j)(w, t)|.
template <typename Weight>
double weighted_kernel_sup(const KernelSpec& kernel, const Eigen::ArrayXd& scan, double t, Weight weight) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < scan.size(); ++k) {
    const double w = scan[k];
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) sum += std::abs(evaluate_kernel_hat(kernel, w, t, j));
    best = std::max(best, weight(w) * sum);
  }
  return best;
}

double scan_sup(const Eigen::ArrayXd& scan, const std::function<double(double)>& fn) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < scan.size(); ++k) best = std::max(best, fn(scan[k]));
  return best;
}

// \int_1^L (s_n(L) - s_n(tau))^{-1/d} dtau, with tau = L - w^m, m = d/(d-1),
// which removes the endpoint singularity.
double clock_singular_integral(const TimeScale& ts, int n, double L, double d) {
  const double m = d / (d - 1.0);
  const double upper = std::pow(L - 1.0, 1.0 / m);
  // Near tau = L, phi ~ c_n(L) (L - tau) with c_n(t) = c(L^n t) / L^{np}.
  const double edge = m * std::pow(ts.c(std::pow(L, n) * L) / std::pow(L, n * ts.p()), -1.0 / d);
  auto integrand = [&](double w) {
    const double tau = std::max(1.0, L - std::pow(w, m));
    const double phi = w > 0.0 ? ts.phi_n(n, L, L, tau) : 0.0;
    if (phi <= 0.0) return edge;
    return m * std::pow(w, m - 1.0) * std::pow(phi, -1.0 / d);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, upper, 15, 1e-10);
}

}  // namespace

TheoryConstants theory_ledger(const TheoryInputs& in) {
  const KernelSpec& kernel = in.kernel;
  const double d = kernel.d();
  const double p = in.ts.p();
  const double q = in.space.q;
  const double L = in.L;
  const double beta = (p + 1.0) / d;
  const Eigen::ArrayXd scan = scan_grid(in.scan_half_width, in.scan_step);

  TheoryConstants tc;
  tc.kernel = kernel_constants(kernel, q, scan);
  const double K0 = tc.kernel.K0, K1 = tc.kernel.K1, K2 = tc.kernel.K2;
  const double C0 = tc.kernel.C0, C1 = tc.kernel.C1, C2 = tc.kernel.C2;
  tc.C_q = sup_bound_constant(q);

  auto wq = [q](double w) { return 1.0 + std::pow(std::abs(w), q); };
  auto g_abs = [&](double y, int j) { return std::abs(evaluate_kernel_hat(kernel, y, 1.0, j)); };

  tc.C_dpq = 2.0 * std::pow(p + 1.0, (q + 1.0) / d) *
             weighted_kernel_sup(kernel, scan, 1.0, [&](double w) { return wq(w) * (1.0 + std::abs(w)); });

  {
    const double t6 = 1.0 / (6.0 * (p + 1.0));
    const double a7 = 7.0 / (3.0 * (p + 1.0));
    const double bracket = 2.0 * K0 + 2.0 * K1 * std::pow(a7, 1.0 / d) + K2 * std::pow(a7, 2.0 / d);
    const Eigen::ArrayXd wide = scan * std::pow(t6, -1.0 / d);
    tc.K_tilde = bracket * weighted_kernel_sup(kernel, wide, t6, [&](double w) { return wq(w) * (1.0 + std::abs(w)); });
  }

  const double M1 = std::pow(p + 1.0, (q + 2.0) / d) *
                    scan_sup(scan, [&](double y) { return wq(y) * y * y * (g_abs(y, 0) + g_abs(y, 1) + g_abs(y, 2)); });
  const double M2 = 2.0 * std::pow(p + 1.0, (q + 1.0) / d) *
                    scan_sup(scan, [&](double y) { return wq(y) * std::abs(y) * (g_abs(y, 0) + 2.0 * g_abs(y, 1)); });
  const double M3 = 2.0 * std::pow(p + 1.0, q / d) * scan_sup(scan, [&](double y) { return wq(y) * g_abs(y, 0); });
  tc.M = K1 * (M1 + M2 + M3);
  tc.N = K2 * std::pow(p + 1.0, (q + 1.0) / d) * scan_sup(scan, [&](double y) { return wq(y) * std::abs(y) * g_abs(y, 0); });

  // Measured contraction constant on the canonical contracting direction.
  const SampledFunction g2 = make_derivative_profile(kernel, 2, 1.0, in.space);
  const DilationResult step = linear_rg_map(g2, 0, L, kernel, in.ts);
  tc.C_empirical = bq_norm(step.function) / bq_norm(g2) * std::pow(L, beta);

  const Thresholds th = in.ts.thresholds();
  tc.L1 = th.L1;
  tc.L_delta = std::max(th.L1, std::pow(2.0 * tc.C_empirical * (1.0 + tc.C_dpq), d / (in.delta * (p + 1.0))));

  // Nonlinear-series constants.
  tc.C_nl = (std::pow(2.0, q + 1.0) + 3.0) * 2.0 * std::numbers::pi * tc.C_q;
  tc.rho = std::min(in.nl.radius / tc.C_q, 2.0 * std::numbers::pi * in.nl.radius / tc.C_nl);
  double S2 = 0.0;
  for (const auto& [j_minus_1, a] : in.nl.coeffs) {
    const int j = j_minus_1 + 1;
    const double cj = a / j;
    if (cj == 0.0) continue;
    S2 += std::abs(cj) * std::pow(tc.C_nl / (2.0 * std::numbers::pi), j - 1) * j * std::pow(tc.rho, j - 2);
  }

  auto C_bar = [&](double s) { return 1.0 + K0 + 2.0 * K1 * std::pow(s, 1.0 / d) + K2 * std::pow(s, 2.0 / d); };
  auto Q_of = [&](double s, double Ctd) {
    const double head = (9.0 * K0 + 3.0 * C1 + std::pow(s, 1.0 / d) * (7.0 * K1 + C2) + std::pow(s, 2.0 / d) * K2) *
                        (L - 1.0);
    return (head + 3.0 * C0 * Ctd) * std::pow(C_bar(s), 2.0) * S2;
  };

  const double s0 = in.ts.s_n(0, L, L);
  tc.Q_n = Q_of(s0, clock_singular_integral(in.ts, 0, L, d));
  tc.eps_n = std::min(1.0 / (2.0 * tc.Q_n), tc.rho / C_bar(s0));

  // Uniform bounds over n: s_n(L) < 3 L^{p+1} / (2(p+1)); the singular
  // clock integral and the measured K~ are maximized over n <= 12.
  double s_bar = 3.0 * std::pow(L, p + 1.0) / (2.0 * (p + 1.0));
  double Ctd_bar = 0.0;
  SampledFunction ref = make_Gp(kernel, p, in.space);
  tc.K_tilde_measured = bq_norm(ref);
  for (int n = 0; n <= 12; ++n) {
    s_bar = std::max(s_bar, in.ts.s_n(n, L, L));
    Ctd_bar = std::max(Ctd_bar, clock_singular_integral(in.ts, n, L, d));
    if (n < 12) {
      ref = linear_rg_map(ref, n, L, kernel, in.ts).function;
      tc.K_tilde_measured = std::max(tc.K_tilde_measured, bq_norm(ref));
    }
  }
  tc.Q_tilde = Q_of(s_bar, Ctd_bar);
  tc.C_tilde = C_bar(s_bar);
  tc.sigma = std::min(1.0 / (2.0 * tc.Q_tilde), tc.rho / tc.C_tilde);
  tc.M_tilde = (std::pow(L, (q + 1.0) * (p + 1.0) / d) + tc.K_tilde) * tc.Q_tilde;
  const double decay = std::pow(L, -(p + 1.0) * (1.0 - in.delta) / d);
  tc.D = 1.0 + tc.K_tilde / (1.0 - decay);
  tc.eps_bar = std::min(1.0 / (2.0 * std::pow(L, (p + 1.0) * (1.0 - in.delta) / d) * tc.M_tilde * tc.D * tc.D),
                        tc.sigma / tc.D);
  tc.ordering_ok = tc.eps_bar <= tc.sigma && tc.sigma <= tc.eps_n;
  return tc;
}

}  // namespace rgflow
