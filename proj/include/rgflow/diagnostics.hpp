#pragma once

#include <string>
#include <vector>

#include "rgflow/function_space.hpp"
#include "rgflow/kernel.hpp"
#include "rgflow/nonlinear_flow.hpp"
#include "rgflow/rg_engine.hpp"
#include "rgflow/timescale.hpp"

namespace rgflow {

/// Unrenormalized solve on [1, T]. The result lives on the input grid
/// narrowed by T^beta, so that rescaling back to the input grid is node
/// aligned. lambda = 0 evaluates the linear flow in closed form.
SampledFunction direct_solve(const SampledFunction& f0, double lambda, const Nonlinearity& nl,
                             const KernelSpec& kernel, const TimeScale& ts, double T, const EvolutionConfig& cfg);

/// nt for [1, T] with the same time step as `nt` on [1, L].
int scaled_nt(int nt, double L, double T);

/// || T^{2 beta} u_T(T^beta .) - A G_p || on the grid of G_p.
double rescaled_error(const SampledFunction& u_T, double T, double A, const SampledFunction& Gp, double beta);

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (log t, log e)
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
};

/// Least-squares slope of log e against log t. Needs at least 3 points.
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& e);

struct CoherenceReport {
  int steps = 0;
  double T = 0.0;
  double norm_rg = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

/// `steps` RG steps against direct_solve on [1, L^steps], compared on the RG grid.
CoherenceReport oracle_coherence(const SampledFunction& f0, const RGConfig& cfg, int steps);

struct TheoryConstants {
  KernelConstants kernel;
  double C_q = 0.0;
  double C_dpq = 0.0;
  double K_tilde = 0.0;
  double M = 0.0;
  double N = 0.0;
  double C_empirical = 0.0;
  double C_nl = 0.0;
  double rho = 0.0;
  double eps_n = 0.0;  // at n = 0
  double Q_n = 0.0;    // at n = 0
  double Q_tilde = 0.0;
  double C_tilde = 0.0;
  double sigma = 0.0;
  double M_tilde = 0.0;
  double D = 0.0;
  double eps_bar = 0.0;
  double L1 = 0.0;
  double L_delta = 0.0;
  /// max_{n <= 12} || R^0_{L^n} G_p ||, the measured uniform bound.
  double K_tilde_measured = 0.0;
  bool ordering_ok = false;  // eps_bar <= sigma <= eps_n
};

struct TheoryInputs {
  KernelSpec kernel = KernelSpec::gauss();
  TimeScale ts = TimeScale::pure_power(0.0);
  Nonlinearity nl = Nonlinearity::burgers();
  SpaceConfig space;
  double L = 4.0;
  double delta = 0.2;
  /// Scan half-width and step for the kernel sups.
  double scan_half_width = 40.0;
  double scan_step = 1e-3;
};

/// Evaluates every closed-form constant of the theory for the inputs; the
/// contraction constant is measured (ratio * L^beta on the second-derivative profile).
TheoryConstants theory_ledger(const TheoryInputs& in);

}  // namespace rgflow
