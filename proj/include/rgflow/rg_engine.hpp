#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgflow/error.hpp"
#include "rgflow/function_space.hpp"
#include "rgflow/kernel.hpp"
#include "rgflow/nonlinear_flow.hpp"
#include "rgflow/timescale.hpp"

namespace rgflow {

enum class Relevance { Relevant, Marginal, Irrelevant };

const char* to_string(Relevance r) noexcept;

struct Classification {
  Relevance relevance = Relevance::Irrelevant;
  double alpha_c = 0.0;
  double d_F = 0.0;
};

/// d_F = (2 alpha + 3)(p + 1) - 2(p + 1) - d and alpha_c = (d - (p+1)) / (2(p+1)).
Classification classify(const Nonlinearity& nl, double p, double d);

/// lambda_n = L^{-n d_F / d} lambda.
double lambda_law(double lambda, int n, double L, const Nonlinearity& nl, double p, double d);

/// a_j -> a_j L^{2n(p+1)(alpha - j)/d}.
Nonlinearity scaled_coeffs(const Nonlinearity& nl, int n, double L, double p, double d);

struct RGConfig {
  double L = 4.0;
  int n_max = 8;
  double delta = 0.2;
  double lambda = 0.0;
  KernelSpec kernel = KernelSpec::gauss();
  TimeScale ts = TimeScale::pure_power(0.0);
  Nonlinearity nl = Nonlinearity::burgers();
  SpaceConfig space;
  EvolutionConfig evolution;

  double beta() const { return (ts.p() + 1.0) / kernel.d(); }
  /// L > L1; for lambda != 0 also d_F > 0 and (1 - delta)(p + 1) < d_F.
  void validate() const;
};

struct StepRecord {
  int n = 0;
  double lambda_n = 0.0;
  double A_n = 0.0;
  /// A_{n+1} - A_n (0 for the last state of an orbit).
  double delta_A = 0.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  int picard_iters = 0;
  double picard_residual = 0.0;
  double lipschitz_ratio = 0.0;
  bool ball_violation = false;
  /// ||f_n - A_limit G_p||, filled by run_flow.
  double rescaled_error = 0.0;
};

struct RGState {
  int n = 0;
  SampledFunction f;
  double A = 0.0;
  SampledFunction g;
  /// The linear RG image of G_p at this step, F1(0) = i.
  SampledFunction reference;
  double lambda_n = 0.0;
  std::vector<StepRecord> history;
};

/// State at n = 0: f0 (zero mass required), reference G_p, decomposition.
RGState initial_state(const SampledFunction& f0, const RGConfig& cfg);

/// One renormalization step f_n -> f_{n+1} with the (A, g) update.
RGState rg_step(const RGState& state, const RGConfig& cfg);

struct Orbit {
  std::vector<RGState> states;
  double A_limit = 0.0;
  /// Geometric estimate of sum_{k >= n_max} |Delta A_k|.
  double A_tail = 0.0;
  bool partial = false;
  std::optional<ErrorKind> failure_kind;
  std::string failure;
  std::vector<StepRecord> records() const;
};

/// Runs n_max steps. A step error stops the run and returns the partial orbit.
Orbit run_flow(const SampledFunction& f0, const RGConfig& cfg);

}  // namespace rgflow
