#pragma once

#include "rgflow/function_space.hpp"
#include "rgflow/kernel.hpp"
#include "rgflow/timescale.hpp"

namespace rgflow {

struct LinearStepReport {
  int n = 0;
  double L = 0.0;
  double input_norm = 0.0;
  double output_norm = 0.0;
  double contraction_ratio = 0.0;
  double interp_error = 0.0;
};

/// Multiplies by G^(., sigma) with the product rule carried to F1 and F2.
/// sigma == 0 is the identity.
SampledFunction evolve_by_clock(const SampledFunction& f, const KernelSpec& kernel, double sigma);

/// The linear solution at time t in [1, L] of the step-n problem, u = G(s_n(t)) * f.
SampledFunction linear_evolve(const SampledFunction& f, const KernelSpec& kernel, const TimeScale& ts, int n,
                              double L, double t);

/// x -> a^2 u(a x) on the grid of u, i.e. dilation with the law (a, 1, 1/a).
DilationResult rg_rescale(const SampledFunction& u, double a);

/// R^0_{L,n} without the L > L1 check, keeping the dilation diagnostics.
DilationResult linear_rg_map(const SampledFunction& f, int n, double L, const KernelSpec& kernel,
                             const TimeScale& ts);

/// R^0_{L,n} f. Requires L > L1 of the time scale.
SampledFunction rg_linear_step(const SampledFunction& f, int n, double L, const KernelSpec& kernel,
                               const TimeScale& ts);

/// || R^0_{L^m,0} f - R^0_{L,m-1} ... R^0_{L,0} f ||. Requires m >= 2.
double check_semigroup(const SampledFunction& f, double L, int m, const KernelSpec& kernel, const TimeScale& ts);

/// One linear step on zero-mass, zero-first-moment data with its contraction ratio.
LinearStepReport measure_contraction(const SampledFunction& g, int n, double L, const KernelSpec& kernel,
                                     const TimeScale& ts);

struct Decomposition {
  double A = 0.0;
  SampledFunction g;
};

/// f = A * reference + g with A = -i F1(0); g has exactly zero mass and first moment.
Decomposition decompose_against(const SampledFunction& f, const SampledFunction& reference);

}  // namespace rgflow
