#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rgflow/function_space.hpp"
#include "rgflow/kernel.hpp"
#include "rgflow/timescale.hpp"

namespace rgflow {

/// F(u, u_x) = sum_{j >= alpha} a_j u^j u_x, truncated at the largest key.
struct Nonlinearity {
  int alpha = 1;
  std::map<int, double> coeffs{{1, 1.0}};
  double radius = std::numeric_limits<double>::infinity();

  static Nonlinearity burgers(double a1 = 1.0);

  int jmax() const;
  /// alpha >= 1, coefficient keys in [alpha, jmax], radius > 0.
  void validate() const;
};

/// C_q = (2 pi)^{-1} \int (1 + |w|^q)^{-1} dw, so sup |u| <= C_q ||u||.
double sup_bound_constant(double q);

enum class Quadrature { Trapezoid, Simpson };

const char* to_string(Quadrature rule) noexcept;
Quadrature quadrature_from_string(const std::string& name);

struct EvolutionConfig {
  int nt = 33;
  Quadrature quadrature = Quadrature::Trapezoid;
  double picard_tol = 1e-12;
  int picard_max = 50;

  void validate() const;
};

/// Uniform time nodes on [1, L].
std::vector<double> time_grid(double L, int nt);

struct Trajectory {
  std::vector<double> times;
  std::vector<SampledFunction> states;
  int picard_iters = 0;
  double final_residual = 0.0;
  /// Last observed ||u^{k+1} - u^k||_L / ||u^k - u^{k-1}||_L.
  double lipschitz_ratio = 0.0;
  std::vector<double> residual_history;
  bool converged = false;
  /// sup_t ||u - u_f|| exceeded ||f||.
  bool ball_violation = false;
  double ball_distance = 0.0;
};

/// Spectra of F(u, u_x), written as d/dx of H(u) = sum a_j u^{j+1} / (j+1),
/// with products on a zero-padded x grid.
SampledFunction apply_F(const SampledFunction& u, const Nonlinearity& nl);

/// Quadrature weights for uniform nodes 0..m of spacing dt.
std::vector<double> quadrature_weights(int m, double dt, Quadrature rule);

/// lambda * \int_1^{t_i} G(s_n(t_i) - s_n(tau)) F(u(tau)) dtau on the trajectory nodes.
SampledFunction duhamel_term(const Trajectory& traj, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                             const TimeScale& ts, int n, double L, std::size_t t_index,
                             Quadrature rule = Quadrature::Trapezoid);

/// Same, from precomputed sources F(u(tau_k)).
SampledFunction duhamel_from_sources(const std::vector<double>& times, const std::vector<SampledFunction>& sources,
                                     double lambda, const KernelSpec& kernel, const TimeScale& ts, int n, double L,
                                     std::size_t t_index, Quadrature rule);

enum class PicardStart { Linear, Zero };

/// Fixed point of T(u) = u_f + N(u) on [1, L] for the step-n problem.
Trajectory picard_solve(const SampledFunction& f, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                        const TimeScale& ts, int n, double L, const EvolutionConfig& cfg,
                        PicardStart start = PicardStart::Linear);

/// nu = N(u)(., L) of a converged trajectory.
SampledFunction nu_of(const Trajectory& traj, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                      const TimeScale& ts, int n, double L, Quadrature rule = Quadrature::Trapezoid);

}  // namespace rgflow
