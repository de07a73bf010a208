#include "rgflow/nonlinear_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rgflow/error.hpp"
#include "rgflow/linear_flow.hpp"
#include "rgflow/parallel.hpp"
#include "rgflow/spectral.hpp"

namespace rgflow {

using cplx = std::complex<double>;

Nonlinearity Nonlinearity::burgers(double a1) {
  Nonlinearity nl;
  nl.alpha = 1;
  nl.coeffs = {{1, a1}};
  return nl;
}

int Nonlinearity::jmax() const { return coeffs.empty() ? alpha : coeffs.rbegin()->first; }

void Nonlinearity::validate() const {
  if (alpha < 1) throw Error(ErrorKind::Config, "nonlinearity order alpha must be a positive integer");
  if (!(radius > 0.0)) throw Error(ErrorKind::Config, "convergence radius must be positive");
  for (const auto& [j, a] : coeffs) {
    if (j < alpha) throw Error(ErrorKind::Config, "coefficient index below alpha");
    if (!std::isfinite(a)) throw Error(ErrorKind::Config, "non-finite nonlinearity coefficient");
  }
}

double sup_bound_constant(double q) {
  if (!(q > 1.0)) throw Error(ErrorKind::Domain, "C_q needs q > 1");
  return 1.0 / (q * std::sin(std::numbers::pi / q));
}

const char* to_string(Quadrature rule) noexcept { return rule == Quadrature::Simpson ? "simpson" : "trapezoid"; }

Quadrature quadrature_from_string(const std::string& name) {
  if (name == "trapezoid") return Quadrature::Trapezoid;
  if (name == "simpson") return Quadrature::Simpson;
  throw Error(ErrorKind::Config, "unknown quadrature '" + name + "' (expected trapezoid or simpson)");
}

void EvolutionConfig::validate() const {
  if (nt < 9) throw Error(ErrorKind::Config, "nt must be at least 9");
  if (!(picard_tol > 0.0)) throw Error(ErrorKind::Config, "picard_tol must be positive");
  if (picard_max < 1) throw Error(ErrorKind::Config, "picard_max must be at least 1");
}

std::vector<double> time_grid(double L, int nt) {
  if (nt < 2) throw Error(ErrorKind::Config, "time grid needs at least 2 nodes");
  std::vector<double> t(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) t[static_cast<std::size_t>(i)] = 1.0 + (L - 1.0) * i / (nt - 1);
  t.back() = L;
  return t;
}

SampledFunction apply_F(const SampledFunction& u, const Nonlinearity& nl) {
  const SpaceConfig& cfg = u.config();
  const double norm = bq_norm(u);
  if (norm == 0.0 || nl.coeffs.empty()) return SampledFunction::zero(cfg, "F");
  if (sup_bound_constant(cfg.q) * norm >= nl.radius) {
    throw Error(ErrorKind::OutsideAnalyticity, "sup|u| bound C_q ||u|| reaches the convergence radius");
  }

  const Eigen::ArrayXd w = cfg.grid();
  const Eigen::ArrayXd energy = u.f0().abs2();
  const double total = energy.sum();
  const double high = (w.abs() > 0.9 * cfg.omega_max).select(energy, 0.0).sum();
  if (total > 0.0 && high > 1e-8 * total) {
    throw Error(ErrorKind::Resolution, "spectrum carries energy near the grid edge; widen the frequency band");
  }

  // Products of degree jmax + 1 stay alias-free on the retained band when
  // the padded grid holds (degree + 1) / 2 times the nodes.
  const double pad = std::max(cfg.dealias_pad, (nl.jmax() + 2) / 2.0);
  const int m = spectral::fast_size(static_cast<int>(std::ceil(pad * cfg.n)));
  const double h = cfg.step();
  const Eigen::ArrayXcd u0 = spectral::to_x(u.f0(), h, m);
  const Eigen::ArrayXcd v1 = spectral::to_x(u.f1(), h, m);
  const Eigen::ArrayXcd v2 = spectral::to_x(u.f2(), h, m);

  // P(u) = sum_j a_j u^j / (j+1), so H = u P, (-ix) H = v1 P, (-ix)^2 H = v2 P.
  Eigen::ArrayXcd P = Eigen::ArrayXcd::Zero(m);
  Eigen::ArrayXcd power = Eigen::ArrayXcd::Ones(m);
  int current = 0;
  for (const auto& [j, a] : nl.coeffs) {
    while (current < j) {
      power *= u0;
      ++current;
    }
    P += (a / (j + 1.0)) * power;
  }

  const Eigen::ArrayXcd H0 = spectral::from_x(u0 * P, h, cfg.n);
  const Eigen::ArrayXcd H1 = spectral::from_x(v1 * P, h, cfg.n);
  const Eigen::ArrayXcd H2 = spectral::from_x(v2 * P, h, cfg.n);
  const Eigen::ArrayXcd iw = cplx(0.0, 1.0) * w.cast<cplx>();
  const cplx I(0.0, 1.0);
  return SampledFunction(cfg, iw * H0, I * H0 + iw * H1, 2.0 * I * H1 + iw * H2, "F");
}

std::vector<double> quadrature_weights(int m, double dt, Quadrature rule) {
  if (m < 0) throw Error(ErrorKind::Domain, "negative interval count");
  std::vector<double> w(static_cast<std::size_t>(m) + 1, 0.0);
  if (m == 0) return w;
  auto trapezoid = [&](int from, int to) {
    for (int k = from; k < to; ++k) {
      w[k] += 0.5 * dt;
      w[k + 1] += 0.5 * dt;
    }
  };
  auto simpson = [&](int from, int to) {
    for (int k = from; k < to; k += 2) {
      w[k] += dt / 3.0;
      w[k + 1] += 4.0 * dt / 3.0;
      w[k + 2] += dt / 3.0;
    }
  };
  if (rule == Quadrature::Trapezoid || m == 1) {
    trapezoid(0, m);
  } else if (m % 2 == 0) {
    simpson(0, m);
  } else {
    simpson(0, m - 3);
    const int k = m - 3;
    w[k] += 3.0 * dt / 8.0;
    w[k + 1] += 9.0 * dt / 8.0;
    w[k + 2] += 9.0 * dt / 8.0;
    w[k + 3] += 3.0 * dt / 8.0;
  }
  return w;
}

SampledFunction duhamel_from_sources(const std::vector<double>& times, const std::vector<SampledFunction>& sources,
                                     double lambda, const KernelSpec& kernel, const TimeScale& ts, int n, double L,
                                     std::size_t t_index, Quadrature rule) {
  if (t_index >= times.size() || sources.size() != times.size()) {
    throw Error(ErrorKind::Domain, "time index outside the trajectory");
  }
  const SpaceConfig& cfg = sources.front().config();
  if (lambda == 0.0 || t_index == 0) return SampledFunction::zero(cfg, "duhamel");
  if (times.size() < 3) throw Error(ErrorKind::Config, "Duhamel quadrature needs at least 3 time nodes");

  const int m = static_cast<int>(t_index);
  const double dt = (times[t_index] - times[0]) / m;
  const std::vector<double> weights = quadrature_weights(m, dt, rule);
  const Eigen::ArrayXd w = cfg.grid();
  const double t = times[t_index];

  Eigen::ArrayXcd acc0 = Eigen::ArrayXcd::Zero(cfg.n);
  Eigen::ArrayXcd acc1 = Eigen::ArrayXcd::Zero(cfg.n);
  Eigen::ArrayXcd acc2 = Eigen::ArrayXcd::Zero(cfg.n);
  for (int k = 0; k <= m; ++k) {
    const double weight = weights[static_cast<std::size_t>(k)];
    if (weight == 0.0) continue;
    const SampledFunction& H = sources[static_cast<std::size_t>(k)];
    const double phi = k == m ? 0.0 : ts.phi_n(n, L, t, times[static_cast<std::size_t>(k)]);
    if (phi == 0.0) {
      acc0 += weight * H.f0();
      acc1 += weight * H.f1();
      acc2 += weight * H.f2();
      continue;
    }
    const KernelHat K = kernel_hat(kernel, w, phi);
    acc0 += weight * (K.g0 * H.f0());
    acc1 += weight * (K.g1 * H.f0() + K.g0 * H.f1());
    acc2 += weight * (K.g2 * H.f0() + 2.0 * K.g1 * H.f1() + K.g0 * H.f2());
  }
  return SampledFunction(cfg, lambda * acc0, lambda * acc1, lambda * acc2, "duhamel");
}

namespace {

std::vector<SampledFunction> sources_of(const std::vector<SampledFunction>& states, const Nonlinearity& nl) {
  std::vector<SampledFunction> out(states.size(), SampledFunction::zero(states.front().config()));
  parallel_for(states.size(), [&](std::size_t i) { out[i] = apply_F(states[i], nl); });
  return out;
}

}  // namespace

SampledFunction duhamel_term(const Trajectory& traj, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                             const TimeScale& ts, int n, double L, std::size_t t_index, Quadrature rule) {
  if (t_index >= traj.times.size()) throw Error(ErrorKind::Domain, "time index outside the trajectory");
  if (lambda == 0.0 || t_index == 0) return SampledFunction::zero(traj.states.front().config(), "duhamel");
  if (traj.times.size() < 3) throw Error(ErrorKind::Config, "Duhamel quadrature needs at least 3 time nodes");
  return duhamel_from_sources(traj.times, sources_of(traj.states, nl), lambda, kernel, ts, n, L, t_index, rule);
}

Trajectory picard_solve(const SampledFunction& f, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                        const TimeScale& ts, int n, double L, const EvolutionConfig& cfg, PicardStart start) {
  cfg.validate();
  nl.validate();
  Trajectory traj;
  traj.times = time_grid(L, cfg.nt);
  const std::size_t nt = traj.times.size();

  std::vector<SampledFunction> lin(nt, SampledFunction::zero(f.config()));
  parallel_for(nt, [&](std::size_t i) { lin[i] = linear_evolve(f, kernel, ts, n, L, traj.times[i]); });
  double lin_sup = 0.0;
  for (const auto& s : lin) lin_sup = std::max(lin_sup, bq_norm(s));

  std::vector<SampledFunction> u =
      start == PicardStart::Linear ? lin : std::vector<SampledFunction>(nt, SampledFunction::zero(f.config()));
  double previous = -1.0;
  int expanding = 0;
  for (int k = 1; k <= cfg.picard_max; ++k) {
    const std::vector<SampledFunction> sources = sources_of(u, nl);
    std::vector<SampledFunction> next(nt, SampledFunction::zero(f.config()));
    parallel_for(nt, [&](std::size_t i) {
      next[i] = lin[i] + duhamel_from_sources(traj.times, sources, lambda, kernel, ts, n, L, i, cfg.quadrature);
    });
    double diff = 0.0;
    for (std::size_t i = 0; i < nt; ++i) diff = std::max(diff, bq_norm(next[i] - u[i]));
    traj.residual_history.push_back(diff);
    u = std::move(next);
    traj.picard_iters = k;
    traj.final_residual = diff;

    if (!std::isfinite(diff) || diff > 1e8 * (1.0 + lin_sup)) {
      throw Error(ErrorKind::Divergence, "Picard iterates blew up; data too large");
    }
    if (previous > 0.0) {
      traj.lipschitz_ratio = diff / previous;
      expanding = traj.lipschitz_ratio >= 1.0 ? expanding + 1 : 0;
      if (expanding >= 3) {
        throw Error(ErrorKind::Divergence, "empirical Lipschitz ratio >= 1 for 3 consecutive iterations");
      }
    }
    if (diff <= cfg.picard_tol) {
      traj.converged = true;
      break;
    }
    previous = diff;
  }
  if (!traj.converged) {
    throw Error(ErrorKind::NoConvergence, "Picard iteration did not reach tolerance in " +
                                              std::to_string(cfg.picard_max) + " iterations");
  }

  const double f_norm = bq_norm(f);
  for (std::size_t i = 0; i < nt; ++i) traj.ball_distance = std::max(traj.ball_distance, bq_norm(u[i] - lin[i]));
  traj.ball_violation = traj.ball_distance > f_norm;
  traj.states = std::move(u);
  return traj;
}

SampledFunction nu_of(const Trajectory& traj, const Nonlinearity& nl, double lambda, const KernelSpec& kernel,
                      const TimeScale& ts, int n, double L, Quadrature rule) {
  if (!traj.converged) throw Error(ErrorKind::StaleState, "trajectory has not converged");
  return duhamel_term(traj, nl, lambda, kernel, ts, n, L, traj.times.size() - 1, rule).with_tag("nu");
}

}  // namespace rgflow
