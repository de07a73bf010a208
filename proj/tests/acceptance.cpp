// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "rgflow/diagnostics.hpp"
#include "rgflow/linear_flow.hpp"
#include "rgflow/nonlinear_flow.hpp"
#include "rgflow/rg_engine.hpp"

using namespace rgflow;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string timing = fmt::format("{:.2f} s", secs);
  if (limit_s > 0.0) {
    timing += fmt::format(" of {:.0f} s", limit_s);
    if (secs > limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
  }
  if (!o.pass) ++failures;
  fmt::print("criterion {:2d} {}: {} | {} | {}\n", id, o.pass ? "PASS" : "FAIL", title, o.detail, timing);
  std::fflush(stdout);
}

bool zero_mass_everywhere(const Orbit& orbit) {
  return std::all_of(orbit.states.begin(), orbit.states.end(), [](const RGState& s) {
    return s.f.f0()(s.f.config().center()) == std::complex<double>(0.0, 0.0);
  });
}

double A_spread(const Orbit& orbit) {
  double lo = orbit.states.front().A, hi = lo;
  for (const RGState& s : orbit.states) {
    lo = std::min(lo, s.A);
    hi = std::max(hi, s.A);
  }
  return hi - lo;
}

RGConfig linear_gauss(int n_max) {
  RGConfig cfg;
  cfg.L = 4.0;
  cfg.n_max = n_max;
  return cfg;
}

RGConfig burgers_reference() {
  RGConfig cfg;
  cfg.L = 4.0;
  cfg.n_max = 8;
  cfg.lambda = 1.0;
  return cfg;
}

}  // namespace

int main() {
  std::vector<const Orbit*> linear_orbits;
  std::vector<const Orbit*> all_orbits;

  Orbit fixed;
  criterion(1, "exact linear fixed point", 10.0, [&] {
    const RGConfig cfg = linear_gauss(10);
    const SampledFunction gp = make_Gp(cfg.kernel, 0.0, cfg.space);
    fixed = run_flow(gp, cfg);
    double worst = 0.0;
    for (const RGState& s : fixed.states) worst = std::max(worst, bq_norm(s.f - gp));
    const bool ok = !fixed.partial && fixed.states.size() == 11 && worst <= 1e-8;
    return Outcome{ok, fmt::format("max_n ||f_n - G_p|| = {:.3e} over {} states", worst, fixed.states.size())};
  });
  linear_orbits.push_back(&fixed);

  Orbit decaying;
  criterion(2, "linear theorem rate of g_n", 30.0, [&] {
    const RGConfig cfg = linear_gauss(10);
    const SampledFunction f0 =
        make_Gp(cfg.kernel, 0.0, cfg.space) + 0.5 * make_derivative_profile(cfg.kernel, 2, 1.0, cfg.space);
    decaying = run_flow(f0, cfg);
    std::vector<double> t, g;
    bool strictly = true;
    for (const RGState& s : decaying.states) {
      const double norm = bq_norm(s.g);
      if (!g.empty() && !(norm < g.back())) strictly = false;
      t.push_back(std::pow(cfg.L, s.n));
      g.push_back(norm);
    }
    const RateFit fit = fit_rate(t, g);
    const bool ok = !decaying.partial && strictly && fit.slope <= -0.4;
    return Outcome{ok, fmt::format("strictly decreasing = {}, fitted slope = {:.4f} (need <= -0.4)", strictly, fit.slope)};
  });
  linear_orbits.push_back(&decaying);

  criterion(3, "contraction scaling", 30.0, [] {
    const RGConfig cfg = linear_gauss(1);
    const SampledFunction g = make_derivative_profile(cfg.kernel, 2, 1.0, cfg.space);
    std::vector<double> scaled;
    for (double L : {4.0, 8.0, 16.0}) {
      scaled.push_back(measure_contraction(g, 0, L, cfg.kernel, cfg.ts).contraction_ratio * std::sqrt(L));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const double spread = (*hi - *lo) / *lo;
    return Outcome{spread < 0.25, fmt::format("ratio * L^(1/2) = {:.4f}, {:.4f}, {:.4f}; spread = {:.2f}%", scaled[0],
                                              scaled[1], scaled[2], 100.0 * spread)};
  });

  criterion(4, "closed-form rescaled error", 10.0, [] {
    const RGConfig cfg = linear_gauss(1);
    const SampledFunction gp = make_Gp(cfg.kernel, 0.0, cfg.space);
    double worst = 0.0;
    std::string parts;
    for (double T : {4.0, 16.0, 64.0, 256.0}) {
      const SampledFunction u = direct_solve(gp, 0.0, cfg.nl, cfg.kernel, cfg.ts, T, cfg.evolution);
      const double e = rescaled_error(u, T, 1.0, gp, cfg.beta());
      worst = std::max(worst, e);
      parts += fmt::format("{}T={:g}: {:.2e}", parts.empty() ? "" : ", ", T, e);
    }
    return Outcome{worst <= 1e-8, parts};
  });

  Orbit remainder;
  criterion(5, "remainder-driven convergence", 60.0, [&] {
    // c(t) = t + 1, p = 1, so r(t) = t - 1; L = 8 clears L1 ~ 7.02
    const double p = 1.0, L = 8.0;
    RGConfig cfg;
    cfg.L = L;
    cfg.n_max = 8;
    cfg.ts = TimeScale::power_plus_lower(p, {{1.0, 0.0}});
    const double d = cfg.kernel.d();
    const SampledFunction gp = make_Gp(cfg.kernel, p, cfg.space);
    remainder = run_flow(gp, cfg);
    TheoryInputs in;
    in.ts = cfg.ts;
    in.L = L;
    const TheoryConstants tc = theory_ledger(in);
    std::vector<double> eps, e;
    bool decreasing = true, enveloped = true;
    for (const RGState& s : remainder.states) {
      if (s.n == 0) continue;
      const double Ln = std::pow(L, s.n);
      const double eps_n = std::abs(cfg.ts.r(Ln)) / std::pow(Ln, p + 1.0);
      const double en = bq_norm(s.f - gp);
      if (!e.empty() && !(en < e.back())) decreasing = false;
      if (en > tc.M * std::pow(eps_n, 1.0 / d) + tc.N * std::pow(eps_n, 2.0 / d)) enveloped = false;
      eps.push_back(eps_n);
      e.push_back(en);
    }
    // exponent of e_n against eps_n; the bound's exponent is 1/d
    const double exponent = fit_rate(eps, e).slope;
    const bool ok = !remainder.partial && decreasing && enveloped && exponent >= 0.75 / d;
    return Outcome{ok, fmt::format("decreasing = {}, within M eps^(1/d) + N eps^(2/d) = {}, fitted exponent in eps = "
                                   "{:.3f} (bound exponent {:.3f}, need >= {:.3f})",
                                   decreasing, enveloped, exponent, 1.0 / d, 0.75 / d)};
  });
  linear_orbits.push_back(&remainder);

  Orbit burgers;
  bool burgers_ran = false;
  const auto run_burgers = [&] {
    if (burgers_ran) return;
    const RGConfig cfg = burgers_reference();
    burgers = run_flow(0.01 * make_Gp(cfg.kernel, 0.0, cfg.space), cfg);
    burgers_ran = true;
  };

  criterion(6, "coupling law exact", 0.0, [&] {
    run_burgers();
    const RGConfig cfg = burgers_reference();
    const double p = cfg.ts.p(), d = cfg.kernel.d(), alpha = cfg.nl.alpha;
    const double dF = (2.0 * alpha + 3.0) * (p + 1.0) - 2.0 * (p + 1.0) - d;
    double worst = 0.0;
    for (const RGState& s : burgers.states) {
      const double law = std::pow(cfg.L, -s.n * dF / d) * cfg.lambda;
      worst = std::max(worst, std::abs(s.lambda_n - law) / law);
    }
    for (const StepRecord& r : burgers.records()) {
      const double law = std::pow(cfg.L, -r.n * dF / d) * cfg.lambda;
      worst = std::max(worst, std::abs(r.lambda_n - law) / law);
    }
    return Outcome{worst <= 1e-14 && burgers.states.size() == 9,
                   fmt::format("max relative deviation = {:.2e} over {} states", worst, burgers.states.size())};
  });

  criterion(7, "nonlinear prefactor Cauchy rate", 300.0, [&] {
    run_burgers();
    const RGConfig cfg = burgers_reference();
    std::vector<double> t, dA;
    for (const StepRecord& r : burgers.records()) {
      if (r.n >= cfg.n_max) continue;
      t.push_back(std::pow(cfg.L, r.n));
      dA.push_back(std::abs(r.delta_A));
    }
    const double ratio = std::pow(cfg.L, fit_rate(t, dA).slope);
    const double target = std::pow(cfg.L, -1.0 / cfg.kernel.d());
    const bool ok = !burgers.partial && std::abs(ratio - target) <= 0.25 * target;
    return Outcome{ok, fmt::format("fitted per-step ratio of |A_(n+1) - A_n| = {:.5f} (target {:.3f} +- 25%), A_limit = "
                                   "{:.12f}",
                                   ratio, target, burgers.A_limit)};
  });
  all_orbits.push_back(&burgers);

  criterion(8, "nonlinear theorem trend", 300.0, [&] {
    run_burgers();
    const std::vector<StepRecord> rec = burgers.records();
    const double e1 = rec.at(1).rescaled_error, e8 = rec.at(8).rescaled_error;
    return Outcome{e8 < 0.1 * e1, fmt::format("rescaled error step 1 = {:.3e}, step 8 = {:.3e}, ratio = {:.4f}", e1, e8,
                                              e8 / e1)};
  });

  criterion(9, "oracle coherence", 300.0, [] {
    const RGConfig cfg = burgers_reference();
    const CoherenceReport r = oracle_coherence(0.01 * make_Gp(cfg.kernel, 0.0, cfg.space), cfg, 2);
    return Outcome{r.rel_error < 1e-3, fmt::format("T = {:g}, relative B_q error = {:.3e}", r.T, r.rel_error)};
  });

  criterion(10, "quadratic smallness scaling", 60.0, [] {
    const RGConfig cfg = burgers_reference();
    const SampledFunction gp = make_Gp(cfg.kernel, 0.0, cfg.space);
    const auto nu_norm = [&](double amp) {
      const Trajectory t = picard_solve(amp * gp, cfg.nl, cfg.lambda, cfg.kernel, cfg.ts, 0, cfg.L, cfg.evolution);
      return bq_norm(nu_of(t, cfg.nl, cfg.lambda, cfg.kernel, cfg.ts, 0, cfg.L, cfg.evolution.quadrature));
    };
    const double ratio = nu_norm(0.02) / nu_norm(0.01);
    return Outcome{ratio >= 3.4 && ratio <= 4.6, fmt::format("||nu_0|| ratio on doubling ||f_0|| = {:.4f}", ratio)};
  });

  criterion(11, "mass and prefactor conservation", 0.0, [&] {
    run_burgers();
    bool mass = true;
    double spread = 0.0;
    std::size_t states = 0;
    for (const Orbit* o : linear_orbits) {
      mass = mass && zero_mass_everywhere(*o);
      spread = std::max(spread, A_spread(*o));
      states += o->states.size();
    }
    for (const Orbit* o : all_orbits) {
      mass = mass && zero_mass_everywhere(*o);
      states += o->states.size();
    }
    return Outcome{mass && spread <= 1e-12,
                   fmt::format("F0(0) == 0 in all {} states = {}, max A spread at lambda = 0 = {:.2e}", states, mass,
                               spread)};
  });

  fmt::print("{} of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
