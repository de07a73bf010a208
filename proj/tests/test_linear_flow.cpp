#include <cmath>
#include <vector>

#include "rgflow/diagnostics.hpp"
#include "rgflow/linear_flow.hpp"
#include "support.hpp"

using namespace rgflow;
using cd = std::complex<double>;

namespace {

SpaceConfig grid(int n = 1025, double omega = 16.0, Interpolation interp = Interpolation::Spectral) {
  SpaceConfig c;
  c.n = n;
  c.omega_max = omega;
  c.interp = interp;
  return c;
}

const KernelSpec gauss = KernelSpec::gauss();
const TimeScale unit = TimeScale::pure_power(0.0);

double sup_diff(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b) { return (a - b).abs().maxCoeff(); }

}  // namespace

TEST_CASE("linear evolution") {
  const SpaceConfig c = grid();
  const SampledFunction f = make_Gp(gauss, 0.0, c);
  const SampledFunction same = linear_evolve(f, gauss, unit, 3, 4.0, 1.0);
  CHECK(sup_diff(same.f0(), f.f0()) == 0.0);
  CHECK(sup_diff(same.f2(), f.f2()) == 0.0);

  // s_n(4) = 3: i w e^{-w^2} e^{-3 w^2}
  const SampledFunction u = linear_evolve(f, gauss, unit, 2, 4.0, 4.0);
  const SampledFunction exact = rgflow::test::from_closed_form(
      c, [](double w) { return cd(0.0, w * std::exp(-4.0 * w * w)); },
      [](double w) { return cd(0.0, (1.0 - 8.0 * w * w) * std::exp(-4.0 * w * w)); },
      [](double w) { return cd(0.0, (64.0 * w * w * w - 24.0 * w) * std::exp(-4.0 * w * w)); });
  CHECK(sup_diff(u.f0(), exact.f0()) < 1e-15);
  CHECK(sup_diff(u.f1(), exact.f1()) < 1e-14);
  CHECK(sup_diff(u.f2(), exact.f2()) < 1e-13);

  const SampledFunction h = make_derivative_profile(gauss, 0, 1.0, c);
  CHECK(linear_evolve(h, gauss, unit, 0, 4.0, 2.5).f0()(c.center()) == h.f0()(c.center()));
}

TEST_CASE("linear step keeps mass and first moment") {
  const SpaceConfig c = grid();
  const SampledFunction f = 0.7 * make_Gp(gauss, 0.0, c) + make_derivative_profile(gauss, 2, 1.0, c) +
                            0.3 * make_derivative_profile(gauss, 3, 0.5, c);
  const SampledFunction out = rg_linear_step(f, 0, 4.0, gauss, unit);
  CHECK(out.f0()(c.center()) == cd(0.0, 0.0));
  CHECK(out.f1()(c.center()) == f.f1()(c.center()));
  CHECK_KIND(rg_linear_step(f, 0, 2.0, gauss, unit), ErrorKind::HypothesisViolation);
}

TEST_CASE("G_p is a fixed point without remainder") {
  for (const char* name : {"gauss", "quartic", "sextic"}) {
    const KernelSpec k = KernelSpec::by_name(name);
    for (double p : {0.0, 1.0}) {
      const TimeScale ts = TimeScale::pure_power(p);
      const SampledFunction gp = make_Gp(k, p, grid());
      SampledFunction f = gp;
      for (int n = 0; n < 6; ++n) {
        f = rg_linear_step(f, n, 4.0, k, ts);
        CHECK(bq_norm(f - gp) <= 1e-8);
      }
    }
  }
}

TEST_CASE("semigroup property") {
  const SampledFunction gp = make_Gp(gauss, 0.0, grid());
  CHECK(check_semigroup(SampledFunction::zero(grid()), 2.0, 2, gauss, unit) == 0.0);
  const double single = linear_rg_map(gp, 0, 4.0, gauss, unit).interp_error;
  CHECK(check_semigroup(gp, 2.0, 2, gauss, unit) <= 2.0 * single);
  CHECK_KIND(check_semigroup(gp, 2.0, 1, gauss, unit), ErrorKind::Domain);

  // cubic interpolation: refinement N -> 2N - 1 shrinks the residual at least 4x
  double previous = 0.0;
  for (int n : {129, 257, 513}) {
    const SampledFunction f = make_Gp(gauss, 0.0, grid(n, 12.0, Interpolation::Cubic));
    const double r = check_semigroup(f, 2.0, 2, gauss, unit);
    CHECK(r > 0.0);
    if (previous > 0.0) CHECK(previous / r >= 4.0);
    previous = r;
  }
}

TEST_CASE("contraction scaling") {
  const SampledFunction g = rgflow::test::second_derivative_gauss(grid());
  std::vector<double> scaled;
  for (double L : {4.0, 8.0, 16.0}) {
    const LinearStepReport r = measure_contraction(g, 0, L, gauss, unit);
    CHECK(r.contraction_ratio == doctest::Approx(r.output_norm / r.input_norm));
    scaled.push_back(r.contraction_ratio * std::sqrt(L));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  CHECK((*hi - *lo) / *lo < 0.25);

  // C from the L = 4 measurement; every L above C^{d/(p+1)} contracts
  const double C = scaled.front();
  for (double L = std::max(3.5, C * C * 1.01); L < 64.0; L *= 1.5) {
    CHECK(measure_contraction(g, 0, L, gauss, unit).contraction_ratio < 1.0);
  }

  CHECK_KIND(measure_contraction(SampledFunction::zero(grid()), 0, 4.0, gauss, unit), ErrorKind::DegenerateInput);
  CHECK_KIND(measure_contraction(make_Gp(gauss, 0.0, grid()), 0, 4.0, gauss, unit), ErrorKind::HypothesisViolation);
  CHECK_KIND(measure_contraction(make_derivative_profile(gauss, 0, 1.0, grid()), 0, 4.0, gauss, unit),
             ErrorKind::HypothesisViolation);
}

TEST_CASE("decomposition") {
  const SpaceConfig c = grid();
  const SampledFunction gp = make_Gp(gauss, 0.0, c);
  const Decomposition d = decompose_against(3.0 * gp, gp);
  CHECK(d.A == 3.0);
  CHECK(bq_norm(d.g) == 0.0);

  const SampledFunction g0 = rgflow::test::second_derivative_gauss(c);
  const Decomposition e = decompose_against(gp + g0, gp);
  CHECK(e.A == 1.0);
  CHECK(bq_norm(e.g - g0) < 1e-15);
  CHECK(e.g.f0()(c.center()) == cd(0.0, 0.0));
  CHECK(e.g.f1()(c.center()) == cd(0.0, 0.0));

  CHECK_KIND(decompose_against(gp, 2.0 * gp), ErrorKind::BadReference);

  // one step: the g part contracts at the measured rate
  const double L = 4.0;
  const SampledFunction f1 = rg_linear_step(gp + g0, 0, L, gauss, unit);
  const SampledFunction ref1 = rg_linear_step(gp, 0, L, gauss, unit);
  const Decomposition next = decompose_against(f1, ref1);
  const double rate = measure_contraction(g0, 0, L, gauss, unit).contraction_ratio;
  CHECK(next.A == 1.0);
  CHECK(bq_norm(next.g) <= rate * bq_norm(g0) * (1.0 + 1e-10));
}

TEST_CASE("remainder-driven approach to the fixed point") {
  // c(t) = t + 1: the orbit of G_p approaches G_p like |r(L^n)/L^{2n}|^{1/2}
  const double p = 1.0, L = 8.0;
  const TimeScale ts = TimeScale::power_plus_lower(p, {{1.0, 0.0}});
  const SampledFunction gp = make_Gp(gauss, p, grid());
  SampledFunction f = gp;
  std::vector<double> t, e;
  for (int n = 0; n < 6; ++n) {
    f = rg_linear_step(f, n, L, gauss, ts);
    const double err = bq_norm(f - gp);
    if (!e.empty()) CHECK(err < e.back());
    t.push_back(std::pow(L, n + 1));
    e.push_back(err);
  }
  // e_n <= M L^{-n/d}; fit M on the first point
  const double M = e.front() * std::pow(L, 1.0 / 2.0);
  for (std::size_t k = 0; k < e.size(); ++k) CHECK(e[k] <= M * std::pow(L, -(k + 1.0) / 2.0) * (1.0 + 1e-9));
}

TEST_CASE("g decays at least at the bound exponent") {
  const double L = 4.0, delta = 0.2, p = 0.0, d = 2.0;
  const SpaceConfig c = grid();
  const SampledFunction gp = make_Gp(gauss, p, c);
  SampledFunction f = gp + 0.5 * make_derivative_profile(gauss, 2, 1.0, c);
  SampledFunction ref = gp;
  std::vector<double> t, g;
  for (int n = 0; n < 8; ++n) {
    f = rg_linear_step(f, n, L, gauss, unit);
    ref = rg_linear_step(ref, n, L, gauss, unit);
    t.push_back(std::pow(L, n + 1));
    g.push_back(bq_norm(decompose_against(f, ref).g));
  }
  const RateFit fit = fit_rate(t, g);
  CHECK(-fit.slope >= (p + 1.0) * (1.0 - delta) / d);
}
