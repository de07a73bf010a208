#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <doctest.h>

#include "rgflow/error.hpp"
#include "rgflow/function_space.hpp"

namespace rgflow::test {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an rgflow::Error");
  return ErrorKind::Domain;
}

#define CHECK_KIND(expr, expected) CHECK(::rgflow::test::kind_of([&] { (void)(expr); }) == (expected))

/// Dense-scan sup of a scalar function on [-w, w].
inline double scan_sup(const std::function<double(double)>& f, double w, double step) {
  double best = 0.0;
  for (double x = -w; x <= w; x += step) best = std::max(best, std::abs(f(x)));
  return best;
}

/// Composite trapezoid rule on [a, b] with m intervals.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = 0.5 * (f(a) + f(b));
  for (int k = 1; k < m; ++k) s += f(a + k * h);
  return s * h;
}

/// Three spectra sampled from closed forms on the nodes of cfg.
inline SampledFunction from_closed_form(const SpaceConfig& cfg,
                                        const std::function<std::complex<double>(double)>& f0,
                                        const std::function<std::complex<double>(double)>& f1,
                                        const std::function<std::complex<double>(double)>& f2) {
  Eigen::ArrayXcd a(cfg.n), b(cfg.n), c(cfg.n);
  for (int k = 0; k < cfg.n; ++k) {
    const double w = cfg.omega(k);
    a(k) = f0(w);
    b(k) = f1(w);
    c(k) = f2(w);
  }
  return SampledFunction(cfg, a, b, c, "closed_form");
}

/// -w^2 e^{-w^2} with its two derivatives: the contracting direction used throughout.
inline SampledFunction second_derivative_gauss(const SpaceConfig& cfg) {
  return from_closed_form(
      cfg, [](double w) { return std::complex<double>(-w * w * std::exp(-w * w)); },
      [](double w) { return std::complex<double>((2.0 * w * w * w - 2.0 * w) * std::exp(-w * w)); },
      [](double w) {
        return std::complex<double>((-4.0 * w * w * w * w + 10.0 * w * w - 2.0) * std::exp(-w * w));
      });
}

}  // namespace rgflow::test
