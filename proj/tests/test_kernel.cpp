#include <cmath>

#include "rgflow/kernel.hpp"
#include "support.hpp"

using namespace rgflow;
using rgflow::test::scan_sup;

TEST_CASE("gaussian values") {
  const KernelSpec g = KernelSpec::gauss();
  CHECK(evaluate_kernel_hat(g, 0.0, 5.0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(evaluate_kernel_hat(g, 1.0, 1.0, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // semigroup closed form e^{-t w^2}
  CHECK(evaluate_kernel_hat(g, 1.0, 4.0, 0).real() == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  // derivatives: t^{1/2} g'(t^{1/2} w) with g' = -2w e^{-w^2}
  const double t = 2.0, w = 0.7, s = std::sqrt(t);
  CHECK(evaluate_kernel_hat(g, w, t, 1).real() ==
        doctest::Approx(s * (-2.0 * s * w) * std::exp(-t * w * w)).epsilon(1e-14));
  CHECK(evaluate_kernel_hat(g, w, t, 2).real() ==
        doctest::Approx(t * (4.0 * t * w * w - 2.0) * std::exp(-t * w * w)).epsilon(1e-14));
}

TEST_CASE("evaluation errors") {
  const KernelSpec g = KernelSpec::gauss();
  CHECK_KIND(evaluate_kernel_hat(g, 1.0, 0.0, 0), ErrorKind::Domain);
  CHECK_KIND(evaluate_kernel_hat(g, 1.0, -1.0, 0), ErrorKind::Domain);
  CHECK_KIND(evaluate_kernel_hat(g, 1.0, 1.0, 3), ErrorKind::UnsupportedOrder);
  CHECK_KIND(KernelSpec::by_name("cauchy"), ErrorKind::Config);
}

TEST_CASE("kernel_hat at t = 0 is the identity multiplier") {
  Eigen::ArrayXd w = Eigen::ArrayXd::LinSpaced(11, -5.0, 5.0);
  const KernelHat h = kernel_hat(KernelSpec::quartic(), w, 0.0);
  CHECK((h.g0 == 1.0).all());
  CHECK((h.g1 == 0.0).all());
  CHECK((h.g2 == 0.0).all());
}

TEST_CASE("validation of built-in and broken kernels") {
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(1025, -16.0, 16.0);
  for (const char* name : {"gauss", "quartic", "sextic"}) {
    const KernelValidation v = validate_kernel(KernelSpec::by_name(name), 2.0, grid, 1e-10);
    CHECK(v.passed());
    CHECK(v.multiplicativity_residual <= 1e-12);
  }
  const KernelSpec heavy("heavy", 2.0, 2, [](double w) {
    const double e = 1.1 * std::exp(-w * w);
    return ProfileValue{e, -2.0 * w * e, (4.0 * w * w - 2.0) * e};
  });
  const KernelValidation vh = validate_kernel(heavy, 2.0, grid, 1e-10);
  CHECK_FALSE(vh.mass_ok);
  CHECK_FALSE(vh.passed());

  const KernelSpec bimodal("bimodal", 2.0, 2, [](double w) {
    const double a = std::exp(-w * w), b = std::exp(-(w - 3.0) * (w - 3.0));
    return ProfileValue{a + b, -2.0 * w * a - 2.0 * (w - 3.0) * b,
                        (4.0 * w * w - 2.0) * a + (4.0 * (w - 3.0) * (w - 3.0) - 2.0) * b};
  });
  // oracle: both sides of the semigroup identity at (w, t, s) = (1, 2, 1)
  const double lhs = bimodal.profile(std::sqrt(2.0)).g;
  const double rhs = bimodal.profile(1.0).g * bimodal.profile(1.0).g;
  REQUIRE(std::abs(lhs - rhs) > 1e-3);
  const KernelValidation vb = validate_kernel(bimodal, 2.0, grid, 1e-10);
  CHECK_FALSE(vb.multiplicativity_ok);
  CHECK_FALSE(vb.passed());
}

TEST_CASE("gaussian constants against a dense scan") {
  const KernelConstants k = kernel_constants(KernelSpec::gauss(), 2.0, scan_grid(40.0, 1e-3));
  CHECK(k.K0 == doctest::Approx(1.0).epsilon(1e-15));
  const double K1 = scan_sup([](double w) { return -2.0 * w * std::exp(-w * w); }, 10.0, 1e-4);
  CHECK(K1 == doctest::Approx(std::sqrt(2.0 / std::exp(1.0))).epsilon(1e-7));
  CHECK(k.K1 == doctest::Approx(K1).epsilon(1e-6));
  const double K2 = scan_sup([](double w) { return (4.0 * w * w - 2.0) * std::exp(-w * w); }, 10.0, 1e-4);
  CHECK(k.K2 == doctest::Approx(K2).epsilon(1e-12));
  CHECK(k.K2 == doctest::Approx(2.0));
  const double C1 = scan_sup(
      [](double w) { return (1.0 + w * w) * w * w * 2.0 * std::abs(w) * std::exp(-w * w); }, 10.0, 1e-4);
  CHECK(k.C1 == doctest::Approx(C1).epsilon(1e-5));
  CHECK(k.q == 2.0);
  CHECK_KIND(kernel_constants(KernelSpec::gauss(), 2.0, Eigen::ArrayXd()), ErrorKind::Domain);
}

TEST_CASE("constants are stable under scan refinement") {
  for (const char* name : {"gauss", "quartic", "sextic"}) {
    const KernelSpec k = KernelSpec::by_name(name);
    const KernelConstants a = kernel_constants(k, 2.0, scan_grid(40.0, 2e-3));
    const KernelConstants b = kernel_constants(k, 2.0, scan_grid(40.0, 1e-3));
    for (auto [x, y] : {std::pair{a.K0, b.K0}, {a.K1, b.K1}, {a.K2, b.K2}, {a.C0, b.C0}, {a.C1, b.C1},
                        {a.C2, b.C2}}) {
      CHECK(std::isfinite(y));
      CHECK(std::abs(x - y) <= 1e-3 * y);
    }
    CHECK(b.K0 >= 1.0);
  }
}

TEST_CASE("kernel is non-increasing in time up to K0") {
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(801, -20.0, 20.0);
  for (const char* name : {"gauss", "quartic", "sextic"}) {
    const KernelSpec k = KernelSpec::by_name(name);
    const double K0 = kernel_constants(k, 2.0, scan_grid(40.0, 1e-3)).K0;
    for (double t1 : {0.1, 0.5, 1.0, 3.0}) {
      const KernelHat a = kernel_hat(k, grid, t1);
      const KernelHat b = kernel_hat(k, grid, 2.5 * t1);
      CHECK((b.g0.abs() <= K0 * a.g0.abs() + 1e-300).all());
    }
  }
}
