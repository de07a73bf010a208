#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "rgflow/timescale.hpp"
#include "support.hpp"

using namespace rgflow;

TEST_CASE("clock values") {
  CHECK(s_of(TimeScale::pure_power(0.0), 5.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(s_of(TimeScale::pure_power(1.0), 3.0) == doctest::Approx(4.0).epsilon(1e-15));
  const TimeScale lin = TimeScale::power_plus_lower(1.0, {{1.0, 0.0}});
  const double oracle = rgflow::test::trapezoid([](double t) { return t + 1.0; }, 1.0, 3.0, 1000);
  CHECK(s_of(lin, 3.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(s_of(lin, 3.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK_KIND(s_of(lin, 0.5), ErrorKind::Domain);
}

TEST_CASE("quadrature fallback matches the closed form") {
  const TimeScale closed = TimeScale::power_plus_lower(1.5, {{2.0, 0.5}});
  const TimeScale quad = TimeScale::from_function(1.5, [](double t) { return std::pow(t, 1.5) + 2.0 * std::sqrt(t); });
  CHECK_FALSE(quad.closed_form());
  for (double t : {1.0, 2.0, 7.5, 40.0}) {
    CHECK(quad.s(t) == doctest::Approx(closed.s(t)).epsilon(1e-10));
  }
  CHECK(quad.s_n(3, 4.0, 2.5) == doctest::Approx(closed.s_n(3, 4.0, 2.5)).epsilon(1e-10));
}

TEST_CASE("renormalized clocks") {
  const TimeScale one = TimeScale::pure_power(0.0);
  for (int n : {0, 1, 5}) CHECK(s_n_of(one, n, 4.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s_n_of(TimeScale::pure_power(1.0), 1, 2.0, 2.0) == doctest::Approx((16.0 - 4.0) / 8.0).epsilon(1e-15));
  CHECK(s_n_of(TimeScale::pure_power(1.0), 0, 2.0, 1.0) == 0.0);
  CHECK_KIND(s_n_of(one, 0, 4.0, 5.0), ErrorKind::Domain);
  CHECK_KIND(s_n_of(one, 0, 4.0, 0.9), ErrorKind::Domain);
}

TEST_CASE("pure power clocks do not depend on n") {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    const TimeScale ts = TimeScale::pure_power(p);
    for (int n = 0; n <= 12; ++n) {
      for (double t : {1.0, 1.7, 3.0}) {
        const double exact = (std::pow(t, p + 1.0) - 1.0) / (p + 1.0);
        CHECK(ts.s_n(n, 3.0, t) == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("clock increments") {
  const TimeScale one = TimeScale::pure_power(0.0);
  CHECK(phi_n_of(one, 2, 4.0, 3.0, 3.0) == 0.0);
  for (int n : {0, 3}) CHECK(phi_n_of(one, n, 4.0, 4.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi_n_of(TimeScale::pure_power(1.0), 0, 4.0, 3.0, 2.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK_KIND(phi_n_of(one, 0, 4.0, 2.0, 3.0), ErrorKind::Domain);
  const TimeScale lin = TimeScale::power_plus_lower(1.0, {{1.0, 0.0}});
  for (int n : {0, 4, 10}) {
    const double direct = lin.s_n(n, 8.0, 6.0) - lin.s_n(n, 8.0, 2.0);
    CHECK(lin.phi_n(n, 8.0, 6.0, 2.0) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("thresholds") {
  CHECK(thresholds(TimeScale::pure_power(0.0)).L1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(thresholds(TimeScale::pure_power(1.0)).L1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // oracle: bisection root of (L - 1)/L^2 = 1/8 on the decreasing branch
  const auto f = [](double L) { return (L - 1.0) / (L * L) - 0.125; };
  boost::math::tools::eps_tolerance<double> tol(50);
  const auto [lo, hi] = boost::math::tools::bisect(f, 3.0, 20.0, tol);
  const double root = 0.5 * (lo + hi);
  CHECK(root == doctest::Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
  const Thresholds th = thresholds(TimeScale::power_plus_lower(1.0, {{1.0, 0.0}}));
  CHECK(th.L0 >= root);
  CHECK(th.L0 < 1.05 * root);
  CHECK(th.L1 == th.L0);
}

TEST_CASE("remainder bounds beyond L1") {
  const TimeScale lin = TimeScale::power_plus_lower(1.0, {{1.0, 0.0}});
  const double p = 1.0;
  const double L1 = lin.thresholds().L1;
  for (double L : {L1 + 1.0, 2.0 * L1}) {
    const double Lp = std::pow(L, p + 1.0);
    for (int n = 0; n <= 12; ++n) {
      // the remainder bound holds relative to L^{p+1}; at n = 0, r_0(L) = L - 1
      CHECK(std::abs(lin.r_n(n, L, L)) < Lp / (2.0 * (p + 1.0)));
      const double ratio = lin.s_n(n, L, L) / Lp;
      CHECK(ratio > 1.0 / (6.0 * (p + 1.0)));
      CHECK(ratio < 3.0 / (2.0 * (p + 1.0)));
    }
  }
}

TEST_CASE("non-admissible time scale") {
  // r(t) ~ t^{p+1} does not decay relative to t^{p+1}
  const TimeScale bad = TimeScale::from_function(1.0, [](double t) { return 3.0 * t; });
  CHECK_KIND(bad.thresholds(), ErrorKind::NonAdmissibleTimescale);
}
