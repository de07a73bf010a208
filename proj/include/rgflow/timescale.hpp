#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rgflow {

/// coeff * t^exponent
struct PowerTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};

struct Thresholds {
  double L0 = 0.0;
  double L1 = 0.0;
};

/// The time-dependent coefficient c(t) = t^p + (lower order), its clock
/// s(t) = \int_1^t c, the remainder r(t) = s(t) - (t^{p+1}-1)/(p+1), and the
/// per-scale clocks s_n(t) = (s(L^n t) - s(L^n)) / L^{n(p+1)}.
///
/// Built-in coefficients (pure power, power plus lower powers) have closed
/// form clocks; an arbitrary c falls back on adaptive Gauss-Kronrod.
class TimeScale {
 public:
  static TimeScale pure_power(double p);
  /// c(t) = t^p + sum_k coeff_k t^{e_k}, every e_k < p.
  static TimeScale power_plus_lower(double p, std::vector<PowerTerm> lower);
  /// c must be positive on [1, inf) and behave like t^p + o(t^p).
  static TimeScale from_function(double p, std::function<double(double)> c, double abs_tol = 1e-12);

  double p() const noexcept { return p_; }
  bool closed_form() const noexcept { return !custom_; }
  /// p = 0 is outside the theory's p > 0 but every formula stays valid.
  bool is_extension() const noexcept { return p_ == 0.0; }
  const std::vector<PowerTerm>& lower_terms() const noexcept { return lower_; }

  double c(double t) const;
  double s(double t) const;
  double r(double t) const;
  double s_n(int n, double L, double t) const;
  double r_n(int n, double L, double t) const;
  /// s_n(t) - s_n(tau), computed without cancellation for closed forms.
  double phi_n(int n, double L, double t, double tau) const;
  Thresholds thresholds() const;

  std::string describe() const;

 private:
  TimeScale(double p, std::vector<PowerTerm> lower, std::function<double(double)> custom, double tol);

  double integrate(double a, double b) const;
  double lower_increment(double scale_log, double a, double b) const;

  double p_;
  std::vector<PowerTerm> lower_;
  std::function<double(double)> custom_;
  double tol_;
};

double s_of(const TimeScale& ts, double t);
double s_n_of(const TimeScale& ts, int n, double L, double t);
double phi_n_of(const TimeScale& ts, int n, double L, double t, double tau);
Thresholds thresholds(const TimeScale& ts);

}  // namespace rgflow
