#include "rgflow/timescale.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rgflow/error.hpp"

namespace rgflow {

namespace {

// \int_a^b tau^e dtau for 0 < a <= b, written to avoid cancellation when a ~ b.
double power_integral(double e, double a, double b) {
  const double log_ratio = std::log(b / a);
  const double k = e + 1.0;
  if (std::abs(k) < 1e-14) return log_ratio;
  return std::pow(a, k) * std::expm1(k * log_ratio) / k;
}

}  // namespace

TimeScale::TimeScale(double p, std::vector<PowerTerm> lower, std::function<double(double)> custom, double tol)
    : p_(p), lower_(std::move(lower)), custom_(std::move(custom)), tol_(tol) {
  if (!(p_ >= 0.0)) throw Error(ErrorKind::Domain, "exponent p must be nonnegative");
  for (const PowerTerm& term : lower_) {
    if (!(term.exponent < p_)) throw Error(ErrorKind::Domain, "lower-order terms need exponent < p");
  }
}

TimeScale TimeScale::pure_power(double p) { return TimeScale(p, {}, {}, 0.0); }

TimeScale TimeScale::power_plus_lower(double p, std::vector<PowerTerm> lower) {
  return TimeScale(p, std::move(lower), {}, 0.0);
}

TimeScale TimeScale::from_function(double p, std::function<double(double)> c, double abs_tol) {
  if (!c) throw Error(ErrorKind::Domain, "empty coefficient function");
  if (!(abs_tol > 0.0)) throw Error(ErrorKind::Domain, "quadrature tolerance must be positive");
  return TimeScale(p, {}, std::move(c), abs_tol);
}

double TimeScale::c(double t) const {
  if (custom_) return custom_(t);
  double value = std::pow(t, p_);
  for (const PowerTerm& term : lower_) value += term.coeff * std::pow(t, term.exponent);
  return value;
}

double TimeScale::integrate(double a, double b) const {
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(custom_, a, b, 20, tol_);
}

// sum_k coeff_k L^{n(e_k - p)} \int_a^b tau^{e_k}, with scale_log = n log L.
double TimeScale::lower_increment(double scale_log, double a, double b) const {
  double sum = 0.0;
  for (const PowerTerm& term : lower_) {
    sum += term.coeff * std::exp(scale_log * (term.exponent - p_)) * power_integral(term.exponent, a, b);
  }
  return sum;
}

double TimeScale::s(double t) const {
  if (!(t >= 1.0)) throw Error(ErrorKind::Domain, "clock s(t) needs t >= 1");
  if (custom_) return integrate(1.0, t);
  return power_integral(p_, 1.0, t) + lower_increment(0.0, 1.0, t);
}

double TimeScale::r(double t) const {
  if (!(t >= 1.0)) throw Error(ErrorKind::Domain, "remainder r(t) needs t >= 1");
  if (custom_) return integrate(1.0, t) - power_integral(p_, 1.0, t);
  return lower_increment(0.0, 1.0, t);
}

namespace {

void check_scale_args(int n, double L, double t) {
  if (n < 0) throw Error(ErrorKind::Domain, "step index must be nonnegative");
  if (!(L > 1.0)) throw Error(ErrorKind::Domain, "scale L must exceed 1");
  if (!(t >= 1.0 && t <= L)) throw Error(ErrorKind::Domain, "time must lie in [1, L]");
}

}  // namespace

double TimeScale::s_n(int n, double L, double t) const {
  check_scale_args(n, L, t);
  const double scale_log = n * std::log(L);
  if (custom_) {
    const double Ln = std::exp(scale_log);
    return integrate(Ln, Ln * t) / std::exp(scale_log * (p_ + 1.0));
  }
  return power_integral(p_, 1.0, t) + lower_increment(scale_log, 1.0, t);
}

double TimeScale::r_n(int n, double L, double t) const {
  check_scale_args(n, L, t);
  if (custom_) return s_n(n, L, t) - power_integral(p_, 1.0, t);
  return lower_increment(n * std::log(L), 1.0, t);
}

double TimeScale::phi_n(int n, double L, double t, double tau) const {
  check_scale_args(n, L, t);
  if (!(tau >= 1.0)) throw Error(ErrorKind::Domain, "tau must be at least 1");
  if (tau > t) throw Error(ErrorKind::Domain, "tau must not exceed t");
  if (tau == t) return 0.0;
  const double scale_log = n * std::log(L);
  if (custom_) {
    const double Ln = std::exp(scale_log);
    return integrate(Ln * tau, Ln * t) / std::exp(scale_log * (p_ + 1.0));
  }
  return power_integral(p_, tau, t) + lower_increment(scale_log, tau, t);
}

Thresholds TimeScale::thresholds() const {
  const double bound = 1.0 / (4.0 * (p_ + 1.0));

  // The remainder must shrink relative to t^{p+1} on a decade ladder.
  double previous = std::numeric_limits<double>::infinity();
  for (double t : {1e2, 1e3, 1e4}) {
    const double rel = std::abs(r(t)) / std::pow(t, p_ + 1.0);
    if (!std::isfinite(rel) || rel > previous) {
      throw Error(ErrorKind::NonAdmissibleTimescale, "r(t)/t^{p+1} does not decay on {1e2, 1e3, 1e4}");
    }
    previous = rel;
  }

  // Geometric scan of [1.1, 1e4] with ratio 1.05; L0 is the first sample from
  // which the defining inequality holds at every later sample.
  std::vector<double> samples;
  for (double L = 1.1; L <= 1e4; L *= 1.05) samples.push_back(L);
  std::size_t first_good = samples.size();
  for (std::size_t k = samples.size(); k-- > 0;) {
    const double L = samples[k];
    if (std::abs(r(L)) / std::pow(L, p_ + 1.0) < bound) {
      first_good = k;
    } else {
      break;
    }
  }
  if (first_good == samples.size()) {
    throw Error(ErrorKind::NonAdmissibleTimescale, "|r(L)|/L^{p+1} stays above 1/[4(p+1)] up to L = 1e4");
  }
  Thresholds th;
  th.L0 = samples[first_good];
  th.L1 = std::max(th.L0, std::pow(3.0, 1.0 / (p_ + 1.0)));
  return th;
}

std::string TimeScale::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (custom_) {
    os << "custom(p=" << p_ << ")";
  } else if (lower_.empty()) {
    os << "pure-power(p=" << p_ << ")";
  } else {
    os << "power-plus-lower(p=" << p_;
    for (const PowerTerm& term : lower_) os << ", " << term.coeff << "*t^" << term.exponent;
    os << ")";
  }
  if (is_extension()) os << " [extension: p=0]";
  return os.str();
}

double s_of(const TimeScale& ts, double t) { return ts.s(t); }
double s_n_of(const TimeScale& ts, int n, double L, double t) { return ts.s_n(n, L, t); }
double phi_n_of(const TimeScale& ts, int n, double L, double t, double tau) { return ts.phi_n(n, L, t, tau); }
Thresholds thresholds(const TimeScale& ts) { return ts.thresholds(); }

}  // namespace rgflow
