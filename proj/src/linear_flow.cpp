#include "rgflow/linear_flow.hpp"

#include <cmath>

#include "rgflow/error.hpp"

namespace rgflow {

namespace {

double beta_of(const KernelSpec& kernel, const TimeScale& ts) { return (ts.p() + 1.0) / kernel.d(); }

void require_above_L1(double L, const TimeScale& ts) {
  const Thresholds th = ts.thresholds();
  if (!(L > th.L1)) {
    throw Error(ErrorKind::HypothesisViolation,
                "scale L = " + std::to_string(L) + " does not exceed L1 = " + std::to_string(th.L1));
  }
}

}  // namespace

SampledFunction evolve_by_clock(const SampledFunction& f, const KernelSpec& kernel, double sigma) {
  if (sigma == 0.0) return f;
  const KernelHat k = kernel_hat(kernel, f.config().grid(), sigma);
  const Eigen::ArrayXcd& F0 = f.f0();
  const Eigen::ArrayXcd& F1 = f.f1();
  const Eigen::ArrayXcd& F2 = f.f2();
  Eigen::ArrayXcd g0 = k.g0 * F0;
  Eigen::ArrayXcd g1 = k.g1 * F0 + k.g0 * F1;
  Eigen::ArrayXcd g2 = k.g2 * F0 + 2.0 * k.g1 * F1 + k.g0 * F2;
  return SampledFunction(f.config(), std::move(g0), std::move(g1), std::move(g2), f.tag());
}

SampledFunction linear_evolve(const SampledFunction& f, const KernelSpec& kernel, const TimeScale& ts, int n,
                              double L, double t) {
  return evolve_by_clock(f, kernel, ts.s_n(n, L, t));
}

DilationResult rg_rescale(const SampledFunction& u, double a) {
  return dilate(u, a, rg_amplitude_law(a), u.config());
}

DilationResult linear_rg_map(const SampledFunction& f, int n, double L, const KernelSpec& kernel,
                             const TimeScale& ts) {
  const SampledFunction u = linear_evolve(f, kernel, ts, n, L, L);
  return rg_rescale(u, std::pow(L, beta_of(kernel, ts)));
}

SampledFunction rg_linear_step(const SampledFunction& f, int n, double L, const KernelSpec& kernel,
                               const TimeScale& ts) {
  require_above_L1(L, ts);
  return linear_rg_map(f, n, L, kernel, ts).function;
}

double check_semigroup(const SampledFunction& f, double L, int m, const KernelSpec& kernel, const TimeScale& ts) {
  if (m < 2) throw Error(ErrorKind::Domain, "semigroup check needs m >= 2");
  const SampledFunction one = linear_rg_map(f, 0, std::pow(L, m), kernel, ts).function;
  SampledFunction composed = f;
  for (int k = 0; k < m; ++k) composed = linear_rg_map(composed, k, L, kernel, ts).function;
  return bq_norm(one - composed);
}

LinearStepReport measure_contraction(const SampledFunction& g, int n, double L, const KernelSpec& kernel,
                                     const TimeScale& ts) {
  const double norm = bq_norm(g);
  if (norm == 0.0) throw Error(ErrorKind::DegenerateInput, "contraction ratio undefined for g = 0");
  const Moments m = moments(g);
  if (std::abs(m.mass) > 1e-12 * norm || std::abs(m.first) > 1e-12 * norm) {
    throw Error(ErrorKind::HypothesisViolation, "contraction needs zero mass and zero first moment");
  }
  require_above_L1(L, ts);
  const DilationResult step = linear_rg_map(g, n, L, kernel, ts);
  LinearStepReport report;
  report.n = n;
  report.L = L;
  report.input_norm = norm;
  report.output_norm = bq_norm(step.function);
  report.contraction_ratio = report.output_norm / norm;
  report.interp_error = step.tail_bound + step.interp_error;
  return report;
}

Decomposition decompose_against(const SampledFunction& f, const SampledFunction& reference) {
  const int c = reference.config().center();
  const std::complex<double> I(0.0, 1.0);
  if (std::abs(reference.f1()[c] - I) > 1e-10) {
    throw Error(ErrorKind::BadReference, "reference must have F1(0) = i");
  }
  const double A = (-I * f.f1()[c]).real();
  SampledFunction g = (f - A * reference).with_center(0.0, 0.0).with_tag("g");
  return Decomposition{A, std::move(g)};
}

}  // namespace rgflow
