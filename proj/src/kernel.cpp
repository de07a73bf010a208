#include "rgflow/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "rgflow/error.hpp"

namespace rgflow {

KernelSpec::KernelSpec(std::string name, double d, int decay_order, Profile profile)
    : name_(std::move(name)), d_(d), decay_order_(decay_order), profile_(std::move(profile)) {
  if (!(d_ > 1.0)) throw Error(ErrorKind::Domain, "kernel exponent d must exceed 1");
  if (decay_order_ <= 0) throw Error(ErrorKind::Domain, "kernel decay order M must be positive");
  if (!profile_) throw Error(ErrorKind::Domain, "kernel profile is empty");
}

KernelSpec KernelSpec::exp_power(int d) {
  if (d != 2 && d != 4 && d != 6) {
    throw Error(ErrorKind::Domain, "built-in kernels exist for d in {2, 4, 6}");
  }
  const double dd = d;
  auto profile = [d, dd](double w) {
    const double wd2 = std::pow(w, d - 2);  // w^{d-2}
    const double wd1 = wd2 * w;             // w^{d-1}
    const double g = std::exp(-wd1 * w);
    return ProfileValue{g, -dd * wd1 * g, (dd * dd * wd1 * wd1 - dd * (dd - 1.0) * wd2) * g};
  };
  const char* names[] = {"gauss", "quartic", "sextic"};
  return KernelSpec(names[d / 2 - 1], dd, 4, profile);
}

KernelSpec KernelSpec::by_name(std::string_view name) {
  if (name == "gauss") return gauss();
  if (name == "quartic") return quartic();
  if (name == "sextic") return sextic();
  throw Error(ErrorKind::Config, "unknown kernel '" + std::string(name) + "'");
}

std::complex<double> evaluate_kernel_hat(const KernelSpec& spec, double omega, double t, int j) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "kernel time must be positive");
  if (j < 0 || j > 2) throw Error(ErrorKind::UnsupportedOrder, "derivative order must be 0, 1 or 2");
  const double scale = std::pow(t, 1.0 / spec.d());
  const ProfileValue v = spec.profile(scale * omega);
  switch (j) {
    case 0: return v.g;
    case 1: return scale * v.dg;
    default: return scale * scale * v.d2g;
  }
}

KernelHat kernel_hat(const KernelSpec& spec, const Eigen::ArrayXd& omega, double t) {
  const Eigen::Index n = omega.size();
  KernelHat out{Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd(n)};
  if (t == 0.0) {
    out.g0.setOnes();
    out.g1.setZero();
    out.g2.setZero();
    return out;
  }
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "kernel time must be nonnegative");
  const double scale = std::pow(t, 1.0 / spec.d());
  for (Eigen::Index k = 0; k < n; ++k) {
    const ProfileValue v = spec.profile(scale * omega[k]);
    out.g0[k] = v.g;
    out.g1[k] = scale * v.dg;
    out.g2[k] = scale * scale * v.d2g;
  }
  return out;
}

KernelValidation validate_kernel(const KernelSpec& spec, double q, const Eigen::ArrayXd& grid,
                                 double tol) {
  KernelValidation report;
  report.mass_residual = std::abs(spec.profile(0.0).g - 1.0);
  report.mass_ok = report.mass_residual <= tol;

  constexpr double pairs[][2] = {{2.0, 1.0}, {3.0, 1.0}, {3.0, 2.0}, {1.5, 0.5}};
  const double inv_d = 1.0 / spec.d();
  double worst = 0.0;
  for (const auto& pair : pairs) {
    const double t = pair[0], s = pair[1];
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const double w = grid[k];
      const double lhs = spec.profile(std::pow(t, inv_d) * w).g;
      const double rhs = spec.profile(std::pow(t - s, inv_d) * w).g * spec.profile(std::pow(s, inv_d) * w).g;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  report.multiplicativity_residual = worst;
  report.multiplicativity_ok = worst <= tol;

  // Weighted profile (1+|w|^q) w^2 |g^{(j)}| must fall off toward the grid
  // edge: the outermost node is small against the sup and the last 5% of the
  // nodes on each side are nonincreasing outward.
  const Eigen::Index n = grid.size();
  const Eigen::Index band = std::max<Eigen::Index>(2, n / 20);
  bool monotone = true;
  double ratio = 0.0;
  for (int j = 0; j < 3; ++j) {
    Eigen::ArrayXd weighted(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double w = grid[k];
      const ProfileValue v = spec.profile(w);
      const double val = j == 0 ? v.g : (j == 1 ? v.dg : v.d2g);
      weighted[k] = (1.0 + std::pow(std::abs(w), q)) * w * w * std::abs(val);
    }
    const double sup = weighted.maxCoeff();
    if (sup > 0.0) ratio = std::max(ratio, std::max(weighted[0], weighted[n - 1]) / sup);
    for (Eigen::Index k = n - band; k + 1 < n; ++k) {
      if (weighted[k + 1] > weighted[k] * (1.0 + 1e-12) + 1e-300) monotone = false;
    }
    for (Eigen::Index k = band - 1; k > 0; --k) {
      if (weighted[k - 1] > weighted[k] * (1.0 + 1e-12) + 1e-300) monotone = false;
    }
  }
  report.tail_ratio = ratio;
  report.tail_ok = monotone && ratio <= 1e-3;
  return report;
}

KernelConstants kernel_constants(const KernelSpec& spec, double q, const Eigen::ArrayXd& scan) {
  if (scan.size() == 0) throw Error(ErrorKind::Domain, "empty scan grid");
  KernelConstants c;
  c.q = q;
  for (Eigen::Index k = 0; k < scan.size(); ++k) {
    const double w = scan[k];
    const ProfileValue v = spec.profile(w);
    const double weight = (1.0 + std::pow(std::abs(w), q)) * w * w;
    c.K0 = std::max(c.K0, std::abs(v.g));
    c.K1 = std::max(c.K1, std::abs(v.dg));
    c.K2 = std::max(c.K2, std::abs(v.d2g));
    c.C0 = std::max(c.C0, weight * std::abs(v.g));
    c.C1 = std::max(c.C1, weight * std::abs(v.dg));
    c.C2 = std::max(c.C2, weight * std::abs(v.d2g));
  }
  return c;
}

Eigen::ArrayXd scan_grid(double half_width, double step) {
  if (!(half_width > 0.0) || !(step > 0.0)) throw Error(ErrorKind::Domain, "scan grid needs positive width and step");
  const auto half = static_cast<Eigen::Index>(std::ceil(half_width / step));
  Eigen::ArrayXd grid(2 * half + 1);
  for (Eigen::Index k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k - half) * step;
  return grid;
}

}  // namespace rgflow
