#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace rgflow {

/// Profile value and its first two frequency derivatives at one point.
struct ProfileValue {
  double g = 0.0;
  double dg = 0.0;
  double d2g = 0.0;
};

/// A generalized heat kernel given on the Fourier side by its unit-time
/// profile g(w) = G^(w, 1) and homogeneity exponent d, so that
/// G^(w, t) = g(t^{1/d} w). The x-space kernel is never sampled.
class KernelSpec {
 public:
  using Profile = std::function<ProfileValue(double)>;

  KernelSpec(std::string name, double d, int decay_order, Profile profile);

  /// exp(-w^d) for even integer d in {2, 4, 6}.
  static KernelSpec exp_power(int d);
  static KernelSpec gauss() { return exp_power(2); }
  static KernelSpec quartic() { return exp_power(4); }
  static KernelSpec sextic() { return exp_power(6); }
  /// "gauss", "quartic" or "sextic".
  static KernelSpec by_name(std::string_view name);

  const std::string& name() const noexcept { return name_; }
  double d() const noexcept { return d_; }
  int decay_order() const noexcept { return decay_order_; }

  ProfileValue profile(double w) const { return profile_(w); }

 private:
  std::string name_;
  double d_;
  int decay_order_;
  Profile profile_;
};

/// t^{j/d} g^{(j)}(t^{1/d} w) for j in {0, 1, 2}.
std::complex<double> evaluate_kernel_hat(const KernelSpec& spec, double omega, double t, int j);

/// G^(w, t) and its first two w-derivatives on a whole frequency array.
/// t == 0 yields the identity multiplier (1, 0, 0).
struct KernelHat {
  Eigen::ArrayXd g0;
  Eigen::ArrayXd g1;
  Eigen::ArrayXd g2;
};

KernelHat kernel_hat(const KernelSpec& spec, const Eigen::ArrayXd& omega, double t);

struct KernelValidation {
  bool mass_ok = false;
  double mass_residual = 0.0;
  bool multiplicativity_ok = false;
  double multiplicativity_residual = 0.0;
  bool tail_ok = false;
  /// Largest ratio of the weighted edge value to the weighted sup, over j.
  double tail_ratio = 0.0;
  bool passed() const noexcept { return mass_ok && multiplicativity_ok && tail_ok; }
};

/// Checks unit mass, the Fourier semigroup identity at the (t, s) pairs
/// (2,1), (3,1), (3,2), (1.5,0.5), and decay of the weighted tails at the
/// grid edge. Failures are reported, never thrown.
KernelValidation validate_kernel(const KernelSpec& spec, double q, const Eigen::ArrayXd& grid,
                                 double tol);

struct KernelConstants {
  double K0 = 0.0, K1 = 0.0, K2 = 0.0;
  double C0 = 0.0, C1 = 0.0, C2 = 0.0;
  double q = 0.0;
};

/// Discrete sups K_j = sup |g^{(j)}| and C_j = sup (1+|w|^q) w^2 |g^{(j)}|.
KernelConstants kernel_constants(const KernelSpec& spec, double q, const Eigen::ArrayXd& scan);

/// Uniform symmetric scan grid on [-half_width, half_width] with the given step.
Eigen::ArrayXd scan_grid(double half_width, double step);

}  // namespace rgflow
