#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "rgflow/kernel.hpp"

namespace rgflow {

enum class Interpolation { Spectral, Cubic };

const char* to_string(Interpolation interp) noexcept;
Interpolation interpolation_from_string(const std::string& name);

/// Symmetric frequency grid w_k = (k - (N-1)/2) h, h = 2 Omega / (N - 1),
/// plus the weight exponent q of the B_q norm.
struct SpaceConfig {
  double q = 2.0;
  double omega_max = 16.0;
  int n = 1025;
  Interpolation interp = Interpolation::Spectral;
  double dealias_pad = 2.0;

  double step() const noexcept { return 2.0 * omega_max / (n - 1); }
  int center() const noexcept { return (n - 1) / 2; }
  double omega(int k) const noexcept { return (k - center()) * step(); }
  Eigen::ArrayXd grid() const;
  /// Same grid, same weight, same numerics.
  bool operator==(const SpaceConfig&) const = default;
  /// Throws a config error when N is even or too small, Omega <= 0 or q <= 1.
  void validate() const;
  /// This grid with Omega divided by `factor`, same N.
  SpaceConfig narrowed(double factor) const;
};

/// A B_q element carried as three spectra on the grid of its config:
/// F0 = f^, F1 = f^' (transform of (-ix) f), F2 = f^'' (transform of -x^2 f).
class SampledFunction {
 public:
  SampledFunction(SpaceConfig cfg, Eigen::ArrayXcd f0, Eigen::ArrayXcd f1, Eigen::ArrayXcd f2,
                  std::string tag = {});

  static SampledFunction zero(const SpaceConfig& cfg, std::string tag = "zero");

  const SpaceConfig& config() const noexcept { return cfg_; }
  const Eigen::ArrayXcd& spectrum(int j) const { return spectra_.at(static_cast<std::size_t>(j)); }
  const Eigen::ArrayXcd& f0() const noexcept { return spectra_[0]; }
  const Eigen::ArrayXcd& f1() const noexcept { return spectra_[1]; }
  const Eigen::ArrayXcd& f2() const noexcept { return spectra_[2]; }
  const std::string& tag() const noexcept { return tag_; }

  SampledFunction with_tag(std::string tag) const;
  /// Copy with the center-node values of F0 and F1 replaced.
  SampledFunction with_center(std::complex<double> mass, std::complex<double> first) const;

  SampledFunction& operator+=(const SampledFunction& other);
  SampledFunction& operator-=(const SampledFunction& other);
  SampledFunction& operator*=(std::complex<double> scale);

 private:
  void require_compatible(const SampledFunction& other) const;

  SpaceConfig cfg_;
  std::array<Eigen::ArrayXcd, 3> spectra_;
  std::string tag_;
};

SampledFunction operator+(SampledFunction a, const SampledFunction& b);
SampledFunction operator-(SampledFunction a, const SampledFunction& b);
SampledFunction operator*(std::complex<double> s, SampledFunction a);
SampledFunction operator*(double s, SampledFunction a);

/// sup_w (1+|w|^q)(|F0|+|F1|+|F2|) over the nodes, for any three spectra on
/// the grid `omega`.
template <typename Omega, typename S0, typename S1, typename S2>
double weighted_sup(const Eigen::ArrayBase<Omega>& omega, const Eigen::ArrayBase<S0>& f0,
                    const Eigen::ArrayBase<S1>& f1, const Eigen::ArrayBase<S2>& f2, double q) {
  return ((1.0 + omega.abs().pow(q)) * (f0.abs() + f1.abs() + f2.abs())).maxCoeff();
}

/// The discrete B_q norm. Throws a corrupted-function error on NaN.
double bq_norm(const SampledFunction& f);

/// Canonical x grid for a config: N nodes, spacing 2pi/(N h), centered on 0.
Eigen::ArrayXd x_grid(const SpaceConfig& cfg);

/// Spectra of f, (-ix) f, -x^2 f with the normalization \int f(x) e^{-iwx} dx.
/// The x grid must be uniform with N nodes of spacing 2pi/(N h); any offset
/// is allowed. Edge samples above 1e-8 of the peak raise a truncation error;
/// above 1e-12 the result is tagged with a truncation warning.
SampledFunction from_x_samples(const Eigen::ArrayXd& x, const Eigen::ArrayXcd& samples, const SpaceConfig& cfg,
                               std::string tag = "from_x");

/// (iw)^order G^(w, time) with closed-form derivative spectra. order 1 at
/// time 1/(p+1) is the profile G_p; order 2 at time 1 is the second
/// derivative profile used as the canonical contracting direction.
SampledFunction make_derivative_profile(const KernelSpec& kernel, int order, double time, const SpaceConfig& cfg);

/// G_p = d/dx G(., 1/(p+1)); F0(0) = 0 and F1(0) = i.
SampledFunction make_Gp(const KernelSpec& kernel, double p, const SpaceConfig& cfg);

struct Moments {
  std::complex<double> mass;
  std::complex<double> first;
  std::complex<double> second;
  /// A = -i F1(0), real for real data.
  double prefactor = 0.0;
};

Moments moments(const SampledFunction& f);

/// Sets F0(0) to exactly 0 when |F0(0)| < tol * ||f||; otherwise the data
/// genuinely carries mass and a not-zero-mass error is raised.
SampledFunction project_zero_mass(const SampledFunction& f, double tol);

/// Per-spectrum amplitudes (c0, c1, c2) applied after a dilation.
struct AmplitudeLaw {
  double c0 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// The amplitude law of x -> a^2 u(a x): (a, 1, 1/a).
inline AmplitudeLaw rg_amplitude_law(double a) { return {a, 1.0, 1.0 / a}; }

struct DilationResult {
  SampledFunction function;
  /// Weighted bound on the spectrum dropped by reads beyond the source band.
  double tail_bound = 0.0;
  /// Weighted interpolation error estimate.
  double interp_error = 0.0;
};

/// G_j(w) = c_j F_j(w / a) on the nodes of `target`, using the source's
/// interpolation rule. Reads beyond the source band return 0 and contribute
/// to the tail bound; a tail bound above 1e-6 ||f|| is a resolution error.
DilationResult dilate(const SampledFunction& f, double a, const AmplitudeLaw& law, const SpaceConfig& target);

/// dilate() onto the source grid, returning only the function.
SampledFunction dilate_spectra(const SampledFunction& f, double a, const AmplitudeLaw& law);

}  // namespace rgflow
