#include "rgflow/function_space.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rgflow/error.hpp"
#include "rgflow/spectral.hpp"

namespace rgflow {

using cplx = std::complex<double>;

const char* to_string(Interpolation interp) noexcept {
  return interp == Interpolation::Cubic ? "cubic" : "spectral";
}

Interpolation interpolation_from_string(const std::string& name) {
  if (name == "cubic") return Interpolation::Cubic;
  if (name == "spectral") return Interpolation::Spectral;
  throw Error(ErrorKind::Config, "unknown interpolation '" + name + "' (expected spectral or cubic)");
}

Eigen::ArrayXd SpaceConfig::grid() const {
  Eigen::ArrayXd w(n);
  for (int k = 0; k < n; ++k) w[k] = omega(k);
  return w;
}

void SpaceConfig::validate() const {
  if (n < 9 || n % 2 == 0) throw Error(ErrorKind::Config, "grid size N must be odd and at least 9");
  if (!(omega_max > 0.0)) throw Error(ErrorKind::Config, "grid half-width must be positive");
  if (!(q > 1.0)) throw Error(ErrorKind::Config, "weight exponent q must exceed 1");
  if (!(dealias_pad >= 1.0)) throw Error(ErrorKind::Config, "dealias padding factor must be at least 1");
}

SpaceConfig SpaceConfig::narrowed(double factor) const {
  SpaceConfig out = *this;
  out.omega_max = omega_max / factor;
  return out;
}

SampledFunction::SampledFunction(SpaceConfig cfg, Eigen::ArrayXcd f0, Eigen::ArrayXcd f1, Eigen::ArrayXcd f2,
                                 std::string tag)
    : cfg_(cfg), spectra_{std::move(f0), std::move(f1), std::move(f2)}, tag_(std::move(tag)) {
  for (const auto& s : spectra_) {
    if (s.size() != cfg_.n) throw Error(ErrorKind::Domain, "spectrum length does not match the grid");
  }
}

SampledFunction SampledFunction::zero(const SpaceConfig& cfg, std::string tag) {
  const Eigen::ArrayXcd z = Eigen::ArrayXcd::Zero(cfg.n);
  return SampledFunction(cfg, z, z, z, std::move(tag));
}

SampledFunction SampledFunction::with_tag(std::string tag) const {
  SampledFunction out = *this;
  out.tag_ = std::move(tag);
  return out;
}

SampledFunction SampledFunction::with_center(cplx mass, cplx first) const {
  SampledFunction out = *this;
  out.spectra_[0][cfg_.center()] = mass;
  out.spectra_[1][cfg_.center()] = first;
  return out;
}

void SampledFunction::require_compatible(const SampledFunction& other) const {
  if (!(cfg_ == other.cfg_)) throw Error(ErrorKind::Domain, "functions live on different grids");
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
  require_compatible(other);
  for (int j = 0; j < 3; ++j) spectra_[j] += other.spectra_[j];
  return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& other) {
  require_compatible(other);
  for (int j = 0; j < 3; ++j) spectra_[j] -= other.spectra_[j];
  return *this;
}

SampledFunction& SampledFunction::operator*=(cplx scale) {
  for (auto& s : spectra_) s *= scale;
  return *this;
}

SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
SampledFunction operator*(cplx s, SampledFunction a) { return a *= s; }
SampledFunction operator*(double s, SampledFunction a) { return a *= cplx(s, 0.0); }

double bq_norm(const SampledFunction& f) {
  // maxCoeff skips NaN unless it comes first, so test the spectra directly
  if (f.f0().hasNaN() || f.f1().hasNaN() || f.f2().hasNaN()) {
    throw Error(ErrorKind::CorruptedFunction, "NaN in spectrum '" + f.tag() + "'");
  }
  return weighted_sup(f.config().grid(), f.f0(), f.f1(), f.f2(), f.config().q);
}

Eigen::ArrayXd x_grid(const SpaceConfig& cfg) {
  const double dx = 2.0 * std::numbers::pi / (cfg.n * cfg.step());
  Eigen::ArrayXd x(cfg.n);
  for (int m = 0; m < cfg.n; ++m) x[m] = (m - cfg.center()) * dx;
  return x;
}

SampledFunction from_x_samples(const Eigen::ArrayXd& x, const Eigen::ArrayXcd& samples, const SpaceConfig& cfg,
                               std::string tag) {
  cfg.validate();
  if (x.size() != cfg.n || samples.size() != cfg.n) {
    throw Error(ErrorKind::Domain, "x grid length must equal the grid size N");
  }
  const double dx = 2.0 * std::numbers::pi / (cfg.n * cfg.step());
  for (Eigen::Index m = 1; m < x.size(); ++m) {
    if (std::abs((x[m] - x[m - 1]) - dx) > 1e-9 * dx) {
      throw Error(ErrorKind::Domain, "x grid must be uniform with spacing 2pi/(N h)");
    }
  }

  const double peak = samples.abs().maxCoeff();
  const double edge = std::max(std::abs(samples[0]), std::abs(samples[cfg.n - 1]));
  if (peak > 0.0 && edge > 1e-8 * peak) {
    throw Error(ErrorKind::Truncation, "samples have not decayed at the x grid ends");
  }
  if (peak > 0.0 && edge > 1e-12 * peak) tag += " [truncation warning]";

  const Eigen::ArrayXcd xs = x.cast<cplx>();
  const Eigen::ArrayXcd f1_x = cplx(0.0, -1.0) * xs * samples;
  const Eigen::ArrayXcd f2_x = -(xs * xs) * samples;

  const double h = cfg.step();
  const Eigen::ArrayXd w = cfg.grid();
  Eigen::ArrayXcd phase(cfg.n);
  for (int k = 0; k < cfg.n; ++k) phase[k] = std::polar(1.0, -w[k] * x[0]);

  return SampledFunction(cfg, phase * spectral::from_x(samples, h, cfg.n), phase * spectral::from_x(f1_x, h, cfg.n),
                         phase * spectral::from_x(f2_x, h, cfg.n), std::move(tag));
}

SampledFunction make_derivative_profile(const KernelSpec& kernel, int order, double time, const SpaceConfig& cfg) {
  cfg.validate();
  if (order < 0) throw Error(ErrorKind::Domain, "derivative order must be nonnegative");
  if (!(time > 0.0)) throw Error(ErrorKind::Domain, "profile time must be positive");
  const double kappa = std::pow(time, 1.0 / kernel.d());
  const cplx I(0.0, 1.0);
  const double k = order;

  Eigen::ArrayXcd f0(cfg.n), f1(cfg.n), f2(cfg.n);
  for (int idx = 0; idx < cfg.n; ++idx) {
    const double w = cfg.omega(idx);
    const ProfileValue v = kernel.profile(kappa * w);
    const double g = v.g, g1 = kappa * v.dg, g2 = kappa * kappa * v.d2g;
    // (iw)^order and its first two derivatives, without 0^0 ambiguity.
    cplx p0(1.0, 0.0), pm1(0.0, 0.0), pm2(0.0, 0.0);
    for (int m = 0; m < order; ++m) {
      pm2 = pm1;
      pm1 = p0;
      p0 *= I * w;
    }
    const cplx d1 = k * I * pm1;
    const cplx d2 = k * (k - 1.0) * I * I * pm2;
    f0[idx] = p0 * g;
    f1[idx] = d1 * g + p0 * g1;
    f2[idx] = d2 * g + 2.0 * d1 * g1 + p0 * g2;
  }
  return SampledFunction(cfg, f0, f1, f2, "d^" + std::to_string(order) + "G");
}

SampledFunction make_Gp(const KernelSpec& kernel, double p, const SpaceConfig& cfg) {
  return make_derivative_profile(kernel, 1, 1.0 / (p + 1.0), cfg).with_tag("G_p");
}

Moments moments(const SampledFunction& f) {
  const int c = f.config().center();
  Moments m;
  m.mass = f.f0()[c];
  m.first = f.f1()[c];
  m.second = f.f2()[c];
  m.prefactor = (cplx(0.0, -1.0) * m.first).real();
  return m;
}

SampledFunction project_zero_mass(const SampledFunction& f, double tol) {
  const cplx mass = f.f0()[f.config().center()];
  const double norm = bq_norm(f);
  if (mass == cplx(0.0, 0.0)) return f;
  if (!(std::abs(mass) < tol * norm)) {
    throw Error(ErrorKind::NotZeroMass, "|F0(0)| = " + std::to_string(std::abs(mass)) + " is not below tol * ||f||");
  }
  return f.with_center(cplx(0.0, 0.0), f.f1()[f.config().center()]);
}

DilationResult dilate(const SampledFunction& f, double a, const AmplitudeLaw& law, const SpaceConfig& target) {
  if (!(a > 0.0)) throw Error(ErrorKind::Domain, "dilation factor must be positive");
  target.validate();
  const SpaceConfig& src = f.config();
  const double h = src.step();
  const double band = src.omega_max * (1.0 + 1e-12);
  const std::array<double, 3> amp{law.c0, law.c1, law.c2};
  const Eigen::ArrayXd w_target = target.grid();
  const Eigen::ArrayXd weight = 1.0 + w_target.abs().pow(target.q);

  std::vector<Eigen::Index> inside;
  inside.reserve(target.n);
  double tail = 0.0;
  std::array<double, 3> edge_lo{}, edge_hi{};
  for (int j = 0; j < 3; ++j) {
    const Eigen::ArrayXcd& s = f.spectrum(j);
    edge_lo[j] = std::max(std::abs(s[0]), std::abs(s[1]));
    edge_hi[j] = std::max(std::abs(s[src.n - 1]), std::abs(s[src.n - 2]));
  }
  for (int k = 0; k < target.n; ++k) {
    const double read = w_target[k] / a;
    if (std::abs(read) <= band) {
      inside.push_back(k);
    } else {
      const auto& edge = read < 0.0 ? edge_lo : edge_hi;
      double bound = 0.0;
      for (int j = 0; j < 3; ++j) bound += std::abs(amp[j]) * edge[j];
      tail = std::max(tail, weight[k] * bound);
    }
  }

  Eigen::ArrayXXcd spectra(src.n, 3);
  for (int j = 0; j < 3; ++j) spectra.col(j) = f.spectrum(j);
  Eigen::ArrayXd reads(static_cast<Eigen::Index>(inside.size()));
  for (std::size_t i = 0; i < inside.size(); ++i) reads[static_cast<Eigen::Index>(i)] = w_target[inside[i]] / a;

  Eigen::ArrayXXcd values;
  double interp_error = 0.0;
  if (src.interp == Interpolation::Cubic) {
    Eigen::ArrayXXd est;
    values = spectral::interpolate_cubic(spectra, h, reads, &est);
    for (std::size_t i = 0; i < inside.size(); ++i) {
      double e = 0.0;
      for (int j = 0; j < 3; ++j) e += std::abs(amp[j]) * est(static_cast<Eigen::Index>(i), j);
      interp_error = std::max(interp_error, weight[inside[i]] * e);
    }
  } else {
    values = spectral::interpolate_spectral(spectra, h, reads);
    double mass = 0.0;
    for (int j = 0; j < 3; ++j) mass += std::abs(amp[j]) * spectral::x_tail_mass(f.spectrum(j), h);
    double wmax = 0.0;
    for (Eigen::Index k : inside) wmax = std::max(wmax, weight[k]);
    // Rounding in the phase-matrix sums sets a floor under the aliasing proxy.
    interp_error = wmax * mass + src.n * std::numeric_limits<double>::epsilon() * bq_norm(f);
  }

  std::array<Eigen::ArrayXcd, 3> out;
  for (int j = 0; j < 3; ++j) {
    out[j] = Eigen::ArrayXcd::Zero(target.n);
    for (std::size_t i = 0; i < inside.size(); ++i) {
      out[j][inside[i]] = amp[j] * values(static_cast<Eigen::Index>(i), j);
    }
  }

  const double norm = bq_norm(f);
  if (tail > 1e-6 * norm) {
    throw Error(ErrorKind::Resolution, "dilation reads beyond the resolved band (tail bound " +
                                           std::to_string(tail) + ")");
  }
  return DilationResult{SampledFunction(target, out[0], out[1], out[2], f.tag()), tail, interp_error};
}

SampledFunction dilate_spectra(const SampledFunction& f, double a, const AmplitudeLaw& law) {
  return dilate(f, a, law, f.config()).function;
}

}  // namespace rgflow
