#include "rgflow/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "rgflow/error.hpp"

namespace rgflow::spectral {

namespace {

using cplx = std::complex<double>;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

int wrap(int k, int m) { return ((k % m) + m) % m; }

}  // namespace

int fast_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int f : {2, 3, 5}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

Eigen::ArrayXcd to_x(const Eigen::ArrayXcd& spec, double h, int m) {
  const int n = static_cast<int>(spec.size());
  if (m < n) throw Error(ErrorKind::Domain, "padded size smaller than the spectrum");
  const int c = (n - 1) / 2;
  std::vector<cplx> in(m, cplx(0.0, 0.0)), out;
  for (int k = 0; k < n; ++k) in[wrap(k - c, m)] = spec[k];
  fft_engine().inv(out, in);
  const double scale = h / (2.0 * std::numbers::pi);
  Eigen::ArrayXcd x(m);
  for (int j = 0; j < m; ++j) x[j] = out[j] * scale;
  return x;
}

Eigen::ArrayXcd from_x(const Eigen::ArrayXcd& samples, double h, int n, double band_cut, double* band_energy) {
  const int m = static_cast<int>(samples.size());
  if (m < n) throw Error(ErrorKind::Domain, "x grid shorter than the spectrum");
  const int c = (n - 1) / 2;
  std::vector<cplx> in(samples.data(), samples.data() + m), out;
  fft_engine().fwd(out, in);
  const double dx = 2.0 * std::numbers::pi / (m * h);
  Eigen::ArrayXcd spec(n);
  for (int k = 0; k < n; ++k) spec[k] = out[wrap(k - c, m)] * dx;

  if (band_energy) {
    double total = 0.0;
    for (const cplx& v : out) total += std::norm(v);
    double kept_in_band = 0.0;
    for (int k = 0; k < n; ++k) {
      const double w = (k - c) * h;
      if (band_cut < 0.0 || std::abs(w) <= band_cut) kept_in_band += std::norm(out[wrap(k - c, m)]);
    }
    *band_energy = total > 0.0 ? std::max(0.0, total - kept_in_band) / total : 0.0;
  }
  return spec;
}

Eigen::ArrayXXcd interpolate_spectral(const Eigen::ArrayXXcd& spectra, double h, const Eigen::ArrayXd& targets) {
  const int n = static_cast<int>(spectra.rows());
  const Eigen::Index cols = spectra.cols();
  const int c = (n - 1) / 2;
  const double dx = 2.0 * std::numbers::pi / (n * h);

  Eigen::MatrixXcd samples(n, cols);
  for (Eigen::Index col = 0; col < cols; ++col) samples.col(col) = to_x(spectra.col(col), h, n).matrix();

  Eigen::ArrayXXcd out(targets.size(), cols);
  std::vector<Eigen::Index> off_node;
  off_node.reserve(targets.size());
  for (Eigen::Index t = 0; t < targets.size(); ++t) {
    const double s = targets[t] / h + c;
    const double nearest = std::round(s);
    if (std::abs(s - nearest) < 1e-9 && nearest >= 0 && nearest < n) {
      out.row(t) = spectra.row(static_cast<Eigen::Index>(nearest));
    } else {
      off_node.push_back(t);
    }
  }
  if (off_node.empty()) return out;

  Eigen::MatrixXcd phases(static_cast<Eigen::Index>(off_node.size()), n);
  for (std::size_t r = 0; r < off_node.size(); ++r) {
    const double w = targets[off_node[r]];
    for (int j = 0; j < n; ++j) {
      const double x = (j <= n / 2 ? j : j - n) * dx;
      phases(static_cast<Eigen::Index>(r), j) = std::polar(dx, -w * x);
    }
  }
  const Eigen::MatrixXcd values = phases * samples;
  for (std::size_t r = 0; r < off_node.size(); ++r) out.row(off_node[r]) = values.row(static_cast<Eigen::Index>(r)).array();
  return out;
}

Eigen::ArrayXXcd interpolate_cubic(const Eigen::ArrayXXcd& spectra, double h, const Eigen::ArrayXd& targets,
                                   Eigen::ArrayXXd* error_estimate) {
  const int n = static_cast<int>(spectra.rows());
  if (n < 5) throw Error(ErrorKind::Domain, "cubic interpolation needs at least 5 nodes");
  const Eigen::Index cols = spectra.cols();
  const int c = (n - 1) / 2;
  Eigen::ArrayXXcd out(targets.size(), cols);
  if (error_estimate) error_estimate->resize(targets.size(), cols);

  for (Eigen::Index t = 0; t < targets.size(); ++t) {
    const double s = targets[t] / h + c;
    const int start = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, n - 4);
    const double u = s - start;
    const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    out.row(t) = l0 * spectra.row(start) + l1 * spectra.row(start + 1) + l2 * spectra.row(start + 2) +
                 l3 * spectra.row(start + 3);
    if (error_estimate) {
      const int s5 = std::min(start, n - 5);
      for (Eigen::Index col = 0; col < cols; ++col) {
        const cplx d4 = spectra(s5, col) - 4.0 * spectra(s5 + 1, col) + 6.0 * spectra(s5 + 2, col) -
                        4.0 * spectra(s5 + 3, col) + spectra(s5 + 4, col);
        (*error_estimate)(t, col) = std::abs(d4) * 9.0 / 384.0;
      }
    }
  }
  return out;
}

double x_tail_mass(const Eigen::ArrayXcd& spec, double h) {
  const int n = static_cast<int>(spec.size());
  const Eigen::ArrayXcd f = to_x(spec, h, n);
  const double dx = 2.0 * std::numbers::pi / (n * h);
  const int c = (n - 1) / 2;
  const int inner = c - std::max(1, n / 20);
  double mass = 0.0;
  for (int j = 0; j < n; ++j) {
    const int centered = j <= n / 2 ? j : j - n;
    if (std::abs(centered) > inner) mass += std::abs(f[j]);
  }
  return mass * dx;
}

}  // namespace rgflow::spectral
