#pragma once

#include <Eigen/Core>

namespace rgflow::spectral {

/// Smallest size >= n whose prime factors are 2, 3 and 5.
int fast_size(int n);

/// Samples of f(x) = (1/2pi) \int F(w) e^{iwx} dw from the centered spectrum
/// `spec` (spacing h, length N odd, w = 0 at the middle), zero padded to m
/// x-nodes of spacing 2pi/(m h). Output is in FFT order: entry j sits at
/// x = j dx for j <= m/2 and at (j - m) dx otherwise.
Eigen::ArrayXcd to_x(const Eigen::ArrayXcd& spec, double h, int m);

/// Inverse of to_x: F(w_k) = dx sum_j f_j e^{-i w_k x_j} on the n centered
/// frequency nodes of spacing h. Also returns, through `band_energy`, the
/// fraction of |F|^2 carried by discarded modes and by |w| > band_cut.
Eigen::ArrayXcd from_x(const Eigen::ArrayXcd& samples, double h, int n, double band_cut = -1.0,
                       double* band_energy = nullptr);

/// Band-limited (trigonometric) interpolation of up to three spectra sharing
/// one grid: each column of `spectra` is a centered spectrum of spacing h.
/// Returns values at the frequencies `targets`, one column per spectrum.
/// Targets that coincide with a node (to 1e-9 of a cell) copy the node.
Eigen::ArrayXXcd interpolate_spectral(const Eigen::ArrayXXcd& spectra, double h,
                                      const Eigen::ArrayXd& targets);

/// Piecewise-cubic (four-point Lagrange) interpolation, same layout.
/// `error_estimate` receives |Delta^4 F| * 9/384 per target and column.
Eigen::ArrayXXcd interpolate_cubic(const Eigen::ArrayXXcd& spectra, double h,
                                   const Eigen::ArrayXd& targets,
                                   Eigen::ArrayXXd* error_estimate = nullptr);

/// Magnitude of the x-space tail of a centered spectrum: dx * sum |f_j| over
/// the outermost 5% of x-nodes on each side. Proxy for aliasing error of
/// band-limited interpolation.
double x_tail_mass(const Eigen::ArrayXcd& spec, double h);

}  // namespace rgflow::spectral
