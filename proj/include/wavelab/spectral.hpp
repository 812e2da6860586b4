#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wavelab::spectral {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized real-to-complex DFT; returns n/2+1 coefficients.
Spectrum forward(std::span<const double> samples);

/// Inverse of forward(): c2r transform scaled by 1/n.
std::vector<double> inverse(const Spectrum& coeffs, int n);

/// Resamples a half-spectrum of an n-point signal onto m points (m >= n),
/// zero-padding the high modes. The Nyquist mode of the source is dropped.
Spectrum pad(const Spectrum& coeffs, int n, int m);

/// Keeps modes |j| < n/2 of an m-point half-spectrum and rescales to n points.
/// The Nyquist mode of the result is zero.
Spectrum truncate(const Spectrum& coeffs, int m, int n);

}  // namespace wavelab::spectral
