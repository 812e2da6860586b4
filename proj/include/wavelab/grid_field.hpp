#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wavelab/spectral.hpp"

namespace wavelab {

/// Uniform periodic grid on [-L/2, L/2): x_j = -L/2 + j*h, j = 0..n-1.
class Grid1D {
public:
    /// n must be even and at least 16; length must be positive and finite.
    Grid1D(int n, double length);

    int n() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / n_; }
    double x(int j) const noexcept { return -0.5 * length_ + j * spacing(); }
    std::vector<double> points() const;

    /// Angular wavenumber of half-spectrum index m: 2*pi*m/L.
    double wavenumber(int m) const noexcept;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    int n_;
    double length_;
};

enum class Dealias { off, on };

/// A real scalar sampled on a Grid1D. Every sample is finite.
class Field {
public:
    /// Throws std::invalid_argument on size mismatch, NonFiniteError on NaN/Inf.
    Field(const Grid1D& grid, std::vector<double> samples);

    static Field zeros(const Grid1D& grid);
    static Field constant(const Grid1D& grid, double value);

    template <class F>
    static Field sample(const Grid1D& grid, F&& f) {
        std::vector<double> v(static_cast<size_t>(grid.n()));
        for (int j = 0; j < grid.n(); ++j) v[j] = f(grid.x(j));
        return Field(grid, std::move(v));
    }

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t j) const noexcept { return samples_[j]; }

    double max_abs() const noexcept;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

private:
    Grid1D grid_;
    std::vector<double> samples_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(Field a, double s);
Field operator*(double s, Field a);

/// Pointwise product on the grid (aliasing allowed).
Field pointwise(const Field& a, const Field& b);

/// Product of two fields; with Dealias::on the product is formed on a 3/2-padded
/// grid and truncated back, so no aliased mode reaches the retained spectrum.
Field product(const Field& a, const Field& b, Dealias dealias);

/// Spectral derivative of order 1, 2 or 3. Odd orders zero the Nyquist mode.
Field deriv(const Field& f, int order);

/// Applies (1 - d^2/dx^2).
Field helmholtz(const Field& f);

/// Solves (1 - d^2/dx^2) w = f; w_k = f_k / (1 + k^2).
Field helmholtz_inv(const Field& f);

/// Periodic trapezoid rule h * sum f_j.
double integrate(const Field& f);

/// Spectral translation: returns f(x - shift), exact for band-limited f.
Field translate(const Field& f, double shift);

/// Exponential damping of the upper third of the spectrum; modes |m| <= n/3
/// are untouched.
Field spectral_filter(const Field& f, double strength = 36.0, int order = 8);

/// Zeroes modes |m| > n/3.
Field two_thirds_truncate(const Field& f);

/// Band-limited interpolant of a periodic Field, evaluable at any x.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const Field& f);
    TrigInterpolant(const Grid1D& grid, std::span<const double> samples);

    double operator()(double x) const;
    /// Value and first derivative at x.
    std::pair<double, double> value_and_slope(double x) const;

private:
    Grid1D grid_;
    spectral::Spectrum coeffs_;
};

}  // namespace wavelab
