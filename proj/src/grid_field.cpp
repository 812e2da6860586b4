#include "wavelab/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fmt/core.h>

#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

void require_same_grid(const Field& a, const Field& b, const char* op) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument(fmt::format("{}: fields live on different grids", op));
    }
}

void require_finite(std::span<const double> v, const char* op) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j])) {
            throw NonFiniteError(fmt::format("{}: non-finite sample {} at index {}", op, v[j], j));
        }
    }
}

// Multiplies each half-spectrum mode m by mult(m, k_m) and transforms back.
template <class Mult>
Field apply_multiplier(const Field& f, Mult&& mult) {
    const Grid1D& g = f.grid();
    auto coeffs = spectral::forward(f.values());
    for (int m = 0; m <= g.n() / 2; ++m) coeffs[m] *= mult(m, g.wavenumber(m));
    return Field(g, spectral::inverse(coeffs, g.n()));
}

}  // namespace

Grid1D::Grid1D(int n, double length) : n_(n), length_(length) {
    if (n < 16 || n % 2 != 0) {
        throw std::invalid_argument(fmt::format("Grid1D: n must be even and >= 16 (got {})", n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument(fmt::format("Grid1D: length must be positive (got {})", length));
    }
}

std::vector<double> Grid1D::points() const {
    std::vector<double> p(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) p[j] = x(j);
    return p;
}

double Grid1D::wavenumber(int m) const noexcept { return 2.0 * std::numbers::pi * m / length_; }

Field::Field(const Grid1D& grid, std::vector<double> samples) : grid_(grid), samples_(std::move(samples)) {
    if (static_cast<int>(samples_.size()) != grid_.n()) {
        throw std::invalid_argument(
            fmt::format("Field: {} samples for a grid of {} points", samples_.size(), grid_.n()));
    }
    require_finite(samples_, "Field");
}

Field Field::zeros(const Grid1D& grid) { return constant(grid, 0.0); }

Field Field::constant(const Grid1D& grid, double value) {
    return Field(grid, std::vector<double>(static_cast<size_t>(grid.n()), value));
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(*this, other, "Field::operator+=");
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
    require_finite(samples_, "Field::operator+=");
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(*this, other, "Field::operator-=");
    for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= other.samples_[j];
    require_finite(samples_, "Field::operator-=");
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : samples_) v *= s;
    require_finite(samples_, "Field::operator*=");
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(Field a, double s) { return a *= s; }
Field operator*(double s, Field a) { return a *= s; }

Field pointwise(const Field& a, const Field& b) {
    require_same_grid(a, b, "pointwise");
    std::vector<double> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] * b[j];
    return Field(a.grid(), std::move(out));
}

Field product(const Field& a, const Field& b, Dealias dealias) {
    if (dealias == Dealias::off) return pointwise(a, b);
    require_same_grid(a, b, "product");
    const int n = a.grid().n();
    const int m = 3 * n / 2 + (3 * n / 2) % 2;
    auto pa = spectral::inverse(spectral::pad(spectral::forward(a.values()), n, m), m);
    auto pb = spectral::inverse(spectral::pad(spectral::forward(b.values()), n, m), m);
    for (int j = 0; j < m; ++j) pa[j] *= pb[j];
    auto back = spectral::truncate(spectral::forward(pa), m, n);
    return Field(a.grid(), spectral::inverse(back, n));
}

Field deriv(const Field& f, int order) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument(fmt::format("deriv: order must be 1, 2 or 3 (got {})", order));
    }
    const int nyquist = f.grid().n() / 2;
    return apply_multiplier(f, [&](int m, double k) -> std::complex<double> {
        if (m == nyquist && order % 2 == 1) return 0.0;
        return std::pow(std::complex<double>(0.0, k), order);
    });
}

Field helmholtz(const Field& f) {
    return apply_multiplier(f, [](int, double k) -> std::complex<double> { return 1.0 + k * k; });
}

Field helmholtz_inv(const Field& f) {
    return apply_multiplier(f, [](int, double k) -> std::complex<double> { return 1.0 / (1.0 + k * k); });
}

double integrate(const Field& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return f.grid().spacing() * sum;
}

Field translate(const Field& f, double shift) {
    const int nyquist = f.grid().n() / 2;
    return apply_multiplier(f, [&](int m, double k) -> std::complex<double> {
        // A real signal cannot carry a complex Nyquist phase; keep the cosine part.
        if (m == nyquist) return std::cos(k * shift);
        return std::polar(1.0, -k * shift);
    });
}

Field spectral_filter(const Field& f, double strength, int order) {
    const int half = f.grid().n() / 2;
    const double cutoff = f.grid().n() / 3.0;
    return apply_multiplier(f, [&](int m, double) -> std::complex<double> {
        if (m <= cutoff) return 1.0;
        const double s = (m - cutoff) / (half - cutoff);
        return std::exp(-strength * std::pow(s, order));
    });
}

Field two_thirds_truncate(const Field& f) {
    const double cutoff = f.grid().n() / 3.0;
    return apply_multiplier(f, [&](int m, double) -> std::complex<double> { return m > cutoff ? 0.0 : 1.0; });
}

TrigInterpolant::TrigInterpolant(const Field& f) : TrigInterpolant(f.grid(), f.values()) {}

TrigInterpolant::TrigInterpolant(const Grid1D& grid, std::span<const double> samples)
    : grid_(grid), coeffs_(spectral::forward(samples)) {
    if (static_cast<int>(samples.size()) != grid.n()) {
        throw std::invalid_argument("TrigInterpolant: sample count does not match grid");
    }
}

double TrigInterpolant::operator()(double x) const { return value_and_slope(x).first; }

std::pair<double, double> TrigInterpolant::value_and_slope(double x) const {
    const int n = grid_.n();
    const int half = n / 2;
    const double theta = 2.0 * std::numbers::pi * (x - grid_.x(0)) / grid_.length();
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> z = step;
    double value = coeffs_[0].real();
    double slope = 0.0;
    for (int m = 1; m < half; ++m) {
        const std::complex<double> term = coeffs_[m] * z;
        value += 2.0 * term.real();
        slope -= 2.0 * grid_.wavenumber(m) * term.imag();
        z *= step;
    }
    value += coeffs_[half].real() * std::cos(half * theta);
    slope -= coeffs_[half].real() * grid_.wavenumber(half) * std::sin(half * theta);
    return {value / n, slope / n};
}

}  // namespace wavelab
