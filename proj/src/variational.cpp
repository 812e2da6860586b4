#include "wavelab/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/fpclassify.hpp>  // pchip.hpp uses isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/core.h>

#include "wavelab/errors.hpp"

namespace wavelab::variational {
namespace {

constexpr int ghost_points = 3;
constexpr double preimage_tolerance = 1e-12;

using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

// PCHIP through the periodic extension of samples on [x_0 - 3h, x_{n-1} + 3h];
// `drift` is added per period (L for gamma, 0 for periodic data).
Pchip periodic_pchip(const Grid1D& grid, std::span<const double> samples, double drift) {
    const int n = grid.n();
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(static_cast<std::size_t>(n + 2 * ghost_points));
    ys.reserve(xs.capacity());
    for (int j = -ghost_points; j < n + ghost_points; ++j) {
        const int wraps = j < 0 ? -1 : (j >= n ? 1 : 0);
        const int idx = j - wraps * n;
        xs.push_back(grid.x(0) + j * grid.spacing());
        ys.push_back(samples[static_cast<std::size_t>(idx)] + wraps * drift);
    }
    return Pchip(std::move(xs), std::move(ys));
}

// Maps y into [x_0, x_0 + L).
double wrap_into_period(const Grid1D& grid, double y) {
    const double x0 = grid.x(0);
    const double shifted = y - grid.length() * std::floor((y - x0) / grid.length());
    return std::min(shifted, x0 + grid.length() - std::numeric_limits<double>::epsilon() * grid.length());
}

double trapezoid_weight(int k, int steps, double dt) { return (k == 0 || k == steps) ? 0.5 * dt : dt; }

// Time derivative of sampled data at level k: centered inside, one-sided second order at the ends.
template <class At>
std::vector<double> time_derivative(At&& at, int k, int steps, double dt, std::size_t n) {
    std::vector<double> d(n);
    if (steps < 2) throw std::invalid_argument("time_derivative: need at least two time steps");
    if (k > 0 && k < steps) {
        const auto a = at(k - 1);
        const auto b = at(k + 1);
        for (std::size_t j = 0; j < n; ++j) d[j] = (b[j] - a[j]) / (2.0 * dt);
    } else if (k == 0) {
        const auto a = at(0);
        const auto b = at(1);
        const auto c = at(2);
        for (std::size_t j = 0; j < n; ++j) d[j] = (-3.0 * a[j] + 4.0 * b[j] - c[j]) / (2.0 * dt);
    } else {
        const auto a = at(steps);
        const auto b = at(steps - 1);
        const auto c = at(steps - 2);
        for (std::size_t j = 0; j < n; ++j) d[j] = (3.0 * a[j] - 4.0 * b[j] + c[j]) / (2.0 * dt);
    }
    return d;
}

double min_gamma_slope(const Grid1D& grid, std::span<const double> gamma) {
    std::vector<double> psi(gamma.begin(), gamma.end());
    for (int j = 0; j < grid.n(); ++j) psi[j] -= grid.x(j);
    const Field slope = deriv(Field(grid, std::move(psi)), 1);
    double m = std::numeric_limits<double>::infinity();
    for (double s : slope.values()) m = std::min(m, 1.0 + s);
    return m;
}

std::uint64_t next_word(std::mt19937_64& rng) { return rng(); }

double uniform_pm1(std::mt19937_64& rng) {
    // 53 random mantissa bits mapped to [-1, 1); portable across standard libraries.
    const double unit = static_cast<double>(next_word(rng) >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

}  // namespace

const char* to_string(Lagrangian which) { return which == Lagrangian::u ? "u" : "eta"; }

DiffeoPath::DiffeoPath(const Grid1D& grid, double horizon, std::vector<std::vector<double>> gamma)
    : grid_(grid), horizon_(horizon), gamma_(std::move(gamma)) {
    if (!(horizon > 0.0)) throw std::invalid_argument("DiffeoPath: horizon must be positive");
    if (gamma_.size() < 3) throw std::invalid_argument("DiffeoPath: need at least three time samples");
    for (const auto& level : gamma_) {
        if (static_cast<int>(level.size()) != grid_.n()) {
            throw std::invalid_argument("DiffeoPath: time level does not match the grid");
        }
    }
    const double slope = min_slope();
    if (!(slope > 0.0)) {
        throw NotDiffeomorphismError(slope, 0.0,
                                     fmt::format("DiffeoPath: d/dx gamma = {:.6g} <= 0; not a diffeomorphism", slope));
    }
}

DiffeoPath DiffeoPath::from_displacement(const Grid1D& grid, double horizon, int steps, const SpaceTimeFunction& psi) {
    if (steps < 2) throw std::invalid_argument("DiffeoPath: need at least two time steps");
    std::vector<std::vector<double>> gamma(static_cast<std::size_t>(steps + 1));
    for (int k = 0; k <= steps; ++k) {
        const double t = horizon * k / steps;
        auto& level = gamma[k];
        level.resize(static_cast<std::size_t>(grid.n()));
        for (int j = 0; j < grid.n(); ++j) level[j] = grid.x(j) + psi(t, grid.x(j));
    }
    return DiffeoPath(grid, horizon, std::move(gamma));
}

Field DiffeoPath::displacement(int k) const {
    const auto g = at(k);
    std::vector<double> psi(g.begin(), g.end());
    for (int j = 0; j < grid_.n(); ++j) psi[j] -= grid_.x(j);
    return Field(grid_, std::move(psi));
}

double DiffeoPath::min_slope() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& level : gamma_) m = std::min(m, min_gamma_slope(grid_, level));
    return m;
}

PathPerturbation::PathPerturbation(std::vector<std::vector<double>> phi) : phi_(std::move(phi)) {
    if (phi_.size() < 3) throw std::invalid_argument("PathPerturbation: need at least three time samples");
    for (const double v : phi_.front()) {
        if (v != 0.0) throw std::invalid_argument("PathPerturbation: phi(0, .) must vanish");
    }
    for (const double v : phi_.back()) {
        if (v != 0.0) throw std::invalid_argument("PathPerturbation: phi(T, .) must vanish");
    }
}

PathPerturbation PathPerturbation::from_function(const Grid1D& grid, int steps, double horizon,
                                                 const SpaceTimeFunction& phi) {
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(steps + 1),
                                             std::vector<double>(static_cast<std::size_t>(grid.n()), 0.0));
    // Endpoints are pinned to zero exactly.
    for (int k = 1; k < steps; ++k) {
        const double t = horizon * k / steps;
        for (int j = 0; j < grid.n(); ++j) samples[k][j] = phi(t, grid.x(j));
    }
    return PathPerturbation(std::move(samples));
}

PathPerturbation PathPerturbation::zero(const Grid1D& grid, int steps) {
    return PathPerturbation(std::vector<std::vector<double>>(static_cast<std::size_t>(steps + 1),
                                                             std::vector<double>(static_cast<std::size_t>(grid.n()), 0.0)));
}

DiffeoPath perturb(const DiffeoPath& path, const PathPerturbation& pert, double eps) {
    if (pert.steps() != path.steps()) throw std::invalid_argument("perturb: time grids differ");
    std::vector<std::vector<double>> gamma(static_cast<std::size_t>(path.steps() + 1));
    for (int k = 0; k <= path.steps(); ++k) {
        const auto g = path.at(k);
        const auto p = pert.at(k);
        if (p.size() != g.size()) throw std::invalid_argument("perturb: spatial grids differ");
        gamma[k].resize(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) gamma[k][j] = g[j] + eps * p[j];
    }
    try {
        return DiffeoPath(path.grid(), path.horizon(), std::move(gamma));
    } catch (const NotDiffeomorphismError& e) {
        throw NotDiffeomorphismError(
            e.min_slope(), eps,
            fmt::format("perturbed path with eps = {:.6g} is not a diffeomorphism (min slope {:.6g})", eps,
                        e.min_slope()));
    }
}

Composer::Composer(const Grid1D& grid, std::span<const double> gamma, InverseMethod method)
    : grid_(grid), method_(method) {
    const int n = grid.n();
    const double length = grid.length();
    const Pchip interp = periodic_pchip(grid, gamma, length);

    std::vector<double> psi(gamma.begin(), gamma.end());
    for (int j = 0; j < n; ++j) psi[j] -= grid.x(j);
    const TrigInterpolant trig(grid, psi);

    // gamma at x_0 .. x_n, with gamma(x_n) = gamma(x_0) + L.
    std::vector<double> knots(gamma.begin(), gamma.end());
    knots.push_back(gamma[0] + length);

    preimages_.resize(static_cast<std::size_t>(n));
    const int digits = std::numeric_limits<double>::digits - 4;
    for (int i = 0; i < n; ++i) {
        const double target = grid.x(i);
        // Shift the target into [gamma(x_0), gamma(x_0) + L) and remember the period count.
        const double periods = std::floor((target - knots.front()) / length);
        const double shifted = target - periods * length;
        const auto it = std::upper_bound(knots.begin(), knots.end(), shifted);
        const int cell = std::clamp(static_cast<int>(it - knots.begin()) - 1, 0, n - 1);
        const double lo = grid.x(0) + cell * grid.spacing();
        const double hi = lo + grid.spacing();

        std::uintmax_t iterations = 100;
        auto cubic = [&](double y) { return std::make_pair(interp(y) - shifted, interp.prime(y)); };
        const double guess = boost::math::tools::newton_raphson_iterate(cubic, 0.5 * (lo + hi), lo, hi, digits,
                                                                        iterations);
        double y = guess;
        double residual = interp(y) - shifted;
        if (method == InverseMethod::spectral) {
            const double margin = grid.spacing();
            auto band_limited = [&](double s) {
                const auto [value, slope] = trig.value_and_slope(s);
                return std::make_pair(s + value - shifted, 1.0 + slope);
            };
            iterations = 100;
            y = boost::math::tools::newton_raphson_iterate(band_limited, guess, lo - margin, hi + margin, digits,
                                                           iterations);
            residual = band_limited(y).first;
        }
        if (!(std::abs(residual) <= preimage_tolerance)) {
            throw std::runtime_error(
                fmt::format("Composer: inverse did not converge at X = {:.17g} (residual {:.3g})", target, residual));
        }
        preimages_[i] = y + periods * length;
    }
}

Field Composer::compose(std::span<const double> material_samples) const {
    const int n = grid_.n();
    if (static_cast<int>(material_samples.size()) != n) {
        throw std::invalid_argument("Composer::compose: sample count does not match grid");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    if (method_ == InverseMethod::spectral) {
        const TrigInterpolant trig(grid_, material_samples);
        for (int i = 0; i < n; ++i) out[i] = trig(preimages_[i]);
    } else {
        const Pchip interp = periodic_pchip(grid_, material_samples, 0.0);
        for (int i = 0; i < n; ++i) out[i] = interp(wrap_into_period(grid_, preimages_[i]));
    }
    return Field(grid_, std::move(out));
}

std::vector<double> material_velocity(const DiffeoPath& path, int k) {
    if (k < 0 || k > path.steps()) throw std::out_of_range(fmt::format("material_velocity: time index {} out of range", k));
    return time_derivative([&](int i) { return path.at(i); }, k, path.steps(), path.dt(),
                           static_cast<std::size_t>(path.grid().n()));
}

Field spatial_velocity(const DiffeoPath& path, int k, InverseMethod method) {
    const auto gamma_t = material_velocity(path, k);
    const Composer composer(path.grid(), path.at(k), method);
    return composer.compose(gamma_t);
}

double action(const DiffeoPath& path, Lagrangian which, double c0, InverseMethod method) {
    const double offset = which == Lagrangian::eta ? c0 : 0.0;
    const int steps = path.steps();
    double total = 0.0;
    for (int k = 0; k <= steps; ++k) {
        const Field u = spatial_velocity(path, k, method);
        const Field ux = deriv(u, 1);
        const Field shifted = u + Field::constant(u.grid(), offset);
        const double density = 0.5 * integrate(pointwise(shifted, shifted) + pointwise(ux, ux));
        total += trapezoid_weight(k, steps, path.dt()) * density;
    }
    return total;
}

double action(const DiffeoPath& path, InverseMethod method) { return action(path, Lagrangian::u, 0.0, method); }

double action_eta(const DiffeoPath& path, double c0, InverseMethod method) {
    return action(path, Lagrangian::eta, c0, method);
}

double first_variation_fd(const DiffeoPath& path, const PathPerturbation& pert, double eps, Lagrangian which,
                          double c0, InverseMethod method) {
    if (!(eps > 0.0)) throw std::invalid_argument("first_variation_fd: eps must be positive");
    const double plus = action(perturb(path, pert, eps), which, c0, method);
    const double minus = action(perturb(path, pert, -eps), which, c0, method);
    return (plus - minus) / (2.0 * eps);
}

Field el_residual(std::span<const Field> snapshots, int k, double dt, double kappa_or_c0, Lagrangian which) {
    if (k < 1 || k + 1 >= static_cast<int>(snapshots.size())) {
        throw std::out_of_range(fmt::format("el_residual: index {} needs neighbours on both sides", k));
    }
    if (!(dt > 0.0)) throw std::invalid_argument("el_residual: dt must be positive");
    (void)which;  // both Lagrangians share the residual; only the constant's meaning differs
    const Field& u = snapshots[static_cast<std::size_t>(k)];
    const Field ut = (snapshots[static_cast<std::size_t>(k + 1)] - snapshots[static_cast<std::size_t>(k - 1)]) *
                     (0.5 / dt);
    const Field ux = deriv(u, 1);
    const Field uxx = deriv(u, 2);
    const Field uxxx = deriv(u, 3);
    Field r = ut - deriv(ut, 2) + 3.0 * pointwise(u, ux) - 2.0 * pointwise(ux, uxx) - pointwise(u, uxxx);
    if (kappa_or_c0 != 0.0) r += 2.0 * kappa_or_c0 * ux;
    return r;
}

nlohmann::json VariationalReport::to_json() const {
    return {{"D_fd", d_fd},       {"D_el", d_el},         {"D_mid", d_mid},
            {"abs_gap", abs_gap}, {"rel_gap", rel_gap},   {"mid_abs_gap", mid_abs_gap},
            {"mid_rel_gap", mid_rel_gap}, {"eps_used", eps_used}};
}

VariationalReport verify_variational_identity(const DiffeoPath& path, const PathPerturbation& pert, double eps,
                                              Lagrangian which, double c0, InverseMethod method) {
    if (pert.steps() != path.steps()) throw std::invalid_argument("verify_variational_identity: time grids differ");
    VariationalReport report;

    double trial = eps;
    for (int attempt = 0;; ++attempt) {
        try {
            report.d_fd = first_variation_fd(path, pert, trial, which, c0, method);
            break;
        } catch (const NotDiffeomorphismError&) {
            if (attempt == 30) throw;
            trial *= 0.5;
        }
    }
    report.eps_used = trial;

    const Grid1D& grid = path.grid();
    const int steps = path.steps();
    const double dt = path.dt();
    const double offset = which == Lagrangian::eta ? c0 : 0.0;

    std::vector<Field> u;
    std::vector<Field> w;
    u.reserve(static_cast<std::size_t>(steps + 1));
    w.reserve(static_cast<std::size_t>(steps + 1));
    for (int k = 0; k <= steps; ++k) {
        const Composer composer(grid, path.at(k), method);
        u.push_back(composer.compose(material_velocity(path, k)));
        w.push_back(composer.compose(pert.at(k)));
    }

    // Integrated-by-parts route.
    double d_el = 0.0;
    for (int k = 1; k < steps; ++k) {
        const Field r = el_residual(u, k, dt, offset, which);
        d_el -= dt * integrate(pointwise(w[k], r));
    }
    report.d_el = d_el;

    // Linearized integrand: (u + c0) du + u_x (du)_x with
    // du = d_t w + u w_x - w u_x, w = phi o gamma^{-1}.
    double d_mid = 0.0;
    for (int k = 0; k <= steps; ++k) {
        const Field wt(grid, time_derivative([&](int i) { return w[i].values(); }, k, steps, dt,
                                             static_cast<std::size_t>(grid.n())));
        const Field ux = deriv(u[k], 1);
        const Field du = wt + pointwise(u[k], deriv(w[k], 1)) - pointwise(w[k], ux);
        const Field shifted = u[k] + Field::constant(grid, offset);
        const double density = integrate(pointwise(shifted, du) + pointwise(ux, deriv(du, 1)));
        d_mid += trapezoid_weight(k, steps, dt) * density;
    }
    report.d_mid = d_mid;

    const double scale = std::abs(report.d_fd);
    report.abs_gap = std::abs(report.d_fd - report.d_el);
    report.mid_abs_gap = std::abs(report.d_fd - report.d_mid);
    report.rel_gap = scale > 0.0 ? report.abs_gap / scale : report.abs_gap;
    report.mid_rel_gap = scale > 0.0 ? report.mid_abs_gap / scale : report.mid_abs_gap;
    return report;
}

double SinusoidalDisplacement::operator()(double t, double x) const {
    const double k = 2.0 * std::numbers::pi / length;
    return alpha * (std::sin(k * x - t) + 0.5 * std::cos(2.0 * k * x + 0.5 * t));
}

BandLimitedPerturbation::BandLimitedPerturbation(double length, double horizon, std::uint64_t seed, int max_mode,
                                                 double amplitude)
    : length_(length), horizon_(horizon) {
    if (max_mode < 1) throw std::invalid_argument("BandLimitedPerturbation: max_mode must be >= 1");
    std::mt19937_64 rng(seed);
    for (int m = 1; m <= max_mode; ++m) {
        cos_coeffs_.push_back(amplitude * uniform_pm1(rng) / max_mode);
        sin_coeffs_.push_back(amplitude * uniform_pm1(rng) / max_mode);
    }
}

double BandLimitedPerturbation::operator()(double t, double x) const {
    const double k = 2.0 * std::numbers::pi / length_;
    double r = 0.0;
    for (std::size_t m = 0; m < cos_coeffs_.size(); ++m) {
        const double arg = k * static_cast<double>(m + 1) * x;
        r += cos_coeffs_[m] * std::cos(arg) + sin_coeffs_[m] * std::sin(arg);
    }
    return r * t * (horizon_ - t) / (horizon_ * horizon_);
}

std::vector<RefinementRow> refinement_study(const PathProblem& problem, std::span<const Resolution> levels,
                                            InverseMethod method) {
    std::vector<RefinementRow> rows;
    for (const Resolution& res : levels) {
        const Grid1D grid(res.n, problem.length);
        const DiffeoPath path = DiffeoPath::from_displacement(grid, problem.horizon, res.steps, problem.displacement);
        const PathPerturbation pert =
            PathPerturbation::from_function(grid, res.steps, problem.horizon, problem.perturbation);
        rows.push_back({res, verify_variational_identity(path, pert, res.eps, problem.which, problem.c0, method)});
    }
    return rows;
}

nlohmann::json to_json(std::span<const RefinementRow> rows) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json entry = row.report.to_json();
        entry["n"] = row.resolution.n;
        entry["K"] = row.resolution.steps;
        entry["eps"] = row.resolution.eps;
        table.push_back(std::move(entry));
    }
    return table;
}

double observed_order(double coarse_error, double fine_error) { return std::log2(coarse_error / fine_error); }

}  // namespace wavelab::variational
