#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wavelab/grid_field.hpp"

namespace wavelab::variational {

/// How gamma^{-1} and compositions f o gamma^{-1} are evaluated between samples.
enum class InverseMethod {
    /// Monotone cubic (PCHIP) bracket and initial guess, then Newton on the
    /// band-limited interpolant of the displacement. Spectrally accurate.
    spectral,
    /// Everything on the PCHIP interpolant; third-order in h.
    monotone_cubic,
};

/// Which right-invariant Lagrangian: u-action (u^2 + u_x^2) or
/// eta-action ((eta + c0)^2 + eta_x^2).
enum class Lagrangian { u, eta };

const char* to_string(Lagrangian which);

using SpaceTimeFunction = std::function<double(double t, double x)>;

/// gamma(t_k, x_j) = x_j + psi(t_k, x_j) with psi periodic, on K + 1 uniform
/// times over [0, T]. Construction rejects samples where d/dx gamma <= 0.
class DiffeoPath {
public:
    DiffeoPath(const Grid1D& grid, double horizon, std::vector<std::vector<double>> gamma);

    /// Samples gamma = x + psi(t, x) at steps + 1 times.
    static DiffeoPath from_displacement(const Grid1D& grid, double horizon, int steps, const SpaceTimeFunction& psi);

    const Grid1D& grid() const noexcept { return grid_; }
    double horizon() const noexcept { return horizon_; }
    int steps() const noexcept { return static_cast<int>(gamma_.size()) - 1; }
    double dt() const noexcept { return horizon_ / steps(); }
    double time(int k) const noexcept { return k * dt(); }

    std::span<const double> at(int k) const { return gamma_.at(static_cast<std::size_t>(k)); }
    /// psi(t_k, .) = gamma(t_k, .) - x
    Field displacement(int k) const;
    /// Smallest d/dx gamma over all samples (spectral derivative of psi).
    double min_slope() const;

private:
    Grid1D grid_;
    double horizon_;
    std::vector<std::vector<double>> gamma_;
};

/// Variation phi(t_k, x_j) with phi(0, .) = phi(T, .) = 0.
class PathPerturbation {
public:
    explicit PathPerturbation(std::vector<std::vector<double>> phi);

    static PathPerturbation from_function(const Grid1D& grid, int steps, double horizon, const SpaceTimeFunction& phi);
    static PathPerturbation zero(const Grid1D& grid, int steps);

    int steps() const noexcept { return static_cast<int>(phi_.size()) - 1; }
    std::span<const double> at(int k) const { return phi_.at(static_cast<std::size_t>(k)); }

private:
    std::vector<std::vector<double>> phi_;
};

/// gamma + eps phi; throws NotDiffeomorphismError carrying eps when the
/// result is not orientation preserving.
DiffeoPath perturb(const DiffeoPath& path, const PathPerturbation& pert, double eps);

/// Inverse of one sampled diffeomorphism and compositions with it.
class Composer {
public:
    Composer(const Grid1D& grid, std::span<const double> gamma, InverseMethod method);

    /// y_i with gamma(y_i) = X_i for every grid point X_i; |gamma(y_i) - X_i| <= 1e-12.
    const std::vector<double>& preimages() const noexcept { return preimages_; }

    /// (f o gamma^{-1})(X_i) for f sampled at the material grid points.
    Field compose(std::span<const double> material_samples) const;

private:
    Grid1D grid_;
    InverseMethod method_;
    std::vector<double> preimages_;
};

/// d/dt gamma at t_k: centered in the interior, second-order one-sided at k = 0, K.
std::vector<double> material_velocity(const DiffeoPath& path, int k);

/// Eulerian velocity u = gamma_t o gamma^{-1} at time index k in [0, K].
Field spatial_velocity(const DiffeoPath& path, int k, InverseMethod method = InverseMethod::spectral);

/// 1/2 int_0^T int [(u)^2 + (u_x)^2] dx dt, trapezoid in time.
double action(const DiffeoPath& path, InverseMethod method = InverseMethod::spectral);

/// 1/2 int_0^T int [(u + c0)^2 + (u_x)^2] dx dt.
double action_eta(const DiffeoPath& path, double c0, InverseMethod method = InverseMethod::spectral);

double action(const DiffeoPath& path, Lagrangian which, double c0, InverseMethod method);

/// [a(gamma + eps phi) - a(gamma - eps phi)] / (2 eps).
double first_variation_fd(const DiffeoPath& path, const PathPerturbation& pert, double eps, Lagrangian which,
                          double c0, InverseMethod method = InverseMethod::spectral);

/// Pointwise Euler-Lagrange residual at snapshot k (1 <= k < size - 1):
///   u_t - u_txx + 3 u u_x + 2 kappa u_x - 2 u_x u_xx - u u_xxx
/// with centered time differences of spacing dt. For Lagrangian::u the
/// constant is kappa; for Lagrangian::eta it is c0 and the residual is the
/// same expression with kappa = c0.
Field el_residual(std::span<const Field> snapshots, int k, double dt, double kappa_or_c0, Lagrangian which);

struct VariationalReport {
    double d_fd = 0.0;   ///< central difference of the discrete action
    double d_el = 0.0;   ///< -int int (phi o gamma^{-1}) * residual
    double d_mid = 0.0;  ///< linearized integrand before integration by parts
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    double mid_abs_gap = 0.0;
    double mid_rel_gap = 0.0;
    double eps_used = 0.0;

    nlohmann::json to_json() const;
};

/// Computes the three first-variation routes. eps is halved (up to 30 times)
/// while gamma +- eps phi fails to be a diffeomorphism.
VariationalReport verify_variational_identity(const DiffeoPath& path, const PathPerturbation& pert, double eps,
                                              Lagrangian which, double c0,
                                              InverseMethod method = InverseMethod::spectral);

/// psi(t, x) = alpha [sin(k x - t) + cos(2 k x + t / 2) / 2], k = 2 pi / L.
struct SinusoidalDisplacement {
    double alpha = 0.05;
    double length = 6.283185307179586;
    double operator()(double t, double x) const;
};

/// A seeded random trigonometric polynomial r(x) (modes 1..max_mode) times
/// the endpoint bump t (T - t) / T^2.
class BandLimitedPerturbation {
public:
    BandLimitedPerturbation(double length, double horizon, std::uint64_t seed, int max_mode = 4,
                            double amplitude = 1.0);
    double operator()(double t, double x) const;

private:
    double length_;
    double horizon_;
    std::vector<double> cos_coeffs_;
    std::vector<double> sin_coeffs_;
};

/// A continuous problem that can be sampled at any resolution.
struct PathProblem {
    double length = 6.283185307179586;
    double horizon = 1.0;
    SpaceTimeFunction displacement;
    SpaceTimeFunction perturbation;
    Lagrangian which = Lagrangian::u;
    double c0 = 0.0;
};

struct Resolution {
    int n = 256;
    int steps = 64;
    double eps = 1e-3;
};

struct RefinementRow {
    Resolution resolution;
    VariationalReport report;
};

std::vector<RefinementRow> refinement_study(const PathProblem& problem, std::span<const Resolution> levels,
                                            InverseMethod method = InverseMethod::spectral);

nlohmann::json to_json(std::span<const RefinementRow> rows);

/// log2(coarse / fine): observed order for one halving of the step.
double observed_order(double coarse_error, double fine_error);

}  // namespace wavelab::variational
