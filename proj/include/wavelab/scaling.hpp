#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/grid_field.hpp"

namespace wavelab::scaling {

/// Dimensional constants of the free-surface problem (SI units).
struct ScalingParams {
    double h0 = 1.0;        ///< undisturbed depth [m]
    double lambda = 10.0;   ///< horizontal length scale [m]
    double a = 0.1;         ///< amplitude scale [m]
    double g = 9.81;        ///< gravity [m/s^2]
    double rho = 1000.0;    ///< density [kg/m^3]
    double p0 = 101325.0;   ///< atmospheric pressure [Pa]

    /// Throws std::invalid_argument unless every constant is strictly positive.
    void validate() const;
    double eps() const;    ///< amplitude parameter a/h0
    double delta() const;  ///< shallowness parameter h0/lambda
};

/// Stage of the change-of-variables pipeline a bundle lives in.
enum class Frame { physical, nondim, scaled, delta_removed };

const char* to_string(Frame f);

/// Point samples of (x, z, t, u, v, p, eta). Every member has the same length
/// and the whole bundle carries a single frame tag.
struct VariableBundle {
    Frame frame = Frame::physical;
    std::vector<double> x, z, t, u, v, p, eta;

    std::size_t size() const noexcept { return x.size(); }
    void validate() const;
};

// Each forward map rejects a bundle in any frame other than its source frame;
// each inverse rejects anything other than its target frame.
VariableBundle to_nondim(const VariableBundle& b, const ScalingParams& params);
VariableBundle from_nondim(const VariableBundle& b, const ScalingParams& params);

VariableBundle scale_small_amplitude(const VariableBundle& b, double eps);
VariableBundle unscale_small_amplitude(const VariableBundle& b, double eps);

VariableBundle remove_delta(const VariableBundle& b, double eps, double delta);
VariableBundle restore_delta(const VariableBundle& b, double eps, double delta);

/// Max relative discrepancy between two bundles over all seven variables;
/// each variable is normalized by max(1, its largest magnitude in `reference`).
double max_relative_difference(const VariableBundle& reference, const VariableBundle& other);

/// Three consecutive snapshots (t - dt, t, t + dt) of the delta-removed
/// variables sampled on the tensor grid (z_levels x grid). Sample index is
/// l * n + j for level l and grid point j.
struct LimitSnapshots {
    Grid1D grid;
    std::vector<double> z_levels;  ///< ascending, must contain 0 and 1
    double dt = 0.0;
    std::array<VariableBundle, 3> frames;
};

/// Max-abs residuals keyed by equation name.
struct ResidualReport {
    std::map<std::string, double> residuals;

    /// Largest residual of the limit system (entries without the full_ prefix).
    double limit_max() const;
    nlohmann::json to_json() const;
};

/// Residuals of the small-amplitude limit system at the middle snapshot:
///   momentum_x          u_t + p_x
///   momentum_z          p_z
///   mass                u_x + v_z
///   kinematic_surface   v - eta_t      at z = 1
///   dynamic_surface     p - eta        at z = 1
///   kinematic_bottom    v              at z = 0
/// plus the two momentum residuals of the finite-eps system, whose size
/// measures what the limit discards:
///   full_momentum_x     u_t + eps (u u_x + v u_z) + p_x
///   full_momentum_z     eps [v_t + eps (u v_x + v v_z)] + p_z
/// x-derivatives are spectral, t-derivatives centered, z-derivatives
/// second-order finite differences over z_levels.
ResidualReport audit_limit_system(const LimitSnapshots& snaps, double eps);

}  // namespace wavelab::scaling
