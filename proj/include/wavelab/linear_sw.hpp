#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wavelab/grid_field.hpp"
#include "wavelab/scaling.hpp"

namespace wavelab::linear_sw {

/// Right- and left-moving parts of a surface displacement plus the
/// irrotational background constant c0.
struct SurfaceProfile {
    Field f;                       ///< right-mover, eta contribution f(x - t)
    std::optional<Field> g_left;   ///< left-mover, eta contribution g(x + t); empty means zero
    double c0 = 0.0;

    /// Throws std::invalid_argument if f and g_left live on different grids.
    void validate() const;
};

/// eta(., t) = f(x - t) + g_left(x + t), with both shifts done spectrally.
Field evolve_dalembert(const SurfaceProfile& prof, double t);

struct Velocity {
    Field u;
    Field v;
};

/// Irrotational velocity at height z in [0, 1]: u = eta + c0, v = -z eta_x.
Velocity reconstruct_irrotational(const Field& eta, const Field& eta_x, double c0, double z);

/// Builds delta-removed snapshots (t - dt, t, t + dt) of the irrotational
/// limit solution on the tensor grid z_levels x grid, with p = eta.
scaling::LimitSnapshots limit_snapshots(const SurfaceProfile& prof, const std::vector<double>& z_levels,
                                        double t, double dt);

/// Max |eta_tt - eta_xx| at time t, with eta_tt from a centered difference of
/// step dt and eta_xx spectral.
double wave_equation_residual(const SurfaceProfile& prof, double t, double dt);

}  // namespace wavelab::linear_sw
