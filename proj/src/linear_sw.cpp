#include "wavelab/linear_sw.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace wavelab::linear_sw {

void SurfaceProfile::validate() const {
    if (g_left && !(g_left->grid() == f.grid())) {
        throw std::invalid_argument("SurfaceProfile: f and g_left must share a grid");
    }
    if (!std::isfinite(c0)) throw std::invalid_argument("SurfaceProfile: c0 must be finite");
}

Field evolve_dalembert(const SurfaceProfile& prof, double t) {
    prof.validate();
    if (t == 0.0) return prof.g_left ? prof.f + *prof.g_left : prof.f;
    Field eta = translate(prof.f, t);
    if (prof.g_left) eta += translate(*prof.g_left, -t);
    return eta;
}

Velocity reconstruct_irrotational(const Field& eta, const Field& eta_x, double c0, double z) {
    if (!(z >= 0.0 && z <= 1.0)) {
        throw std::invalid_argument(fmt::format("reconstruct_irrotational: z = {} outside [0, 1]", z));
    }
    if (!(eta.grid() == eta_x.grid())) {
        throw std::invalid_argument("reconstruct_irrotational: eta and eta_x on different grids");
    }
    return {eta + Field::constant(eta.grid(), c0), -z * eta_x};
}

scaling::LimitSnapshots limit_snapshots(const SurfaceProfile& prof, const std::vector<double>& z_levels,
                                        double t, double dt) {
    const Grid1D& grid = prof.f.grid();
    scaling::LimitSnapshots snaps{grid, z_levels, dt, {}};
    for (int s = 0; s < 3; ++s) {
        const double time = t + (s - 1) * dt;
        const Field eta = evolve_dalembert(prof, time);
        const Field eta_x = deriv(eta, 1);
        scaling::VariableBundle b;
        b.frame = scaling::Frame::delta_removed;
        for (double z : z_levels) {
            const Velocity vel = reconstruct_irrotational(eta, eta_x, prof.c0, z);
            for (int j = 0; j < grid.n(); ++j) {
                b.x.push_back(grid.x(j));
                b.z.push_back(z);
                b.t.push_back(time);
                b.u.push_back(vel.u[j]);
                b.v.push_back(vel.v[j]);
                b.p.push_back(eta[j]);
                b.eta.push_back(eta[j]);
            }
        }
        snaps.frames[s] = std::move(b);
    }
    return snaps;
}

double wave_equation_residual(const SurfaceProfile& prof, double t, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("wave_equation_residual: dt must be positive");
    const Field before = evolve_dalembert(prof, t - dt);
    const Field now = evolve_dalembert(prof, t);
    const Field after = evolve_dalembert(prof, t + dt);
    const Field eta_tt = (before + after - 2.0 * now) * (1.0 / (dt * dt));
    return (eta_tt - deriv(now, 2)).max_abs();
}

}  // namespace wavelab::linear_sw
