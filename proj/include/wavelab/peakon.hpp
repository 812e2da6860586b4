#pragma once

#include <functional>
#include <vector>

#include "wavelab/grid_field.hpp"

namespace wavelab::peakon {

/// N peakons u(x) = sum_i p_i exp(-|x - q_i|) on the line.
struct PeakonEnsemble {
    std::vector<double> q;
    std::vector<double> p;
    double t = 0.0;

    std::size_t size() const noexcept { return q.size(); }
    /// Throws std::invalid_argument unless N >= 1, |q| == |p| and all entries are finite.
    void validate() const;
};

struct Rates {
    std::vector<double> qdot;
    std::vector<double> pdot;
};

/// Canonical equations of H = 1/2 sum_ij p_i p_j exp(-|q_i - q_j|):
///   qdot_i = sum_j p_j exp(-|q_i - q_j|)
///   pdot_i = sum_j p_i p_j sgn(q_i - q_j) exp(-|q_i - q_j|),  sgn(0) = 0.
Rates ode_rhs(const PeakonEnsemble& ens);

double hamiltonian(const PeakonEnsemble& ens);
double total_momentum(const PeakonEnsemble& ens);

/// Closest peakon-antipeakon pair (p_i p_j < 0) at which a collision is declared.
inline constexpr double collision_distance = 1e-6;

using Observer = std::function<void(const PeakonEnsemble&)>;

/// RK4 from ens.t to t_end with steps of at most dt, landing on t_end exactly.
/// While an opposite-sign pair is closing, steps are shortened so the gap
/// shrinks geometrically; once the gap is below collision_distance (or the
/// pair would cross) a PeakonCollisionError carries the current time and an
/// extrapolated collision time.
PeakonEnsemble evolve(const PeakonEnsemble& ens, double dt, double t_end, const Observer& observer = {});

/// Collision time of a symmetric pair p = (c, -c) at q = (-a, a), c > 0:
/// arccosh(e^a) / sqrt(H) with H = c^2 (1 - e^{-2a}).
double symmetric_collision_time(double c, double a);

enum class Kernel {
    image_sum,       ///< wrapped distance plus the two nearest periodic images
    exact_periodic,  ///< cosh(L/2 - d) / sinh(L/2)
};

/// Point samples of the peakon profile on a periodic grid.
Field sample_field(const PeakonEnsemble& ens, const Grid1D& grid, Kernel kernel = Kernel::image_sum);

/// Band-limited peakon profile: the Fourier series of the periodized kernel,
/// 2/(L (1 + k^2)) per mode, truncated below Nyquist. Smooth initial data for
/// the PDE solver.
Field sample_field_mollified(const PeakonEnsemble& ens, const Grid1D& grid);

}  // namespace wavelab::peakon
