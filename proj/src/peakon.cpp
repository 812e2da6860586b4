#include "wavelab/peakon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "wavelab/errors.hpp"

namespace wavelab::peakon {
namespace {

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

PeakonEnsemble axpy(const PeakonEnsemble& ens, double h, const Rates& r) {
    PeakonEnsemble out = ens;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        out.q[i] += h * r.qdot[i];
        out.p[i] += h * r.pdot[i];
    }
    return out;
}

PeakonEnsemble rk4_step(const PeakonEnsemble& ens, double h) {
    const Rates k1 = ode_rhs(ens);
    const Rates k2 = ode_rhs(axpy(ens, 0.5 * h, k1));
    const Rates k3 = ode_rhs(axpy(ens, 0.5 * h, k2));
    const Rates k4 = ode_rhs(axpy(ens, h, k3));
    PeakonEnsemble out = ens;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        out.q[i] += h / 6.0 * (k1.qdot[i] + 2.0 * k2.qdot[i] + 2.0 * k3.qdot[i] + k4.qdot[i]);
        out.p[i] += h / 6.0 * (k1.pdot[i] + 2.0 * k2.pdot[i] + 2.0 * k3.pdot[i] + k4.pdot[i]);
    }
    out.t = ens.t + h;
    return out;
}

// Closing opposite-sign pair with the smallest time-to-contact estimate.
struct Approach {
    int i = -1;
    int j = -1;
    double gap = std::numeric_limits<double>::infinity();
    double closing_speed = 0.0;
};

Approach nearest_approach(const PeakonEnsemble& ens, const Rates& rates) {
    Approach best;
    double best_time = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(ens.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (ens.p[i] * ens.p[j] >= 0.0) continue;
            const double sep = ens.q[j] - ens.q[i];
            const double gap = std::abs(sep);
            const double closing = -sgn(sep) * (rates.qdot[j] - rates.qdot[i]);
            if (gap < collision_distance) return {i, j, gap, std::max(closing, 0.0)};
            if (closing <= 0.0) continue;
            const double contact = gap / closing;
            if (contact < best_time) {
                best_time = contact;
                best = {i, j, gap, closing};
            }
        }
    }
    return best;
}

[[noreturn]] void report_collision(const PeakonEnsemble& ens, const Approach& a) {
    // Near contact the gap closes quadratically, d ~ C (t* - t)^2, so
    // t* - t ~ 2 d / |d'|.
    const double estimate = a.closing_speed > 0.0 ? ens.t + 2.0 * a.gap / a.closing_speed : ens.t;
    throw PeakonCollisionError(
        ens.t, estimate, a.i, a.j,
        fmt::format("peakon-antipeakon collision between {} and {} at t = {:.12g} (gap {:.3g}); "
                    "estimated collision time {:.12g}",
                    a.i, a.j, ens.t, a.gap, estimate));
}

void require_finite(const PeakonEnsemble& ens) {
    for (std::size_t i = 0; i < ens.size(); ++i) {
        if (!std::isfinite(ens.q[i]) || !std::isfinite(ens.p[i])) {
            throw NonFiniteError(fmt::format("peakon state became non-finite at t = {}", ens.t));
        }
    }
}

double wrapped_distance(double x, double q, double length) {
    double d = std::fmod(std::abs(x - q), length);
    return std::min(d, length - d);
}

}  // namespace

void PeakonEnsemble::validate() const {
    if (q.empty()) throw std::invalid_argument("PeakonEnsemble: need at least one peakon");
    if (q.size() != p.size()) throw std::invalid_argument("PeakonEnsemble: q and p differ in length");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!std::isfinite(q[i]) || !std::isfinite(p[i])) {
            throw std::invalid_argument(fmt::format("PeakonEnsemble: non-finite entry at index {}", i));
        }
    }
    if (!std::isfinite(t)) throw std::invalid_argument("PeakonEnsemble: non-finite time");
}

Rates ode_rhs(const PeakonEnsemble& ens) {
    const std::size_t n = ens.size();
    Rates r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double sep = ens.q[i] - ens.q[j];
            const double e = std::exp(-std::abs(sep));
            r.qdot[i] += ens.p[j] * e;
            r.pdot[i] += ens.p[i] * ens.p[j] * sgn(sep) * e;
        }
    }
    return r;
}

double hamiltonian(const PeakonEnsemble& ens) {
    double h = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        for (std::size_t j = 0; j < ens.size(); ++j) {
            h += ens.p[i] * ens.p[j] * std::exp(-std::abs(ens.q[i] - ens.q[j]));
        }
    }
    return 0.5 * h;
}

double total_momentum(const PeakonEnsemble& ens) {
    double s = 0.0;
    for (double v : ens.p) s += v;
    return s;
}

PeakonEnsemble evolve(const PeakonEnsemble& ens, double dt, double t_end, const Observer& observer) {
    ens.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument(fmt::format("evolve: dt must be > 0 (got {})", dt));
    if (!std::isfinite(t_end)) throw std::invalid_argument("evolve: t_end must be finite");

    PeakonEnsemble state = ens;
    if (observer) observer(state);
    const double t0 = state.t;
    const long nominal = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-9));
    if (nominal <= 0) return state;
    const double h_nominal = (t_end - t0) / static_cast<double>(nominal);

    long taken = 0;  // nominal steps completed
    while (state.t < t_end) {
        const double next_mark = taken + 1 == nominal ? t_end : t0 + static_cast<double>(taken + 1) * h_nominal;
        double h = next_mark - state.t;

        const Approach a = nearest_approach(state, ode_rhs(state));
        if (a.i >= 0) {
            if (a.gap < collision_distance) report_collision(state, a);
            h = std::min(h, 0.125 * a.gap / a.closing_speed);
        }

        PeakonEnsemble next = rk4_step(state, h);
        require_finite(next);
        if (a.i >= 0 && sgn(next.q[a.j] - next.q[a.i]) != sgn(state.q[a.j] - state.q[a.i])) {
            report_collision(state, a);
        }
        if (h == next_mark - state.t) {
            next.t = next_mark;
            ++taken;
        }
        state = std::move(next);
        if (observer) observer(state);
    }
    return state;
}

double symmetric_collision_time(double c, double a) {
    if (!(c > 0.0) || !(a > 0.0)) throw std::invalid_argument("symmetric_collision_time: need c > 0 and a > 0");
    const double energy = c * c * (1.0 - std::exp(-2.0 * a));
    return std::acosh(std::exp(a)) / std::sqrt(energy);
}

Field sample_field(const PeakonEnsemble& ens, const Grid1D& grid, Kernel kernel) {
    ens.validate();
    const double length = grid.length();
    const double wrap = kernel == Kernel::exact_periodic ? 1.0 / (1.0 - std::exp(-length)) : 1.0;
    return Field::sample(grid, [&](double x) {
        double u = 0.0;
        for (std::size_t i = 0; i < ens.size(); ++i) {
            const double d = wrapped_distance(x, ens.q[i], length);
            double k = std::exp(-d) + std::exp(-(length - d));
            if (kernel == Kernel::image_sum) {
                k += std::exp(-(length + d));
            } else {
                k *= wrap;
            }
            u += ens.p[i] * k;
        }
        return u;
    });
}

Field sample_field_mollified(const PeakonEnsemble& ens, const Grid1D& grid) {
    ens.validate();
    const int n = grid.n();
    const double length = grid.length();
    spectral::Spectrum coeffs(static_cast<std::size_t>(n / 2 + 1), {0.0, 0.0});
    for (int m = 0; m < n / 2; ++m) {
        const double k = grid.wavenumber(m);
        const double amplitude = n * 2.0 / (length * (1.0 + k * k));
        for (std::size_t i = 0; i < ens.size(); ++i) {
            coeffs[m] += ens.p[i] * amplitude * std::polar(1.0, k * (grid.x(0) - ens.q[i]));
        }
    }
    return Field(grid, spectral::inverse(coeffs, n));
}

}  // namespace wavelab::peakon
