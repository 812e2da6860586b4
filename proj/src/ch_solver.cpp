#include "wavelab/ch_solver.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "wavelab/errors.hpp"

namespace wavelab::ch {

void CHParams::validate() const {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument(fmt::format("CHParams: kappa must be >= 0 (got {})", kappa));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument(fmt::format("CHParams: dt must be > 0 (got {})", dt));
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument(fmt::format("CHParams: t_end must be >= 0 (got {})", t_end));
    }
    if (!(slope_ceiling > 0.0)) throw std::invalid_argument("CHParams: slope_ceiling must be positive");
}

const char* to_string(RhsForm form) { return form == RhsForm::local ? "local" : "nonlocal"; }

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::completed: return "completed";
        case RunStatus::wave_breaking: return "wave_breaking";
        case RunStatus::non_finite: return "non_finite";
    }
    return "unknown";
}

Field rhs_local(const Field& u, double kappa, Dealias dealias) {
    const Field ux = deriv(u, 1);
    const Field uxx = deriv(u, 2);
    const Field uxxx = deriv(u, 3);
    Field bracket = -2.0 * kappa * ux;
    bracket -= 3.0 * product(u, ux, dealias);
    bracket += 2.0 * product(ux, uxx, dealias);
    bracket += product(u, uxxx, dealias);
    return helmholtz_inv(bracket);
}

Field rhs_nonlocal(const Field& u, double kappa, Dealias dealias) {
    const Field ux = deriv(u, 1);
    Field source = product(u, u, dealias);
    source += 0.5 * product(ux, ux, dealias);
    source += 2.0 * kappa * u;
    return -product(u, ux, dealias) - deriv(helmholtz_inv(source), 1);
}

Field rhs(const Field& u, double kappa, RhsForm form, Dealias dealias) {
    return form == RhsForm::local ? rhs_local(u, kappa, dealias) : rhs_nonlocal(u, kappa, dealias);
}

double max_slope(const Field& u) { return deriv(u, 1).max_abs(); }

CHState step_rk4(const CHState& state, const CHParams& params, RhsForm form) {
    const double h = params.dt;
    const Dealias d = params.dealias ? Dealias::on : Dealias::off;
    const double kappa = params.kappa;

    const Field k1 = rhs(state.u, kappa, form, d);
    const Field k2 = rhs(state.u + (0.5 * h) * k1, kappa, form, d);
    const Field k3 = rhs(state.u + (0.5 * h) * k2, kappa, form, d);
    const Field k4 = rhs(state.u + h * k3, kappa, form, d);

    Field u = state.u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (params.spectral_filter) u = spectral_filter(u);

    const double t = state.t + h;
    const double slope = max_slope(u);
    if (slope > params.slope_ceiling) {
        throw WaveBreakingError(t, slope,
                                fmt::format("wave breaking: max|u_x| = {:.6g} exceeds ceiling {:.6g} at t = {:.6g}",
                                            slope, params.slope_ceiling, t));
    }
    return {std::move(u), t};
}

Invariants invariants(const Field& u, double kappa) {
    const Field ux = deriv(u, 1);
    const Field u2 = pointwise(u, u);
    const Field ux2 = pointwise(ux, ux);
    Invariants inv;
    inv.h0 = integrate(u);
    inv.h1 = 0.5 * integrate(u2 + ux2);
    inv.h2 = 0.5 * integrate(pointwise(u, u2) + pointwise(u, ux2) + 2.0 * kappa * u2);
    return inv;
}

RunResult run(const CHState& initial, const CHParams& params, RhsForm form, const Observer& observer) {
    params.validate();
    RunResult result{initial, RunStatus::completed, {}, initial.t, max_slope(initial.u), 0};
    if (observer) observer(initial, 0);

    const double span = params.t_end - initial.t;
    if (span <= 0.0) return result;
    const long steps = static_cast<long>(std::ceil(span / params.dt - 1e-9));
    CHParams stepping = params;
    stepping.dt = span / static_cast<double>(steps);

    CHState state = initial;
    for (long s = 1; s <= steps; ++s) {
        try {
            state = step_rk4(state, stepping, form);
        } catch (const WaveBreakingError& e) {
            result.final_state = state;
            result.status = RunStatus::wave_breaking;
            result.diagnostic = e.what();
            result.halt_time = e.time();
            result.max_slope = e.max_slope();
            result.steps = s - 1;
            return result;
        } catch (const NonFiniteError& e) {
            result.final_state = state;
            result.status = RunStatus::non_finite;
            result.diagnostic = fmt::format("non-finite state after t = {:.6g}: {}", state.t, e.what());
            result.halt_time = state.t + stepping.dt;
            result.max_slope = max_slope(state.u);
            result.steps = s - 1;
            return result;
        }
        // Pin the clock to the uniform grid instead of accumulating dt.
        state.t = initial.t + static_cast<double>(s) * stepping.dt;
        if (s == steps) state.t = params.t_end;
        if (observer) observer(state, s);
    }
    result.final_state = state;
    result.halt_time = state.t;
    result.max_slope = max_slope(state.u);
    result.steps = steps;
    return result;
}

}  // namespace wavelab::ch
