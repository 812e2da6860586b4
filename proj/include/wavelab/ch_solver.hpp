#pragma once

#include <functional>
#include <string>

#include "wavelab/grid_field.hpp"

namespace wavelab::ch {

struct CHParams {
    double kappa = 0.0;   ///< critical-speed constant, >= 0
    double dt = 1e-3;
    double t_end = 0.0;
    bool dealias = true;
    double slope_ceiling = 1e3;    ///< halt when max|u_x| exceeds this
    bool spectral_filter = false;  ///< damp the top third of the spectrum after each step

    void validate() const;
};

struct CHState {
    Field u;
    double t = 0.0;
};

enum class RhsForm { local, nonlocal };

const char* to_string(RhsForm form);

/// u_t = (1 - d_xx)^{-1} [-2 kappa u_x - 3 u u_x + 2 u_x u_xx + u u_xxx],
/// the equation transcribed term by term.
Field rhs_local(const Field& u, double kappa, Dealias dealias = Dealias::on);

/// u_t = -u u_x - d_x (1 - d_xx)^{-1} (u^2 + u_x^2 / 2 + 2 kappa u).
///
/// Applying (1 - d_xx) and expanding (u u_x)_xx = 3 u_x u_xx + u u_xxx gives
/// back the local form exactly, so the two differ only by round-off and
/// aliasing. This is the production path: its right-hand side is a pure
/// derivative, so the mean of u is conserved to round-off.
Field rhs_nonlocal(const Field& u, double kappa, Dealias dealias = Dealias::on);

Field rhs(const Field& u, double kappa, RhsForm form, Dealias dealias);

double max_slope(const Field& u);

/// One classical RK4 step of size params.dt. Throws WaveBreakingError when
/// the new state has max|u_x| above params.slope_ceiling.
CHState step_rk4(const CHState& state, const CHParams& params, RhsForm form);

/// H0 = int u, H1 = 1/2 int (u^2 + u_x^2), H2 = 1/2 int (u^3 + u u_x^2 + 2 kappa u^2).
struct Invariants {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
};

Invariants invariants(const Field& u, double kappa);

enum class RunStatus { completed, wave_breaking, non_finite };

const char* to_string(RunStatus status);

struct RunResult {
    CHState final_state;
    RunStatus status = RunStatus::completed;
    std::string diagnostic;
    double halt_time = 0.0;
    double max_slope = 0.0;
    long steps = 0;
};

/// Called with the initial state (step 0) and after every completed step.
using Observer = std::function<void(const CHState&, long step)>;

/// Integrates from initial.t to params.t_end with uniform steps no larger
/// than params.dt. Numerical halts are reported in the result, not thrown.
RunResult run(const CHState& initial, const CHParams& params, RhsForm form, const Observer& observer = {});

}  // namespace wavelab::ch
