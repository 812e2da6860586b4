// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "wavelab/ch_solver.hpp"
#include "wavelab/grid_field.hpp"
#include "wavelab/linear_sw.hpp"
#include "wavelab/peakon.hpp"
#include "wavelab/scaling.hpp"
#include "wavelab/spectral.hpp"
#include "wavelab/variational.hpp"

using namespace wavelab;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double linf(const Field& a, const Field& b) { return (a - b).max_abs(); }

// Random band-limited field with modes 1..max_mode, coefficients uniform in [-1, 1] / max_mode.
Field random_band_limited(const Grid1D& grid, int max_mode, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> a(max_mode + 1), b(max_mode + 1);
    for (int m = 1; m <= max_mode; ++m) {
        a[m] = unit(rng) / max_mode;
        b[m] = unit(rng) / max_mode;
    }
    return Field::sample(grid, [&](double x) {
        double v = 0.0;
        for (int m = 1; m <= max_mode; ++m) {
            const double k = grid.wavenumber(m);
            v += a[m] * std::cos(k * x) + b[m] * std::sin(k * x);
        }
        return v;
    });
}

// Phase of Fourier mode m (relative to the grid origin).
double mode_phase(const Field& f, int m) {
    const std::vector<double> v(f.values().begin(), f.values().end());
    return std::arg(spectral::forward(v)[static_cast<std::size_t>(m)]);
}

// Location of the maximum of the band-limited interpolant. The peak is a
// kink, so a golden-section search beats Newton on the slope.
double peak_location(const Field& f) {
    const auto vals = f.values();
    const auto j = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    const Grid1D& g = f.grid();
    const TrigInterpolant val(f);
    double lo = g.x(j) - g.spacing(), hi = g.x(j) + g.spacing();
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double m1 = hi - r * (hi - lo), m2 = lo + r * (hi - lo);
        if (val(m1) < val(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    return 0.5 * (lo + hi);
}

// ------------------------------------------------------------------ criteria

Outcome criterion_1() {
    const Grid1D grid(256, 2.0 * pi);
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const Field f = Field::sample(grid, [k](double x) { return std::cos(k * x); });
        const Field expected = Field::sample(grid, [k](double x) { return std::cos(k * x) / (1.0 + k * k); });
        worst = std::max(worst, linf(helmholtz_inv(f), expected));
    }
    return {worst <= 1e-12, fmt::format("max L_inf error {:.3e} (tol 1e-12)", worst)};
}

Outcome criterion_2() {
    const Grid1D grid(512, 2.0 * pi);
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Field u = random_band_limited(grid, 80, rng);
        const double kappa = trial % 2 == 0 ? 0.0 : 0.5;
        worst = std::max(worst, linf(ch::rhs_local(u, kappa, Dealias::on), ch::rhs_nonlocal(u, kappa, Dealias::on)));
    }
    return {worst <= 1e-8, fmt::format("max L_inf difference {:.3e} over 20 fields (tol 1e-8)", worst)};
}

Outcome criterion_3() {
    const Grid1D grid(128, 2.0 * pi);
    const double kappa = 0.5, amplitude = 1e-6, t_end = 5.0;
    const Field u0 = Field::sample(grid, [&](double x) { return amplitude * std::sin(x); });
    const ch::CHParams params{kappa, 1e-3, t_end, true, 1e3, false};

    // Unwrapped phase of mode 1 over the run; crest moves by -dphase / k.
    double last_phase = mode_phase(u0, 1), unwrapped = 0.0;
    auto observer = [&](const ch::CHState& s, long) {
        const double ph = mode_phase(s.u, 1);
        double d = ph - last_phase;
        while (d > pi) d -= 2.0 * pi;
        while (d < -pi) d += 2.0 * pi;
        unwrapped += d;
        last_phase = ph;
    };
    const auto result = ch::run({u0, 0.0}, params, ch::RhsForm::nonlocal, observer);
    const double speed = -unwrapped / t_end;
    const double expected = 2.0 * kappa / (1.0 + 1.0);
    const double rel = std::abs(speed - expected) / expected;
    return {result.status == ch::RunStatus::completed && rel <= 5e-3,
            fmt::format("crest speed {:.8f}, expected {:.8f}, relative error {:.3e} (tol 5e-3)", speed, expected, rel)};
}

Outcome criterion_4() {
    const Grid1D grid(1024, 40.0);
    const Field u0 = Field::sample(grid, [](double x) {
        const double s = 1.0 / std::cosh(x / 3.0);
        return 0.5 * s * s;
    });
    const ch::CHParams params{0.0, 1e-3, 10.0, true, 1e3, false};
    const auto inv0 = ch::invariants(u0, 0.0);
    const auto result = ch::run({u0, 0.0}, params, ch::RhsForm::nonlocal);
    const auto inv = ch::invariants(result.final_state.u, 0.0);
    const double d0 = std::abs(inv.h0 - inv0.h0) / std::abs(inv0.h0);
    const double d1 = std::abs(inv.h1 - inv0.h1) / std::abs(inv0.h1);
    const double d2 = std::abs(inv.h2 - inv0.h2) / std::abs(inv0.h2);
    return {result.status == ch::RunStatus::completed && d0 <= 1e-10 && d1 <= 1e-6 && d2 <= 1e-5,
            fmt::format("drift H0 {:.3e} (1e-10), H1 {:.3e} (1e-6), H2 {:.3e} (1e-5)", d0, d1, d2)};
}

Outcome criterion_5() {
    const Grid1D grid(2048, 40.0);
    const peakon::PeakonEnsemble ens{{0.0}, {1.0}, 0.0};
    const double t_end = 5.0;
    const ch::CHParams params{0.0, 1e-3, t_end, true, 1e3, false};
    const auto result = ch::run({peakon::sample_field_mollified(ens, grid), 0.0}, params, ch::RhsForm::nonlocal);
    const double q = peak_location(result.final_state.u);
    const double rel = std::abs(q - t_end) / t_end;
    const Field exact = peakon::sample_field({{t_end}, {1.0}, t_end}, grid, peakon::Kernel::exact_periodic);
    const double err = linf(result.final_state.u, exact);
    return {result.status == ch::RunStatus::completed && rel <= 1e-2 && err <= 2e-2,
            fmt::format("peak at {:.6f} (relative error {:.3e}, tol 1e-2); profile L_inf error {:.3e} (tol 2e-2)", q,
                        rel, err)};
}

Outcome criterion_6() {
    const Grid1D grid(4096, 60.0);
    const peakon::PeakonEnsemble ens{{-7.5, 7.5}, {1.0, 0.5}, 0.0};
    const double t_end = 5.0;
    const ch::CHParams params{0.0, 1e-3, t_end, true, 1e3, false};
    const auto result = ch::run({peakon::sample_field_mollified(ens, grid), 0.0}, params, ch::RhsForm::nonlocal);
    const auto ode = peakon::evolve(ens, 1e-3, t_end);
    const double gap = linf(result.final_state.u, peakon::sample_field(ode, grid));
    return {result.status == ch::RunStatus::completed && gap <= 2e-2,
            fmt::format("L_inf gap PDE vs ODE at t = 5: {:.3e} (tol 2e-2)", gap)};
}

Outcome criterion_7() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> qd(-5.0, 5.0), pd(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 5;
        peakon::PeakonEnsemble e;
        for (int i = 0; i < n; ++i) {
            e.q.push_back(qd(rng));
            e.p.push_back(pd(rng));
        }
        const auto rates = peakon::ode_rhs(e);
        for (int i = 0; i < n; ++i) {
            // Fourth-order central differences of H.
            auto dh = [&](std::vector<double> peakon::PeakonEnsemble::*member) {
                const double h = 1e-3;
                auto at = [&](double s) {
                    peakon::PeakonEnsemble c = e;
                    (c.*member)[i] += s;
                    return peakon::hamiltonian(c);
                };
                return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
            };
            const double dhdp = dh(&peakon::PeakonEnsemble::p);
            const double dhdq = dh(&peakon::PeakonEnsemble::q);
            worst = std::max({worst, std::abs(rates.qdot[i] - dhdp), std::abs(rates.pdot[i] + dhdq)});
        }
    }

    const peakon::PeakonEnsemble three{{-4.0, 0.0, 3.0}, {1.5, 1.0, 0.4}, 0.0};
    const double h0 = peakon::hamiltonian(three), p0 = peakon::total_momentum(three);
    double drift_h = 0.0, drift_p = 0.0;
    peakon::evolve(three, 1e-3, 20.0, [&](const peakon::PeakonEnsemble& s) {
        drift_h = std::max(drift_h, std::abs(peakon::hamiltonian(s) - h0) / std::abs(h0));
        drift_p = std::max(drift_p, std::abs(peakon::total_momentum(s) - p0) / std::abs(p0));
    });
    return {worst <= 1e-8 && drift_h <= 1e-8 && drift_p <= 1e-8,
            fmt::format("gradient mismatch {:.3e} over 100 states (tol 1e-8); drift H {:.3e}, P {:.3e} (tol 1e-8)",
                        worst, drift_h, drift_p)};
}

Outcome criterion_8() {
    using namespace variational;
    const double length = 2.0 * pi, horizon = 1.0;
    PathProblem problem;
    problem.length = length;
    problem.horizon = horizon;
    problem.displacement = SinusoidalDisplacement{0.05, length};
    problem.perturbation = BandLimitedPerturbation(length, horizon, 42);

    // Headline identity.
    const Resolution base{256, 64, 1e-3};
    const auto head = refinement_study(problem, std::span(&base, 1)).front().report;

    // Order in eps: successive differences of D_fd under halving eps.
    const Grid1D grid(256, length);
    const DiffeoPath path = DiffeoPath::from_displacement(grid, horizon, 64, problem.displacement);
    const PathPerturbation pert = PathPerturbation::from_function(grid, 64, horizon, problem.perturbation);
    const double e0 = 4e-2;
    const double f1 = first_variation_fd(path, pert, e0, Lagrangian::u, 0.0);
    const double f2 = first_variation_fd(path, pert, e0 / 2, Lagrangian::u, 0.0);
    const double f3 = first_variation_fd(path, pert, e0 / 4, Lagrangian::u, 0.0);
    const double order_eps = observed_order(std::abs(f1 - f2), std::abs(f2 - f3));

    // Order in dt: gap between the discrete derivative and the residual pairing under halving K.
    const std::vector<Resolution> levels{{256, 32, 1e-4}, {256, 64, 1e-4}};
    const auto rows = refinement_study(problem, levels);
    const double order_dt = observed_order(rows[0].report.abs_gap, rows[1].report.abs_gap);

    // Eta-action: the residual with constant c0 exceeds the kappa = 0 residual by exactly 2 c0 eta_x.
    const double c0 = 0.3;
    std::vector<Field> etas;
    for (int k = 0; k <= 2; ++k) etas.push_back(spatial_velocity(path, k));
    const Field with_c0 = el_residual(etas, 1, path.dt(), c0, Lagrangian::eta);
    const Field without = el_residual(etas, 1, path.dt(), 0.0, Lagrangian::eta);
    const Field extra = 2.0 * c0 * deriv(etas[1], 1);
    const double term_error = linf(with_c0 - without, extra) / std::max(1.0, with_c0.max_abs());
    PathProblem eta_problem = problem;
    eta_problem.which = Lagrangian::eta;
    eta_problem.c0 = c0;
    const auto eta_head = refinement_study(eta_problem, std::span(&base, 1)).front().report;

    const bool ok = head.rel_gap <= 1e-3 && order_eps >= 1.9 && order_dt >= 1.9 && term_error <= 1e-14 &&
                    eta_head.rel_gap <= 1e-3;
    return {ok, fmt::format("u-action rel gap {:.3e} (tol 1e-3); order eps {:.3f}, order dt {:.3f} (min 1.9); "
                            "eta-action rel gap {:.3e}; 2 c0 eta_x term error {:.3e} (tol 1e-14)",
                            head.rel_gap, order_eps, order_dt, eta_head.rel_gap, term_error)};
}

Outcome criterion_9() {
    const Grid1D grid(512, 40.0);
    const Field f = Field::sample(grid, [](double x) { return std::exp(-x * x); });
    const linear_sw::SurfaceProfile prof{f, std::nullopt, 0.2};
    double worst = 0.0;
    for (double t : {0.0, 1.5, 4.0}) {
        const auto report =
            scaling::audit_limit_system(linear_sw::limit_snapshots(prof, {0.0, 0.25, 0.5, 0.75, 1.0}, t, 1e-4), 0.1);
        worst = std::max(worst, report.limit_max());
    }
    const double s = 2.5, t = 3.7;
    const Field direct = linear_sw::evolve_dalembert(prof, s + t);
    const Field composed = linear_sw::evolve_dalembert({linear_sw::evolve_dalembert(prof, s), std::nullopt, 0.2}, t);
    const double semigroup = linf(direct, composed);
    return {worst <= 1e-8 && semigroup <= 1e-12,
            fmt::format("max limit residual {:.3e} (tol 1e-8); semigroup error {:.3e} (tol 1e-12)", worst, semigroup)};
}

Outcome criterion_10() {
    const scaling::ScalingParams params{1.0, 10.0, 0.1, 9.81, 1000.0, 101325.0};
    const double eps = params.eps(), delta = params.delta();
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    scaling::VariableBundle b;
    for (int i = 0; i < 200; ++i) {
        b.x.push_back(-50.0 + 100.0 * unit(rng));
        b.z.push_back(params.h0 * unit(rng));
        b.t.push_back(20.0 * unit(rng));
        b.u.push_back(0.3 * (unit(rng) - 0.5));
        b.v.push_back(0.03 * (unit(rng) - 0.5));
        b.p.push_back(params.p0 + params.rho * params.g * (params.h0 - b.z.back()) + 50.0 * (unit(rng) - 0.5));
        b.eta.push_back(params.a * (unit(rng) - 0.5));
    }
    const auto fwd = scaling::remove_delta(scaling::scale_small_amplitude(scaling::to_nondim(b, params), eps), eps, delta);
    const auto back = scaling::from_nondim(
        scaling::unscale_small_amplitude(scaling::restore_delta(fwd, eps, delta), eps), params);
    const double round_trip = scaling::max_relative_difference(b, back);

    // eps = delta^2: h0 = 1, lambda = 10, a = 0.01.
    const scaling::ScalingParams sq{1.0, 10.0, 0.01, 9.81, 1000.0, 101325.0};
    const auto scaled = scaling::scale_small_amplitude(scaling::to_nondim(b, sq), sq.eps());
    const auto removed = scaling::remove_delta(scaled, sq.eps(), sq.delta());
    const bool unchanged = removed.x == scaled.x && removed.t == scaled.t && removed.v == scaled.v;
    return {round_trip <= 1e-13 && unchanged,
            fmt::format("round-trip relative error {:.3e} (tol 1e-13); eps = delta^2 leaves x, t, v {}", round_trip,
                        unchanged ? "bit-identical" : "CHANGED")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria = {
        {1, {"Helmholtz inversion of cos(kx)", criterion_1}},
        {2, {"local and nonlocal right-hand sides agree", criterion_2}},
        {3, {"linear dispersion crest speed", criterion_3}},
        {4, {"conservation of H0, H1, H2", criterion_4}},
        {5, {"single peakon transport", criterion_5}},
        {6, {"two-peakon ODE vs PDE", criterion_6}},
        {7, {"peakon Hamiltonian structure", criterion_7}},
        {8, {"variational identity and convergence orders", criterion_8}},
        {9, {"small-amplitude limit audit", criterion_9}},
        {10, {"scaling pipeline round trip", criterion_10}},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& [id, entry] : criteria) {
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = entry.second();
        } catch (const std::exception& e) {
            out = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("{} criterion {}: {} | {} [{:.1f}s]\n", out.pass ? "PASS" : "FAIL", id, entry.first, out.detail,
                   secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
