#include <doctest.h>

#include <cmath>

#include "wavelab/linear_sw.hpp"

using namespace wavelab;
using namespace wavelab::linear_sw;

namespace {

Field bump(const Grid1D& g, double center, double width = 1.0) {
    return Field::sample(g, [=](double x) { return std::exp(-((x - center) / width) * ((x - center) / width)); });
}

}  // namespace

TEST_CASE("d'Alembert at t = 0 is f + g") {
    const Grid1D g(256, 40.0);
    const SurfaceProfile prof{bump(g, -3.0), bump(g, 4.0, 2.0), 0.0};
    CHECK((evolve_dalembert(prof, 0.0) - (prof.f + *prof.g_left)).max_abs() < 1e-15);
}

TEST_CASE("right-mover translates") {
    const Grid1D g(256, 40.0);
    const SurfaceProfile prof{bump(g, 0.0), std::nullopt, 0.0};
    CHECK((evolve_dalembert(prof, 1.0) - bump(g, 1.0)).max_abs() <= 1e-12);
}

TEST_CASE("left-mover translates the other way") {
    const Grid1D g(256, 40.0);
    const SurfaceProfile prof{Field::zeros(g), bump(g, 0.0), 0.0};
    CHECK((evolve_dalembert(prof, 2.0) - bump(g, -2.0)).max_abs() <= 1e-12);
}

TEST_CASE("profiles on different grids are rejected") {
    const SurfaceProfile prof{Field::zeros(Grid1D(64, 10.0)), Field::zeros(Grid1D(32, 10.0)), 0.0};
    CHECK_THROWS_AS(prof.validate(), std::invalid_argument);
    CHECK_THROWS_AS(evolve_dalembert(prof, 1.0), std::invalid_argument);
}

TEST_CASE("wave-equation residual is second order in dt") {
    const Grid1D g(256, 40.0);
    const SurfaceProfile prof{bump(g, 0.0), bump(g, 5.0), 0.0};
    const double r1 = wave_equation_residual(prof, 1.0, 0.1);
    const double r2 = wave_equation_residual(prof, 1.0, 0.05);
    const double r3 = wave_equation_residual(prof, 1.0, 0.025);
    CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::log2(r2 / r3) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("irrotational reconstruction") {
    const Grid1D g(128, 20.0);
    const Field zero = Field::zeros(g);
    const auto still = reconstruct_irrotational(zero, zero, 0.4, 0.5);
    CHECK((still.u - Field::constant(g, 0.4)).max_abs() == 0.0);
    CHECK(still.v.max_abs() == 0.0);

    const Field eta = bump(g, 1.0);
    const Field eta_x = deriv(eta, 1);
    CHECK(reconstruct_irrotational(eta, eta_x, 0.0, 0.0).v.max_abs() == 0.0);
    CHECK_THROWS_AS(reconstruct_irrotational(eta, eta_x, 0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_irrotational(eta, eta_x, 0.0, -0.1), std::invalid_argument);

    // Surface kinematics for a right-mover: v(z = 1) = -eta_x = eta_t.
    const SurfaceProfile prof{eta, std::nullopt, 0.0};
    const double t = 0.8, dt = 1e-4;
    const Field eta_now = evolve_dalembert(prof, t);
    const auto surface = reconstruct_irrotational(eta_now, deriv(eta_now, 1), 0.0, 1.0);
    const Field eta_t = (evolve_dalembert(prof, t + dt) - evolve_dalembert(prof, t - dt)) * (0.5 / dt);
    CHECK((surface.v - eta_t).max_abs() < 1e-8);  // centered difference, dt^2 limited
    const Field exact_eta_t = -1.0 * deriv(eta_now, 1);
    CHECK((surface.v - exact_eta_t).max_abs() < 1e-12);
}

TEST_CASE("limit snapshots carry the delta-removed frame") {
    const Grid1D g(64, 20.0);
    const auto snaps = limit_snapshots({bump(g, 0.0), std::nullopt, 0.1}, {0.0, 0.5, 1.0}, 0.0, 1e-3);
    CHECK(snaps.frames[1].frame == scaling::Frame::delta_removed);
    CHECK(snaps.frames[1].size() == 3u * 64u);
    const auto no_bottom = limit_snapshots({bump(g, 0.0), std::nullopt, 0.1}, {0.5, 1.0}, 0.0, 1e-3);
    CHECK_THROWS_AS(scaling::audit_limit_system(no_bottom, 0.1), std::invalid_argument);
}
