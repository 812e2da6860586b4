#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wavelab/ch_solver.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/peakon.hpp"

using namespace wavelab;
using namespace wavelab::peakon;

TEST_CASE("ensemble validation") {
    CHECK_THROWS_AS((PeakonEnsemble{{}, {}, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((PeakonEnsemble{{0.0, 1.0}, {1.0}, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(evolve({{0.0}, {1.0}, 0.0}, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("single peakon: uniform translation") {
    const auto r = ode_rhs({{0.3}, {1.7}, 0.0});
    CHECK(r.qdot[0] == 1.7);
    CHECK(r.pdot[0] == 0.0);
    const auto fin = evolve({{0.0}, {1.0}, 0.0}, 1e-2, 5.0);
    CHECK(std::abs(fin.q[0] - 5.0) < 1e-12);
    CHECK(fin.p[0] == 1.0);
    CHECK(fin.t == 5.0);
}

TEST_CASE("two-peakon rates by substitution") {
    const auto r = ode_rhs({{-5.0, 5.0}, {1.0, 1.0}, 0.0});
    const double e = std::exp(-10.0);
    CHECK(r.qdot[0] == doctest::Approx(1.0 + e).epsilon(1e-15));
    CHECK(r.pdot[0] == doctest::Approx(-e).epsilon(1e-15));
    CHECK(r.pdot[1] == doctest::Approx(e).epsilon(1e-15));
}

TEST_CASE("rates are the canonical gradient of H") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> qd(-4.0, 4.0), pd(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        PeakonEnsemble e;
        for (int i = 0; i < 4; ++i) {
            e.q.push_back(qd(rng));
            e.p.push_back(pd(rng));
        }
        const auto r = ode_rhs(e);
        const double h = 1e-6;
        for (int i = 0; i < 4; ++i) {
            PeakonEnsemble a = e, b = e;
            a.p[i] += h;
            b.p[i] -= h;
            CHECK(std::abs(r.qdot[i] - (hamiltonian(a) - hamiltonian(b)) / (2 * h)) < 1e-8);
            a = e;
            b = e;
            a.q[i] += h;
            b.q[i] -= h;
            CHECK(std::abs(r.pdot[i] + (hamiltonian(a) - hamiltonian(b)) / (2 * h)) < 1e-8);
        }
    }
}

TEST_CASE("hamiltonian values") {
    CHECK(hamiltonian({{2.0}, {1.5}, 0.0}) == doctest::Approx(1.125));
    for (double a : {0.5, 2.0, 10.0}) {
        CHECK(hamiltonian({{-a, a}, {1.0, -1.0}, 0.0}) == doctest::Approx(1.0 - std::exp(-2.0 * a)));
    }
}

TEST_CASE("overtaking collision preserves the speed set") {
    // Start far enough apart that the initial momenta are the asymptotic speeds.
    PeakonEnsemble e{{-15.0, 0.0}, {2.0, 1.0}, 0.0};
    const auto fin = evolve(e, 1e-3, 40.0);
    const auto r = ode_rhs(fin);
    const double fast = std::max(r.qdot[0], r.qdot[1]);
    const double slow = std::min(r.qdot[0], r.qdot[1]);
    CHECK(std::abs(fast - 2.0) < 1e-4);
    CHECK(std::abs(slow - 1.0) < 1e-4);
    // The trailing peakon hands its speed to the leader; the order is kept.
    CHECK(fin.q[0] < fin.q[1]);
    CHECK(r.qdot[1] == doctest::Approx(fast));
}

TEST_CASE("asymptotic speeds follow from H and P") {
    // Far apart, H = (c1^2 + c2^2) / 2 and P = c1 + c2.
    const PeakonEnsemble e{{-5.0, 0.0}, {2.0, 1.0}, 0.0};
    const double h = hamiltonian(e), p = total_momentum(e);
    const double prod = (p * p - 2.0 * h) / 2.0;
    const double disc = std::sqrt(p * p - 4.0 * prod);
    const auto r = ode_rhs(evolve(e, 1e-3, 40.0));
    CHECK(std::max(r.qdot[0], r.qdot[1]) == doctest::Approx((p + disc) / 2.0).epsilon(1e-8));
    CHECK(std::min(r.qdot[0], r.qdot[1]) == doctest::Approx((p - disc) / 2.0).epsilon(1e-8));
}

TEST_CASE("H and P are conserved for three peakons") {
    const PeakonEnsemble e{{-4.0, 0.0, 3.0}, {1.5, 1.0, 0.4}, 0.0};
    const double h0 = hamiltonian(e), p0 = total_momentum(e);
    const auto fin = evolve(e, 1e-3, 20.0);
    CHECK(std::abs(hamiltonian(fin) - h0) / h0 <= 1e-8);
    CHECK(std::abs(total_momentum(fin) - p0) / p0 <= 1e-8);
}

TEST_CASE("peakon-antipeakon collision is reported with a time estimate") {
    const double c = 1.0, a = 2.0;
    const double exact = symmetric_collision_time(c, a);
    try {
        evolve({{-a, a}, {c, -c}, 0.0}, 1e-3, 10.0);
        FAIL("expected a collision");
    } catch (const PeakonCollisionError& e) {
        CHECK(e.first() == 0);
        CHECK(e.second() == 1);
        CHECK(e.time() < exact);
        CHECK(std::abs(e.estimated_collision_time() - exact) < 1e-2);
    }
}

TEST_CASE("symmetric collision time matches direct integration of the gap") {
    // For q = (-x, x), p = (P, -P) the system reduces to
    //   x' = -P (1 - e^{-2x}),  P' = P^2 e^{-2x}.
    // Integrate with an adaptive midpoint rule until x is tiny, then add the
    // remaining time of the final quadratic approach, 2 x / |x'|.
    const double c = 0.8, a = 1.5;
    double q = a, p = c;
    double t = 0.0;
    auto rates = [](double qq, double pp) {
        const double e = std::exp(-2.0 * qq);
        return std::pair{-pp * (1.0 - e), pp * pp * e};
    };
    while (q > 1e-9) {
        const auto [dq1, dp1] = rates(q, p);
        const double h = std::min(1e-4, 1e-3 * q / std::abs(dq1));
        const auto [dq2, dp2] = rates(q + 0.5 * h * dq1, p + 0.5 * h * dp1);
        q += h * dq2;
        p += h * dp2;
        t += h;
    }
    t += 2.0 * q / std::abs(rates(q, p).first);
    CHECK(std::abs(t - symmetric_collision_time(c, a)) < 1e-5);
}

TEST_CASE("sampled peakon profile") {
    const Grid1D g(400, 100.0);
    const Field u = sample_field({{0.0}, {1.0}, 0.0}, g);
    CHECK(u[200] == doctest::Approx(1.0).epsilon(1e-12));  // x = 0
    CHECK(u[204] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(u[196] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(sample_field({{0.0, 3.0}, {0.0, 0.0}, 0.0}, g).max_abs() == 0.0);
}

TEST_CASE("well-separated peakons superpose") {
    const Grid1D g(1024, 80.0);
    const double sep = 12.0;
    const Field both = sample_field({{-sep / 2, sep / 2}, {1.0, 0.7}, 0.0}, g);
    const Field sum = sample_field({{-sep / 2}, {1.0}, 0.0}, g) + sample_field({{sep / 2}, {0.7}, 0.0}, g);
    CHECK((both - sum).max_abs() <= std::exp(-sep));
}

TEST_CASE("periodic kernels agree on a long domain and the exact one is periodic") {
    const Grid1D g(512, 12.0);
    const PeakonEnsemble e{{5.5}, {1.0}, 0.0};
    const Field images = sample_field(e, g, Kernel::image_sum);
    const Field exact = sample_field(e, g, Kernel::exact_periodic);
    // The image sum drops images beyond one period, worst at d = L / 2.
    CHECK((images - exact).max_abs() < 2.0 * std::exp(-1.5 * g.length()));
    // Mass of the periodic Green's function is exactly 2p.
    CHECK(integrate(exact) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(integrate(sample_field_mollified(e, g)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mollified peakon approaches the exact profile") {
    // Peak on a grid point: the truncation error there is the dropped tail
    // sum of 2 / (L (1 + k^2)), about L / (pi^2 M) with M = n / 2.
    const PeakonEnsemble e{{0.0}, {1.0}, 0.0};
    const double length = 40.0;
    double prev = 1.0;
    for (int n : {256, 512, 1024}) {
        const Grid1D g(n, length);
        const double err = (sample_field_mollified(e, g) - sample_field(e, g, Kernel::exact_periodic)).max_abs();
        const double tail = length / (std::numbers::pi * std::numbers::pi * (n / 2));
        CHECK(err == doctest::Approx(tail).epsilon(0.1));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("peakon energy matches H1 of the sampled field on a long domain") {
    // u = sum p_i e^{-|x - q_i|} has m = u - u_xx = 2 sum p_i delta_{q_i}, so
    // int (u^2 + u_x^2) = int u m = 4 H and H1 = 2 H.
    const Grid1D g(4096, 60.0);
    const PeakonEnsemble e{{-6.0, 6.0}, {1.0, 0.5}, 0.0};
    const double h1 = ch::invariants(sample_field_mollified(e, g), 0.0).h1;
    CHECK(std::abs(h1 - 2.0 * hamiltonian(e)) / (2.0 * hamiltonian(e)) < 1e-2);
}
