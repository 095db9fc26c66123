#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qhj/madelung.hpp"
#include "qhj/states.hpp"
#include "qhj/tdse.hpp"

using namespace qhj;

namespace {

double wrap_mod(double x, double period) {
    double y = std::fmod(x, period);
    if (y > 0.5 * period) y -= period;
    if (y < -0.5 * period) y += period;
    return y;
}

} // namespace

TEST_CASE("decompose: plane wave gives constant R and linear S") {
    const Grid g = make_grid(1, 256, 20.0, Boundary::periodic);
    const double hbar = 0.9;
    const double p0 = commensurate_momentum(g, hbar, 2.0);
    const Wavefunction psi = plane_wave_state(g, hbar, 1.0, 2.0);
    const MadelungFields m = decompose(psi);

    CHECK(m.node_count() == 0);
    const double r0 = 1.0 / std::sqrt(g.box_length);
    for (double r : m.amplitude) CHECK(r == doctest::Approx(r0).epsilon(1e-12));

    // dS/dx = p0 everywhere, which is only visible after unwrapping
    const auto grad = action_gradient(m, 0);
    for (int k = 2; k < g.points_per_axis - 2; ++k)
        CHECK(grad[k] == doctest::Approx(p0).epsilon(1e-8));

    // neighbor continuity of the unwrapped action
    for (int k = 0; k + 1 < g.points_per_axis; ++k)
        CHECK(std::abs(m.action[k + 1] - m.action[k]) < oracle::pi * hbar);
}

TEST_CASE("decompose: real positive Gaussian has zero action and no nodes") {
    const Grid g = make_grid(1, 512, 30.0, Boundary::periodic);
    const Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0);
    const MadelungFields m = decompose(psi);
    CHECK(m.node_count() == 0);
    for (double s : m.action) CHECK(s == 0.0);
}

TEST_CASE("decompose: first excited state keeps the pi hbar sign jump flagged") {
    const Grid g = make_grid(1, 512, 30.0, Boundary::periodic);
    const double hbar = 1.0;
    const Wavefunction psi = harmonic_eigenstate(g, hbar, 1.0, 1.0, 1);
    const MadelungFields m = decompose(psi, 1e-6);

    CHECK(m.node_count() > 0);
    // node sits at x = 0
    const int mid = g.points_per_axis / 2;
    bool node_near_zero = false;
    for (int k = mid - 2; k <= mid + 2; ++k) node_near_zero |= m.node_mask[k] != 0;
    CHECK(node_near_zero);

    // the two lobes carry actions differing by pi hbar (sign flip), not unwrapped
    const int left = mid - 20, right = mid + 20;
    CHECK(m.node_mask[left] == 0);
    CHECK(m.node_mask[right] == 0);
    const double jump = std::abs(m.action[left] - m.action[right]);
    CHECK(wrap_mod(jump - oracle::pi * hbar, 2.0 * oracle::pi * hbar) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("decompose rejects the zero field and bad floors") {
    const Grid g = make_grid(1, 64, 8.0, Boundary::periodic);
    Wavefunction psi{g, std::vector<cd>(g.size(), cd(0.0)), 0.0, 1.0, 1.0};
    CHECK_THROWS_AS((void)decompose(psi), std::invalid_argument);
    const Wavefunction ok = gaussian_packet(g, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS((void)decompose(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)decompose(ok, 0.1), std::invalid_argument);
}

TEST_CASE("round trip: recompose(decompose(psi)) = psi away from nodes") {
    const Grid g = make_grid(1, 512, 30.0, Boundary::periodic);
    const Wavefunction psi = gaussian_packet(g, 0.8, 1.2, 1.0, 0.5, 1.3);
    const MadelungFields m = decompose(psi);
    const Wavefunction back = recompose(m);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        if (m.node_mask[i]) continue;
        CHECK(std::abs(back.values[i] - psi.values[i]) < 1e-10);
    }
}

TEST_CASE("gauge freedom: a global phase shifts S by a constant") {
    const Grid g = make_grid(1, 256, 24.0, Boundary::periodic);
    const double hbar = 1.0, theta = 1.234;
    const Wavefunction psi = gaussian_packet(g, hbar, 1.0, 1.0, 0.0, 0.7);
    Wavefunction rotated = psi;
    for (auto& v : rotated.values) v *= std::polar(1.0, theta);

    const MadelungFields a = decompose(psi);
    const MadelungFields b = decompose(rotated);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < a.action.size(); ++i) {
        if (a.node_mask[i] || b.node_mask[i]) continue;
        const double d = b.action[i] - a.action[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(hi - lo < 1e-10); // constant offset
    CHECK(wrap_mod(hi - theta * hbar, 2.0 * oracle::pi * hbar) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("R-scaling leaves S and U untouched") {
    const Grid g = make_grid(1, 256, 24.0, Boundary::periodic);
    const Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0, 0.0, 0.4);
    Wavefunction scaled = psi;
    for (auto& v : scaled.values) v *= 3.5;

    const MadelungFields a = decompose(psi);
    const MadelungFields b = decompose(scaled);
    const auto ua = quantum_potential(a, 1.0);
    const auto ub = quantum_potential(b, 1.0);
    for (std::size_t i = 0; i < a.action.size(); ++i) {
        if (a.node_mask[i]) continue;
        CHECK(b.amplitude[i] == doctest::Approx(3.5 * a.amplitude[i]).epsilon(1e-12));
        CHECK(b.action[i] == doctest::Approx(a.action[i]).epsilon(1e-12));
        CHECK(ub.u[i] == doctest::Approx(ua.u[i]).epsilon(1e-9));
    }
}

TEST_CASE("quantum potential: constant R gives exactly zero") {
    const Grid g = make_grid(1, 128, 16.0, Boundary::periodic);
    const Wavefunction psi = plane_wave_state(g, 1.0, 1.0, 1.0);
    const auto u = quantum_potential(decompose(psi), 1.0);
    for (double v : u.u) CHECK(std::abs(v) < 1e-10);
    CHECK_FALSE(u.regularized);
}

TEST_CASE("quantum potential of the harmonic ground state: V + U is constant") {
    const double hbar = 1.0, mass = 1.0, omega = 1.0;
    auto max_error = [&](int n) {
        const Grid g = make_grid(1, n, 24.0, Boundary::periodic);
        const Wavefunction psi = harmonic_eigenstate(g, hbar, mass, omega, 0);
        const MadelungFields m = decompose(psi);
        const auto u = quantum_potential(m, mass);
        double err = 0.0;
        for (int k = 0; k < g.points_per_axis; ++k) {
            const double x = g.coord(k);
            if (std::abs(x) > 4.0 || m.node_mask[k]) continue;
            err = std::max(err,
                           std::abs(u.u[k] - oracle::harmonic_ground_u(hbar, mass, omega, x)));
        }
        return err;
    };
    const double coarse = max_error(2048);
    CHECK(coarse < 1e-3);
    // stencil truncation is 2nd order: halving h cuts the defect by ~4
    CHECK(coarse / max_error(4096) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("quantum potential of the free Gaussian matches the analytic curvature") {
    const Grid g = make_grid(1, 2048, 30.0, Boundary::periodic);
    const double hbar = 1.0, mass = 1.0, sigma0 = 1.0;
    const Wavefunction psi = gaussian_packet(g, hbar, mass, sigma0);
    const auto u = quantum_potential(decompose(psi), mass);

    const int mid = g.points_per_axis / 2; // x = 0
    CHECK(u.u[mid] > 0.0);
    CHECK(u.u[mid] ==
          doctest::Approx(oracle::free_gaussian_u(hbar, mass, sigma0, g.coord(mid)))
              .epsilon(1e-5));

    // brute-force curvature oracle at a generic grid point near x = 1.3
    const int k_probe = static_cast<int>((1.3 - g.coord(0)) / g.spacing() + 0.5);
    const double x_probe = g.coord(k_probe);
    const auto r_exact = [&](double x) { return std::exp(-x * x / (4.0 * sigma0 * sigma0)); };
    const double lap =
        oracle::second_derivative(r_exact, x_probe, 1e-4) / r_exact(x_probe);
    const double u_expect = -hbar * hbar / (2.0 * mass) * lap;
    CHECK(u.u[k_probe] == doctest::Approx(u_expect).epsilon(1e-3));
}

TEST_CASE("continuity residual vanishes identically for the plane wave") {
    const Grid g = make_grid(1, 256, 20.0, Boundary::periodic);
    const double hbar = 1.0, mass = 1.0;
    const Wavefunction psi = plane_wave_state(g, hbar, mass, 1.5);
    const double p0 = commensurate_momentum(g, hbar, 1.5);
    const double energy = p0 * p0 / (2.0 * mass);
    const double dt = 1e-3;

    Wavefunction later = psi;
    later.time = dt;
    for (int k = 0; k < g.points_per_axis; ++k)
        later.values[k] *= std::polar(1.0, -energy * dt / hbar);

    const auto res = continuity_residual(decompose(psi), decompose(later), mass, dt);
    CHECK(res.l2 < 1e-10);
}

TEST_CASE("continuity residual vanishes for the stationary ground state") {
    const Grid g = make_grid(1, 512, 24.0, Boundary::periodic);
    const Wavefunction psi = harmonic_eigenstate(g, 1.0, 1.0, 1.0, 0);
    const double dt = 1e-3;
    Wavefunction later = psi;
    later.time = dt;
    for (auto& v : later.values) v *= std::polar(1.0, -0.5 * dt); // E0 = 1/2
    const auto res = continuity_residual(decompose(psi), decompose(later), 1.0, dt);
    CHECK(res.l2 < 1e-10);
}

TEST_CASE("exchange defects of manifestly (anti)symmetric states") {
    const Grid g2 = make_grid(2, 96, 16.0, Boundary::periodic);
    Grid axis = g2;
    axis.dimension = 1;
    const Wavefunction a = harmonic_eigenstate(axis, 1.0, 1.0, 1.0, 0);
    const Wavefunction b = harmonic_eigenstate(axis, 1.0, 1.0, 1.0, 1);

    const auto [sym_p, anti_p] = exchange_defect(product_state(g2, a, a));
    CHECK(sym_p < 1e-12);

    const auto [sym_m, anti_m] = exchange_defect(exchange_combination(g2, a, b, -1));
    CHECK(anti_m < 1e-12);
    CHECK(sym_m > 1.0); // nowhere near symmetric

    const Grid g1 = make_grid(1, 64, 8.0, Boundary::periodic);
    const Wavefunction one_d = gaussian_packet(g1, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS((void)exchange_defect(one_d), std::invalid_argument);
}

TEST_CASE("decompose unwraps a 2D winding phase") {
    const Grid g2 = make_grid(2, 64, 16.0, Boundary::periodic);
    const double hbar = 1.0;
    const double p1 = 2.0 * oracle::pi * hbar * 3.0 / g2.box_length;
    const double p2 = 2.0 * oracle::pi * hbar * 2.0 / g2.box_length;
    Wavefunction psi{g2, std::vector<cd>(g2.size()), 0.0, hbar, 1.0};
    for (int i = 0; i < g2.points_per_axis; ++i)
        for (int j = 0; j < g2.points_per_axis; ++j)
            psi.values[g2.index2(i, j)] =
                std::polar(1.0, (p1 * g2.coord(i) + p2 * g2.coord(j)) / hbar);
    normalize(psi);

    const MadelungFields m = decompose(psi);
    const auto gx = action_gradient(m, 0);
    const auto gy = action_gradient(m, 1);
    for (int i = 2; i < g2.points_per_axis - 2; ++i) {
        for (int j = 2; j < g2.points_per_axis - 2; ++j) {
            CHECK(gx[g2.index2(i, j)] == doctest::Approx(p1).epsilon(1e-8));
            CHECK(gy[g2.index2(i, j)] == doctest::Approx(p2).epsilon(1e-8));
        }
    }
}
