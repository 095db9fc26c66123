#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qhj/rays.hpp"
#include "qhj/states.hpp"

using namespace qhj;

namespace {

MadelungFields converging_initial(const Grid& g, double hbar, double mass, double sigma0,
                                  double t_focus) {
    return decompose(gaussian_packet(g, hbar, mass, sigma0, 0.0, 0.0, t_focus));
}

} // namespace

TEST_CASE("free parallel rays never form a caustic") {
    const Grid g = make_grid(1, 512, 40.0, Boundary::periodic);
    const Wavefunction psi = plane_wave_state(g, 1.0, 1.0, 1.2);
    const auto r = trace_classical(decompose(psi), Potential::free_space(), 1.0, 1e-2, 5.0, 32,
                                   LaunchMode::uniform, 100);
    CHECK_FALSE(r.caustic.formed);
    for (const auto& bundle : r.history)
        for (double j : bundle.jacobian) CHECK(j == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("converging action focuses all rays at t_focus") {
    const Grid g = make_grid(1, 2048, 40.0, Boundary::periodic);
    const double t_focus = 1.0, dt = 1e-3;
    const auto initial = converging_initial(g, 1.0, 1.0, 1.0, t_focus);
    const auto r = trace_classical(initial, Potential::free_space(), 1.0, dt, 2.0, 64,
                                   LaunchMode::uniform, 50);

    REQUIRE(r.caustic.formed);
    CHECK(std::abs(r.caustic.first_time - t_focus) <= 2.0 * dt);
    CHECK(std::abs(r.caustic.location) < 0.05);

    // analytic characteristic: x(t) = x0 (1 - t/t_focus)
    const auto& launch = r.history.front();
    const auto& half = r.history[10]; // t = 0.5
    for (std::size_t i = 0; i < launch.positions.size(); ++i)
        CHECK(half.positions[i] ==
              doctest::Approx(oracle::focusing_ray(launch.positions[i], half.time, t_focus))
                  .epsilon(1e-6));
}

TEST_CASE("harmonic rays from rest focus at the quarter period") {
    const Grid g = make_grid(1, 1024, 30.0, Boundary::periodic);
    const double omega = 1.3, dt = 5e-4;
    // real Gaussian: dS/dx = 0, rays start at rest
    const auto initial = decompose(gaussian_packet(g, 1.0, 1.0, 1.0));
    const auto r = trace_classical(initial, Potential::harmonic_trap(omega), 1.0, dt, 2.0, 32,
                                   LaunchMode::uniform, 100);
    REQUIRE(r.caustic.formed);
    CHECK(std::abs(r.caustic.first_time - oracle::harmonic_focus_time(omega)) <= 2.0 * dt);
}

TEST_CASE("ray energy is conserved in a static potential") {
    const Grid g = make_grid(1, 1024, 30.0, Boundary::periodic);
    const double mass = 1.4, dt = 2e-4;
    const Potential v = Potential::harmonic_trap(1.0);
    const auto initial = decompose(gaussian_packet(g, 1.0, mass, 1.0, 0.0, 0.8));
    const auto r = trace_classical(initial, v, mass, dt, 1.0, 16, LaunchMode::uniform, 5000);

    const auto& first = r.history.front();
    const auto& last = r.history.back();
    for (std::size_t i = 0; i < first.positions.size(); ++i) {
        const double e0 = ray_energy(first.positions[i], first.momenta[i], v, mass, 0.0);
        const double e1 = ray_energy(last.positions[i], last.momenta[i], v, mass, 1.0);
        CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-8);
    }
}

TEST_CASE("velocity-Verlet rays converge at second order on the harmonic flow") {
    const Grid g = make_grid(1, 1024, 30.0, Boundary::periodic);
    const double omega = 1.0, t_final = 1.0;
    const Potential v = Potential::harmonic_trap(omega);
    const auto initial = decompose(gaussian_packet(g, 1.0, 1.0, 1.0));

    auto max_error = [&](double dt) {
        const auto r = trace_classical(initial, v, 1.0, dt, t_final, 16, LaunchMode::uniform,
                                       1 << 30);
        const auto& launch = r.history.front();
        const auto& last = r.history.back();
        double err = 0.0;
        for (std::size_t i = 0; i < last.positions.size(); ++i) {
            const double exact = launch.positions[i] * std::cos(omega * t_final);
            err = std::max(err, std::abs(last.positions[i] - exact));
        }
        return err;
    };
    const double e1 = max_error(4e-3);
    const double e2 = max_error(2e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("lambda = 0 reproduces trace_classical bitwise") {
    const Grid g = make_grid(1, 1024, 40.0, Boundary::periodic);
    const auto psi = gaussian_packet(g, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0);
    const auto initial = decompose(psi);
    FieldHistory u = quantum_potential_history({psi});

    const auto a = trace_classical(initial, Potential::free_space(), 1.0, 1e-3, 1.5, 32,
                                   LaunchMode::uniform, 100);
    const auto b = trace_scaled(initial, Potential::free_space(), 1.0, 1e-3, 1.5, 32, 0.0, u,
                                LaunchMode::uniform, 100);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t s = 0; s < a.history.size(); ++s) {
        CHECK(a.history[s].positions == b.history[s].positions);
        CHECK(a.history[s].momenta == b.history[s].momenta);
    }
    CHECK(a.caustic.formed == b.caustic.formed);
}

TEST_CASE("lambda = 1 free Gaussian rays follow the spreading flow, no caustic") {
    const Grid g = make_grid(1, 2048, 60.0, Boundary::periodic);
    const double hbar = 1.0, mass = 1.0, sigma0 = 1.0;
    const double t_char = 2.0 * mass * sigma0 * sigma0 / hbar;
    const double t_final = 1.5 * t_char; // long enough to see spreading dynamics
    const Wavefunction psi0 = gaussian_packet(g, hbar, mass, sigma0);

    const PropagatorConfig cfg{Scheme::split_step_spectral, 1e-3, 10};
    const auto snaps = propagate(psi0, Potential::free_space(), cfg, t_final);
    const FieldHistory u = quantum_potential_history(snaps);

    const auto r = trace_scaled(decompose(psi0), Potential::free_space(), mass, 1e-3, t_final,
                                32, 1.0, u, LaunchMode::uniform, 200);
    CHECK_FALSE(r.caustic.formed);

    const auto& launch = r.history.front();
    const auto& last = r.history.back();
    for (std::size_t i = 0; i < last.positions.size(); ++i) {
        const double expect =
            oracle::bohm_free_gaussian_path(launch.positions[i], sigma0, hbar, mass, t_final);
        CHECK(last.positions[i] == doctest::Approx(expect).epsilon(2e-3));
    }
}

TEST_CASE("launch refuses node-masked points and too few rays") {
    const Grid g = make_grid(1, 512, 30.0, Boundary::periodic);
    const auto initial = decompose(gaussian_packet(g, 1.0, 1.0, 1.0));
    CHECK_THROWS_AS((void)trace_classical(initial, Potential::free_space(), 1.0, 1e-3, 1.0, 8),
                    std::invalid_argument);

    // the first excited state has a node at the distribution median
    const auto noded = decompose(harmonic_eigenstate(g, 1.0, 1.0, 1.0, 1));
    CHECK_THROWS_AS((void)trace_classical(noded, Potential::free_space(), 1.0, 1e-3, 1.0, 17,
                                          LaunchMode::quantile),
                    std::invalid_argument);
}
