#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "oracles.hpp"
#include "qhj/madelung.hpp"
#include "qhj/states.hpp"
#include "qhj/tdse.hpp"

using namespace qhj;

TEST_CASE("split step advances a free plane wave by the exact phase") {
    const Grid g = make_grid(1, 256, 20.0, Boundary::periodic);
    const double hbar = 1.0, mass = 2.0;
    const Wavefunction psi = plane_wave_state(g, hbar, mass, 2.5);
    const double p0 = commensurate_momentum(g, hbar, 2.5);
    const double energy = p0 * p0 / (2.0 * mass);

    const PropagatorConfig cfg{Scheme::split_step_spectral, 1e-3, 1};
    const Wavefunction next = step(psi, Potential::free_space(), cfg);

    for (std::size_t k = 0; k < psi.values.size(); ++k) {
        const cd expect = psi.values[k] * std::polar(1.0, -energy * cfg.dt / hbar);
        CHECK(std::abs(next.values[k] - expect) < 1e-13);
    }
}

TEST_CASE("harmonic ground state is stationary under split step") {
    const Grid g = make_grid(1, 512, 24.0, Boundary::periodic);
    const Wavefunction psi0 = harmonic_eigenstate(g, 1.0, 1.0, 1.0, 0);
    const Potential v = Potential::harmonic_trap(1.0);
    const PropagatorConfig cfg{Scheme::split_step_spectral, 1e-3, 1000};

    const auto snaps = propagate(psi0, v, cfg, 1.0);
    const double overlap = std::abs(inner_product(snaps.back(), psi0));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("free Gaussian spreading matches the analytic law") {
    const Grid g = make_grid(1, 1024, 40.0, Boundary::periodic);
    const double hbar = 1.0, mass = 1.0, sigma0 = 1.0, t_final = 1.0;
    const Wavefunction psi0 = gaussian_packet(g, hbar, mass, sigma0);
    const PropagatorConfig cfg{Scheme::split_step_spectral, 5e-4, 2000};

    const auto snaps = propagate(psi0, Potential::free_space(), cfg, t_final);
    const Observables o = observables(snaps.back());
    const double expect = oracle::spread_sigma_x(sigma0, hbar, mass, t_final);
    CHECK(std::sqrt(o.var_x) == doctest::Approx(expect).epsilon(1e-4));
    // momentum distribution is frozen in free flight
    CHECK(o.var_p == doctest::Approx(oracle::gaussian_var_p(hbar, sigma0)).epsilon(1e-10));
}

TEST_CASE("propagate with t_final = 0 returns the input snapshot only") {
    const Grid g = make_grid(1, 128, 16.0, Boundary::periodic);
    const Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0);
    const auto snaps = propagate(psi, Potential::free_space(),
                                 {Scheme::split_step_spectral, 1e-3, 1}, 0.0);
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].values == psi.values);
}

TEST_CASE("norm is conserved to 1e-10 over ten thousand split steps") {
    const Grid g = make_grid(1, 256, 24.0, Boundary::periodic);
    const Wavefunction psi0 = harmonic_eigenstate(g, 1.0, 1.0, 1.0, 0);
    const Potential v = Potential::harmonic_trap(1.0);
    const PropagatorConfig cfg{Scheme::split_step_spectral, 1e-4, 10000};
    const auto snaps = propagate(psi0, v, cfg, 1.0);
    CHECK(std::abs(norm_sq(snaps.back()) - 1.0) < 1e-10);
}

TEST_CASE("propagation is deterministic run to run") {
    const Grid g = make_grid(1, 256, 20.0, Boundary::periodic);
    const Wavefunction psi0 = gaussian_packet(g, 1.0, 1.0, 0.9, 0.3, 1.1);
    const Potential v = Potential::harmonic_trap(0.7);
    const PropagatorConfig cfg{Scheme::split_step_spectral, 1e-3, 100};
    const auto a = propagate(psi0, v, cfg, 0.5);
    const auto b = propagate(psi0, v, cfg, 0.5);
    REQUIRE(a.size() == b.size());
    for (std::size_t s = 0; s < a.size(); ++s) CHECK(a[s].values == b[s].values);
}

TEST_CASE("step is linear in the wavefunction for both schemes") {
    const Grid g = make_grid(1, 256, 20.0, Boundary::periodic);
    const Wavefunction a = gaussian_packet(g, 1.0, 1.0, 1.0, -1.0);
    const Wavefunction b = gaussian_packet(g, 1.0, 1.0, 0.7, 1.5, 0.8);
    const cd ca(0.6, 0.2), cb(-0.3, 0.7);
    const Potential v = Potential::harmonic_trap(1.0);

    for (const Scheme scheme : {Scheme::split_step_spectral, Scheme::crank_nicolson}) {
        const PropagatorConfig cfg{scheme, 1e-3, 1};
        const Wavefunction mixed = step(superpose(a, b, ca, cb), v, cfg);
        const Wavefunction sa = step(a, v, cfg);
        const Wavefunction sb = step(b, v, cfg);
        for (std::size_t k = 0; k < mixed.values.size(); ++k)
            CHECK(std::abs(mixed.values[k] - (ca * sa.values[k] + cb * sb.values[k])) < 1e-12);
    }
}

TEST_CASE("Crank-Nicolson is exactly unitary on a periodic grid") {
    const Grid g = make_grid(1, 300, 24.0, Boundary::periodic); // no power of two needed
    Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0, 0.5, 1.2);
    const Potential v = Potential::soft_coulomb_well(1.0, 0.8);
    const PropagatorConfig cfg{Scheme::crank_nicolson, 2e-3, 1};
    for (int s = 0; s < 1000; ++s) psi = step(psi, v, cfg);
    CHECK(std::abs(norm_sq(psi) - 1.0) < 1e-12);
}

TEST_CASE("Crank-Nicolson holds the Dirichlet box mode stationary") {
    const Grid g = make_grid(1, 256, 8.0, Boundary::dirichlet);
    const Wavefunction psi0 = box_mode_state(g, 1.0, 1.0, 1);
    Wavefunction psi = psi0;
    const PropagatorConfig cfg{Scheme::crank_nicolson, 1e-3, 1};
    for (int s = 0; s < 500; ++s) psi = step(psi, Potential::free_space(), cfg);
    CHECK(std::abs(norm_sq(psi) - 1.0) < 1e-12);
    // the discrete sine mode is an exact eigenvector of the stencil Hamiltonian
    CHECK(std::abs(inner_product(psi, psi0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split step and Crank-Nicolson agree on the spreading width") {
    const Grid g = make_grid(1, 1024, 40.0, Boundary::periodic);
    const Wavefunction psi0 = gaussian_packet(g, 1.0, 1.0, 1.0);
    const double t_final = 0.5;
    const auto ss =
        propagate(psi0, Potential::free_space(), {Scheme::split_step_spectral, 5e-4, 1000}, t_final);
    const auto cn =
        propagate(psi0, Potential::free_space(), {Scheme::crank_nicolson, 5e-4, 1000}, t_final);
    const double dx_ss = std::sqrt(observables(ss.back()).var_x);
    const double dx_cn = std::sqrt(observables(cn.back()).var_x);
    CHECK(dx_ss == doctest::Approx(dx_cn).epsilon(1e-3));
}

TEST_CASE("energy drift of an eigenstate stays tiny") {
    const Grid g = make_grid(1, 256, 24.0, Boundary::periodic);
    const Wavefunction psi0 = harmonic_eigenstate(g, 1.0, 1.0, 1.0, 0);
    const Potential v = Potential::harmonic_trap(1.0);
    const double e0 = mean_energy(psi0, v);
    const auto snaps = propagate(psi0, v, {Scheme::split_step_spectral, 1e-4, 2000}, 0.2);
    const double e1 = mean_energy(snaps.back(), v);
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-8);
}

TEST_CASE("sanity warning triggers when the potential phase outruns a step") {
    const Grid g = make_grid(1, 128, 16.0, Boundary::periodic);
    const Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0);
    const Potential v = Potential::harmonic_trap(10.0); // V ~ 3200 at the box edge
    CHECK(step_sanity_warning(psi, v, {Scheme::split_step_spectral, 1e-2, 1}).has_value());
    CHECK_FALSE(
        step_sanity_warning(psi, Potential::free_space(), {Scheme::split_step_spectral, 1e-2, 1})
            .has_value());
}

TEST_CASE("non-finite input aborts the step") {
    const Grid g = make_grid(1, 128, 16.0, Boundary::periodic);
    Wavefunction psi = gaussian_packet(g, 1.0, 1.0, 1.0);
    psi.values[10] = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS((void)step(psi, Potential::free_space(),
                               {Scheme::split_step_spectral, 1e-3, 1}),
                    NumericalError);
}

TEST_CASE("potential library values and gradients") {
    const Potential sc = Potential::soft_coulomb_well(2.0, 0.5);
    CHECK(sc.value(0.0, 1.0, 0.0) == doctest::Approx(-4.0));
    // gradient by central difference oracle
    const double fd =
        (sc.value(1.0 + 1e-6, 1.0, 0.0) - sc.value(1.0 - 1e-6, 1.0, 0.0)) / 2e-6;
    CHECK(sc.gradient(1.0, 1.0, 0.0) == doctest::Approx(fd).epsilon(1e-8));

    const Potential lens = Potential::focusing_lens(3.0, 1.5);
    CHECK(lens.value(2.0, 1.0, 1.0) == doctest::Approx(6.0));
    CHECK(lens.value(2.0, 1.0, 2.0) == 0.0);

    const Potential barrier = Potential::square_barrier(5.0, 2.0);
    CHECK(barrier.value(0.5, 1.0, 0.0) == 5.0);
    CHECK(barrier.value(1.5, 1.0, 0.0) == 0.0);

    const Grid g2 = make_grid(2, 16, 8.0, Boundary::periodic);
    const Potential h = Potential::harmonic_trap(1.0);
    const auto v2 = h.evaluate(g2, 2.0, 0.0);
    CHECK(v2[g2.index2(3, 11)] == doctest::Approx(v2[g2.index2(11, 3)])); // symmetric
}

TEST_CASE("2D split step keeps a symmetric state symmetric (smoke)") {
    const Grid g2 = make_grid(2, 64, 16.0, Boundary::periodic);
    Grid axis = g2;
    axis.dimension = 1;
    const Wavefunction a = harmonic_eigenstate(axis, 1.0, 1.0, 1.0, 0);
    const Wavefunction b = harmonic_eigenstate(axis, 1.0, 1.0, 1.0, 1);
    Wavefunction psi = exchange_combination(g2, a, b, +1);
    const Potential v = Potential::harmonic_trap(1.0);
    const PropagatorConfig cfg{Scheme::split_step_spectral, 2e-3, 1};
    for (int s = 0; s < 10; ++s) psi = step(psi, v, cfg);
    const auto [sym, anti] = exchange_defect(psi);
    CHECK(sym < 1e-12);
    CHECK(anti > 0.5);
}
