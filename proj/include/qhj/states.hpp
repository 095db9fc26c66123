#pragma once

#include "qhj/wavefunction.hpp"

namespace qhj {

// Normalized Gaussian packet: |psi|^2 has variance sigma0^2, so
// var_x = sigma0^2 and var_p = hbar^2/(4 sigma0^2) at t = 0.
// converge_time > 0 adds the quadratic phase S = -m (x-x0)^2 / (2 t_c),
// an inward velocity field that focuses classically at t = t_c.
Wavefunction gaussian_packet(const Grid& g, double hbar, double mass, double sigma0,
                             double x0 = 0.0, double p0 = 0.0, double converge_time = 0.0);

// Nearest momentum commensurate with the periodic box: hbar * 2pi j / L.
double commensurate_momentum(const Grid& g, double hbar, double p0);

// exp(i p0 x / hbar)/sqrt(L); p0 is snapped with commensurate_momentum.
Wavefunction plane_wave_state(const Grid& g, double hbar, double mass, double p0);

// Harmonic trap eigenstate, n in [0, 3].
Wavefunction harmonic_eigenstate(const Grid& g, double hbar, double mass, double omega, int n);

// Dirichlet box mode sqrt(2/L) sin(n pi (x + L/2)/L), n >= 1.
Wavefunction box_mode_state(const Grid& g, double hbar, double mass, int n);

// Two-particle builders on a 2D grid interpreted as (x1, x2).
Wavefunction product_state(const Grid& g2, const Wavefunction& a, const Wavefunction& b);
// (a(x1) b(x2) + sign * b(x1) a(x2)) normalized; sign = +1 or -1.
Wavefunction exchange_combination(const Grid& g2, const Wavefunction& a, const Wavefunction& b,
                                  int sign);

Wavefunction superpose(const Wavefunction& a, const Wavefunction& b, cd ca, cd cb);

} // namespace qhj
