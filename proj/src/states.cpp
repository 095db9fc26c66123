#include "qhj/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qhj {

Wavefunction gaussian_packet(const Grid& g, double hbar, double mass, double sigma0,
                             double x0, double p0, double converge_time) {
    if (g.dimension != 1)
        throw std::invalid_argument("gaussian_packet: 1D grids only");
    if (!(sigma0 > 0.0))
        throw std::invalid_argument("gaussian_packet: sigma0 must be > 0");
    Wavefunction psi{g, std::vector<cd>(g.size()), 0.0, hbar, mass};
    for (int k = 0; k < g.points_per_axis; ++k) {
        const double dx = g.coord(k) - x0;
        const double amp = std::exp(-dx * dx / (4.0 * sigma0 * sigma0));
        double s = p0 * dx;
        if (converge_time > 0.0) s -= mass * dx * dx / (2.0 * converge_time);
        psi.values[k] = std::polar(amp, s / hbar);
    }
    return normalize(psi);
}

double commensurate_momentum(const Grid& g, double hbar, double p0) {
    const double unit = hbar * 2.0 * std::numbers::pi / g.box_length;
    return unit * std::round(p0 / unit);
}

Wavefunction plane_wave_state(const Grid& g, double hbar, double mass, double p0) {
    if (g.dimension != 1)
        throw std::invalid_argument("plane_wave_state: 1D grids only");
    if (g.boundary != Boundary::periodic)
        throw std::invalid_argument("plane_wave_state: requires a periodic grid");
    const double p = commensurate_momentum(g, hbar, p0);
    Wavefunction psi{g, std::vector<cd>(g.size()), 0.0, hbar, mass};
    const double amp = 1.0 / std::sqrt(g.box_length);
    for (int k = 0; k < g.points_per_axis; ++k)
        psi.values[k] = std::polar(amp, p * g.coord(k) / hbar);
    return psi;
}

Wavefunction harmonic_eigenstate(const Grid& g, double hbar, double mass, double omega, int n) {
    if (g.dimension != 1)
        throw std::invalid_argument("harmonic_eigenstate: 1D grids only");
    if (n < 0 || n > 3)
        throw std::invalid_argument("harmonic_eigenstate: n must be in [0, 3]");
    const double a = mass * omega / hbar; // y = x sqrt(a)
    Wavefunction psi{g, std::vector<cd>(g.size()), 0.0, hbar, mass};
    for (int k = 0; k < g.points_per_axis; ++k) {
        const double y = g.coord(k) * std::sqrt(a);
        double hermite = 1.0;
        switch (n) {
            case 0: hermite = 1.0; break;
            case 1: hermite = 2.0 * y; break;
            case 2: hermite = 4.0 * y * y - 2.0; break;
            case 3: hermite = 8.0 * y * y * y - 12.0 * y; break;
        }
        psi.values[k] = hermite * std::exp(-0.5 * y * y);
    }
    return normalize(psi);
}

Wavefunction box_mode_state(const Grid& g, double hbar, double mass, int n) {
    if (g.dimension != 1)
        throw std::invalid_argument("box_mode_state: 1D grids only");
    if (g.boundary != Boundary::dirichlet)
        throw std::invalid_argument("box_mode_state: requires a Dirichlet grid");
    if (n < 1) throw std::invalid_argument("box_mode_state: n must be >= 1");
    Wavefunction psi{g, std::vector<cd>(g.size()), 0.0, hbar, mass};
    const double L = g.box_length;
    for (int k = 0; k < g.points_per_axis; ++k) {
        const double u = (g.coord(k) + 0.5 * L) / L;
        psi.values[k] = std::sin(n * std::numbers::pi * u);
    }
    return normalize(psi);
}

Wavefunction product_state(const Grid& g2, const Wavefunction& a, const Wavefunction& b) {
    if (g2.dimension != 2)
        throw std::invalid_argument("product_state: needs a 2D grid");
    if (a.grid.points_per_axis != g2.points_per_axis ||
        b.grid.points_per_axis != g2.points_per_axis)
        throw std::invalid_argument("product_state: axis size mismatch");
    Wavefunction psi{g2, std::vector<cd>(g2.size()), 0.0, a.hbar, a.mass};
    const int n = g2.points_per_axis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            psi.values[g2.index2(i, j)] = a.values[i] * b.values[j];
    return normalize(psi);
}

Wavefunction exchange_combination(const Grid& g2, const Wavefunction& a, const Wavefunction& b,
                                  int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("exchange_combination: sign must be +1 or -1");
    Wavefunction psi = product_state(g2, a, b);
    const Wavefunction swapped = product_state(g2, b, a);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] += static_cast<double>(sign) * swapped.values[i];
    return normalize(psi);
}

Wavefunction superpose(const Wavefunction& a, const Wavefunction& b, cd ca, cd cb) {
    if (a.grid != b.grid)
        throw std::invalid_argument("superpose: grid mismatch");
    Wavefunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = ca * a.values[i] + cb * b.values[i];
    return out;
}

} // namespace qhj
