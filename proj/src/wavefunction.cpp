#include "qhj/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

#include "qhj/fft.hpp"
#include "qhj/stencil.hpp"

namespace qhj {

double norm_sq(const Wavefunction& psi) {
    KahanSum s;
    for (const auto& v : psi.values) s.add(std::norm(v));
    return s.value() * psi.grid.cell_volume();
}

Wavefunction& normalize(Wavefunction& psi) {
    const double n2 = norm_sq(psi);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::invalid_argument("normalize: wavefunction has zero or non-finite norm");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : psi.values) v *= s;
    return psi;
}

bool all_finite(const Wavefunction& psi) {
    for (const auto& v : psi.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

cd inner_product(const Wavefunction& a, const Wavefunction& b) {
    if (a.grid != b.grid)
        throw std::invalid_argument("inner_product: grid mismatch");
    KahanSum re, im;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const cd t = std::conj(a.values[i]) * b.values[i];
        re.add(t.real());
        im.add(t.imag());
    }
    const double w = a.grid.cell_volume();
    return cd(re.value() * w, im.value() * w);
}

std::vector<cd> spectrum(const Wavefunction& psi) {
    if (psi.grid.dimension != 1)
        throw std::invalid_argument("spectrum: 1D grids only");
    require_spectral(psi.grid, "spectrum");
    std::vector<cd> a = psi.values;
    fft::forward(a);
    return a;
}

namespace {

// Spectral momentum moments: weights |F_j|^2 * h/n sum to norm_sq.
void spectral_p_moments(const Wavefunction& psi, double& mean_p, double& mean_p2) {
    const auto a = spectrum(psi);
    const int n = psi.grid.points_per_axis;
    const double w = psi.grid.spacing() / n;
    KahanSum s1, s2;
    for (int j = 0; j < n; ++j) {
        const double p = psi.hbar * wavenumber(psi.grid, j);
        const double m = std::norm(a[j]) * w;
        s1.add(p * m);
        s2.add(p * p * m);
    }
    mean_p = s1.value();
    mean_p2 = s2.value();
}

// Dirichlet path: <p> = Im sum conj(psi) psi' h * hbar, <p^2> = -hbar^2 sum conj(psi) psi'' h.
void stencil_p_moments(const Wavefunction& psi, double& mean_p, double& mean_p2) {
    const auto d1 = stencil::deriv1_c4(psi.values, psi.grid);
    const auto d2 = stencil::deriv2_c4(psi.values, psi.grid);
    KahanSum s1, s2;
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        s1.add((std::conj(psi.values[i]) * d1[i]).imag());
        s2.add(-(std::conj(psi.values[i]) * d2[i]).real());
    }
    const double h = psi.grid.spacing();
    mean_p = psi.hbar * s1.value() * h;
    mean_p2 = psi.hbar * psi.hbar * s2.value() * h;
}

} // namespace

Observables observables(const Wavefunction& psi) {
    if (psi.grid.dimension != 1)
        throw std::invalid_argument("observables: 1D grids only");
    const double n2 = norm_sq(psi);
    if (std::abs(n2 - 1.0) > 1e-6)
        throw std::invalid_argument("observables: wavefunction not normalized");

    const double h = psi.grid.spacing();
    KahanSum sx, sxx;
    for (int k = 0; k < psi.grid.points_per_axis; ++k) {
        const double x = psi.grid.coord(k);
        const double w = std::norm(psi.values[k]) * h;
        sx.add(x * w);
        sxx.add(x * x * w);
    }

    double mean_p = 0.0, mean_p2 = 0.0;
    if (psi.grid.boundary == Boundary::periodic)
        spectral_p_moments(psi, mean_p, mean_p2);
    else
        stencil_p_moments(psi, mean_p, mean_p2);

    Observables o;
    o.norm_sq = n2;
    o.mean_x = sx.value();
    o.var_x = sxx.value() - o.mean_x * o.mean_x;
    o.mean_p = mean_p;
    o.var_p = mean_p2 - mean_p * mean_p;
    return o;
}

double kinetic_energy(const Wavefunction& psi) {
    const Grid& g = psi.grid;
    const double pref = psi.hbar * psi.hbar / (2.0 * psi.mass);
    if (g.boundary == Boundary::periodic) {
        require_spectral(g, "kinetic_energy");
        const int n = g.points_per_axis;
        std::vector<cd> a = psi.values;
        KahanSum s;
        if (g.dimension == 1) {
            fft::forward(a);
            const double w = g.spacing() / n;
            for (int j = 0; j < n; ++j) {
                const double k = wavenumber(g, j);
                s.add(k * k * std::norm(a[j]) * w);
            }
        } else {
            fft::forward_2d(a, static_cast<std::size_t>(n));
            const double w = g.cell_volume() / (static_cast<double>(n) * n);
            for (int i = 0; i < n; ++i) {
                const double ki = wavenumber(g, i);
                for (int j = 0; j < n; ++j) {
                    const double kj = wavenumber(g, j);
                    s.add((ki * ki + kj * kj) * std::norm(a[g.index2(i, j)]) * w);
                }
            }
        }
        return pref * s.value();
    }

    // Dirichlet: -hbar^2/2m <psi, lap psi> with 4th-order stencils.
    if (g.dimension == 1) {
        const auto d2 = stencil::deriv2_c4(psi.values, g);
        KahanSum s;
        for (std::size_t i = 0; i < psi.values.size(); ++i)
            s.add(-(std::conj(psi.values[i]) * d2[i]).real());
        return pref * s.value() * g.cell_volume();
    }
    const int n = g.points_per_axis;
    std::vector<cd> line(n);
    Grid axis_grid = g;
    axis_grid.dimension = 1;
    KahanSum s;
    for (int axis = 0; axis < 2; ++axis) {
        for (int l = 0; l < n; ++l) {
            for (int k = 0; k < n; ++k)
                line[k] = psi.values[axis == 0 ? g.index2(k, l) : g.index2(l, k)];
            const auto d2 = stencil::deriv2_c4(line, axis_grid);
            for (int k = 0; k < n; ++k)
                s.add(-(std::conj(line[k]) * d2[k]).real());
        }
    }
    return pref * s.value() * g.cell_volume();
}

double potential_energy(const Wavefunction& psi, const std::vector<double>& v_grid) {
    if (v_grid.size() != psi.values.size())
        throw std::invalid_argument("potential_energy: field size mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < v_grid.size(); ++i)
        s.add(v_grid[i] * std::norm(psi.values[i]));
    return s.value() * psi.grid.cell_volume();
}

double total_energy(const Wavefunction& psi, const std::vector<double>& v_grid) {
    return kinetic_energy(psi) + potential_energy(psi, v_grid);
}

} // namespace qhj
