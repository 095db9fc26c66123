#include "qhj/weyl.hpp"

#include <cmath>
#include <stdexcept>

#include "qhj/fft.hpp"
#include "qhj/states.hpp"
#include "qhj/stencil.hpp"

namespace qhj {

namespace {

std::vector<cd> spectral_derivative(const std::vector<cd>& f, const Grid& g, int order) {
    std::vector<cd> a = f;
    fft::forward(a);
    for (int j = 0; j < g.points_per_axis; ++j) {
        const double k = wavenumber(g, j);
        cd factor(0.0, k);
        if (order == 2) factor = cd(-k * k, 0.0);
        a[static_cast<std::size_t>(j)] *= factor;
    }
    fft::inverse(a);
    return a;
}

std::vector<double> spectral_derivative_real(const std::vector<double>& f, const Grid& g,
                                             int order) {
    std::vector<cd> a(f.begin(), f.end());
    a = spectral_derivative(a, g, order);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = a[i].real();
    return out;
}

std::vector<cd> first_derivative(const Wavefunction& psi) {
    if (psi.grid.boundary == Boundary::periodic)
        return spectral_derivative(psi.values, psi.grid, 1);
    return stencil::deriv1_c4(psi.values, psi.grid);
}

void require_1d(const Wavefunction& psi, const char* what) {
    if (psi.grid.dimension != 1)
        throw std::invalid_argument(std::string(what) + ": 1D grids only");
}

} // namespace

Wavefunction centered(const Wavefunction& psi) {
    require_1d(psi, "centered");
    Wavefunction out = psi;
    normalize(out);

    for (int pass = 0; pass < 2; ++pass) {
        const Observables o = observables(out);

        // Remove the mean momentum with a phase ramp, then translate the mean
        // position to the origin. Neither changes |psi| or |psi_hat| shape.
        if (o.mean_p != 0.0) {
            for (int k = 0; k < out.grid.points_per_axis; ++k)
                out.values[static_cast<std::size_t>(k)] *=
                    std::polar(1.0, -o.mean_p * out.grid.coord(k) / out.hbar);
        }
        const Observables o2 = observables(out);
        if (o2.mean_x != 0.0) {
            if (out.grid.boundary == Boundary::periodic) {
                std::vector<cd> a = out.values;
                fft::forward(a);
                for (int j = 0; j < out.grid.points_per_axis; ++j)
                    a[static_cast<std::size_t>(j)] *=
                        std::polar(1.0, wavenumber(out.grid, j) * o2.mean_x);
                fft::inverse(a);
                out.values = std::move(a);
            } else if (std::abs(o2.mean_x) > 1e-9 * out.grid.box_length) {
                throw std::invalid_argument(
                    "centered: cannot translate on a Dirichlet grid; state must be "
                    "spatially centered already");
            }
        }
    }

    const Observables check = observables(out);
    const double p_scale = out.hbar / out.grid.spacing();
    if (std::abs(check.mean_x) > 1e-7 * out.grid.box_length ||
        std::abs(check.mean_p) > 1e-7 * p_scale)
        throw NumericalError("centered: residual means did not vanish");
    return out;
}

double weyl_functional(const Wavefunction& psi, double alpha) {
    require_1d(psi, "weyl_functional");
    const Wavefunction c = centered(psi);
    const auto dpsi = first_derivative(c);
    KahanSum s;
    for (int k = 0; k < c.grid.points_per_axis; ++k) {
        const auto i = static_cast<std::size_t>(k);
        s.add(std::norm(alpha * c.grid.coord(k) * c.values[i] + dpsi[i]));
    }
    return s.value() * c.grid.spacing();
}

WeylMinimum weyl_minimize(const Wavefunction& psi) {
    const Wavefunction c = centered(psi);
    const Observables o = observables(c);
    const double h = c.grid.spacing();
    if (o.var_x < h * h)
        throw std::invalid_argument("weyl_minimize: var_x below grid resolution");
    WeylMinimum m;
    m.alpha_star = 1.0 / (2.0 * o.var_x);
    m.g_min = weyl_functional(c, m.alpha_star);
    if (m.g_min < -1e-8)
        throw NumericalError("weyl_minimize: g(alpha*) < -1e-8; positivity violated");
    return m;
}

MomentumSplit momentum_variance_split(const MadelungFields& m) {
    if (m.grid.dimension != 1)
        throw std::invalid_argument("momentum_variance_split: 1D grids only");

    const Wavefunction psi = recompose(m);
    const double h = m.grid.spacing();
    const double hbar = m.hbar;
    const std::size_t n = m.amplitude.size();

    const bool node_free = m.node_count() == 0;
    const bool spectral = node_free && m.grid.boundary == Boundary::periodic;

    std::vector<double> r1, r2; // dR/dx, d2R/dx2
    if (spectral) {
        r1 = spectral_derivative_real(m.amplitude, m.grid, 1);
        r2 = spectral_derivative_real(m.amplitude, m.grid, 2);
    } else {
        r1 = stencil::deriv1(m.amplitude, m.grid, 0);
        r2 = stencil::laplacian(m.amplitude, m.grid);
    }
    const auto dpsi = first_derivative(psi);

    MomentumSplit out;
    KahanSum drift, curv, parts, excluded;
    for (std::size_t i = 0; i < n; ++i) {
        if (m.node_mask[i]) {
            excluded.add(m.amplitude[i] * m.amplitude[i] * h);
            continue;
        }
        const double r = m.amplitude[i];
        // R^2 (S')^2 evaluated as (hbar Im(conj(psi) psi'))^2 / R^2, which
        // never touches the unwrapped action and is exact for plane waves.
        const double im = (std::conj(psi.values[i]) * dpsi[i]).imag();
        drift.add(hbar * hbar * im * im / (r * r));
        curv.add(-r * r2[i]);
        parts.add(r1[i] * r1[i]);
    }
    out.drift = drift.value() * h;
    out.curvature = hbar * hbar * curv.value() * h;
    out.curvature_by_parts = hbar * hbar * parts.value() * h;
    out.total = out.drift + out.curvature;
    out.excluded_measure = excluded.value();

    const double scale = std::max({std::abs(out.curvature), std::abs(out.curvature_by_parts),
                                   std::abs(out.drift), 1e-300});
    out.parts_gap = std::abs(out.curvature - out.curvature_by_parts) / scale;
    // A sign error between the two routes would show up as a gap of order 2.
    if (spectral && out.parts_gap > 1e-4)
        throw NumericalError("momentum_variance_split: integration-by-parts identity violated");
    return out;
}

UncertaintyReport uncertainty_report(const Wavefunction& psi, double r_floor) {
    const Wavefunction c = centered(psi);
    const Observables o = observables(c);
    const MadelungFields m = decompose(c, r_floor);
    const MomentumSplit split = momentum_variance_split(m);

    UncertaintyReport r;
    r.dx2 = o.var_x;
    r.dp2_spectral = o.var_p;
    r.dp2_hj = split.total;
    r.hj_drift_term = split.drift;
    r.hj_quantum_term = split.curvature;
    r.product = std::sqrt(o.var_x * o.var_p);
    r.g_min_alpha = 1.0 / (2.0 * o.var_x);
    r.excluded_measure = split.excluded_measure;
    r.parts_gap = split.parts_gap;
    return r;
}

std::vector<WidthScalingRow> width_scaling_study(const Grid& g, double hbar, double mass,
                                                 const std::vector<double>& widths) {
    if (widths.empty())
        throw std::invalid_argument("width_scaling_study: no widths given");
    std::vector<WidthScalingRow> rows;
    rows.reserve(widths.size());
    for (double sigma : widths) {
        if (sigma < 4.0 * g.spacing())
            throw std::invalid_argument("width_scaling_study: width below resolution floor");
        const Wavefunction psi = gaussian_packet(g, hbar, mass, sigma);
        const UncertaintyReport r = uncertainty_report(psi);
        rows.push_back({sigma, r.dx2, r.dp2_spectral, r.hj_quantum_term, r.product});
    }
    return rows;
}

double fit_power_law_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_power_law_exponent: need matching samples, >= 2");
    KahanSum sx, sy, sxx, sxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_power_law_exponent: samples must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx.add(lx);
        sy.add(ly);
        sxx.add(lx * lx);
        sxy.add(lx * ly);
    }
    const auto n = static_cast<double>(x.size());
    return (n * sxy.value() - sx.value() * sy.value()) /
           (n * sxx.value() - sx.value() * sx.value());
}

} // namespace qhj
