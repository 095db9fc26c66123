#include "qhj/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "qhj/stencil.hpp"

namespace qhj {

namespace {

// Fixed-order neighbor walk; determinism of the flood fill depends on it.
template <typename Fn>
void for_each_neighbor(const Grid& g, std::size_t idx, Fn&& fn) {
    const int n = g.points_per_axis;
    const bool per = g.boundary == Boundary::periodic;
    if (g.dimension == 1) {
        const int k = static_cast<int>(idx);
        if (per) {
            fn(static_cast<std::size_t>((k - 1 + n) % n));
            fn(static_cast<std::size_t>((k + 1) % n));
        } else {
            if (k > 0) fn(static_cast<std::size_t>(k - 1));
            if (k < n - 1) fn(static_cast<std::size_t>(k + 1));
        }
        return;
    }
    const int i = static_cast<int>(idx) / n;
    const int j = static_cast<int>(idx) % n;
    auto visit = [&](int a, int b) {
        if (per) {
            a = (a + n) % n;
            b = (b + n) % n;
            fn(g.index2(a, b));
        } else if (a >= 0 && a < n && b >= 0 && b < n) {
            fn(g.index2(a, b));
        }
    };
    visit(i - 1, j);
    visit(i + 1, j);
    visit(i, j - 1);
    visit(i, j + 1);
}

} // namespace

std::size_t MadelungFields::node_count() const {
    return static_cast<std::size_t>(std::count(node_mask.begin(), node_mask.end(), 1));
}

MadelungFields decompose(const Wavefunction& psi, double r_floor) {
    if (!(r_floor > 0.0) || r_floor > 1e-3)
        throw std::invalid_argument("decompose: r_floor must be in (0, 1e-3]");
    const std::size_t m = psi.values.size();
    MadelungFields out{psi.grid, std::vector<double>(m), std::vector<double>(m, 0.0),
                       std::vector<std::uint8_t>(m, 0), psi.time, psi.hbar, psi.mass};

    double max_r = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.amplitude[i] = std::abs(psi.values[i]);
        max_r = std::max(max_r, out.amplitude[i]);
    }
    if (max_r == 0.0)
        throw std::invalid_argument("decompose: wavefunction is identically zero");

    const double floor_abs = r_floor * max_r;
    for (std::size_t i = 0; i < m; ++i)
        out.node_mask[i] = out.amplitude[i] < floor_abs ? 1 : 0;

    const double two_pi_hbar = 2.0 * std::numbers::pi * psi.hbar;
    std::vector<std::uint8_t> visited(m, 0);

    // Unwrap each connected unmasked region by breadth-first flood fill,
    // seeded at the region's largest amplitude. Regions separated by node
    // lines stay independent; any phase jump across a node is left in place.
    auto unwrap_region = [&](std::size_t seed) {
        std::queue<std::size_t> q;
        visited[seed] = 1;
        out.action[seed] = psi.hbar * std::arg(psi.values[seed]);
        q.push(seed);
        while (!q.empty()) {
            const std::size_t cur = q.front();
            q.pop();
            for_each_neighbor(out.grid, cur, [&](std::size_t nb) {
                if (visited[nb] || out.node_mask[nb]) return;
                const double raw = psi.hbar * std::arg(psi.values[nb]);
                const double shift =
                    std::round((out.action[cur] - raw) / two_pi_hbar) * two_pi_hbar;
                out.action[nb] = raw + shift;
                visited[nb] = 1;
                q.push(nb);
            });
        }
    };

    while (true) {
        std::size_t seed = m;
        double best = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!visited[i] && !out.node_mask[i] && out.amplitude[i] > best) {
                best = out.amplitude[i];
                seed = i;
            }
        }
        if (seed == m) break;
        unwrap_region(seed);
    }

    // Nearest-neighbor extension of S into masked points (multi-source BFS
    // from the unmasked rim); keeps downstream stencils finite.
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < m; ++i)
        if (visited[i]) q.push(i);
    while (!q.empty()) {
        const std::size_t cur = q.front();
        q.pop();
        for_each_neighbor(out.grid, cur, [&](std::size_t nb) {
            if (visited[nb]) return;
            out.action[nb] = out.action[cur];
            visited[nb] = 1;
            q.push(nb);
        });
    }

    return out;
}

Wavefunction recompose(const MadelungFields& m) {
    Wavefunction psi{m.grid, std::vector<cd>(m.amplitude.size()), m.time, m.hbar, m.mass};
    for (std::size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] = std::polar(m.amplitude[i], m.action[i] / m.hbar);
    return psi;
}

QuantumPotentialField quantum_potential(const MadelungFields& m, double mass) {
    const std::size_t n = m.amplitude.size();
    if (m.node_count() == n)
        throw std::invalid_argument("quantum_potential: every point is node-masked");

    const auto lap = stencil::laplacian(m.amplitude, m.grid);
    QuantumPotentialField out{m.grid, std::vector<double>(n, 0.0), false};
    const double pref = -m.hbar * m.hbar / (2.0 * mass);
    std::vector<std::uint8_t> have(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.node_mask[i]) {
            out.u[i] = pref * lap[i] / m.amplitude[i];
            have[i] = 1;
        }
    }

    // Masked points inherit the nearest computed value.
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
        if (have[i]) q.push(i);
    while (!q.empty()) {
        const std::size_t cur = q.front();
        q.pop();
        for_each_neighbor(m.grid, cur, [&](std::size_t nb) {
            if (have[nb]) return;
            out.u[nb] = out.u[cur];
            have[nb] = 1;
            out.regularized = true;
            q.push(nb);
        });
    }
    return out;
}

namespace {

// dS/dx from phase-aware edge differences: each neighbor increment is reduced
// mod 2 pi hbar into (-pi hbar, pi hbar], which makes the gradient exact
// across the periodic seam where the unwrapped action jumps by the winding.
void action_gradient_line(const std::vector<double>& s, int n, double h, bool periodic,
                          double two_pi_hbar, std::vector<double>& grad) {
    auto edge = [&](int k) { // increment across edge k -> k+1 (wrapped)
        const double raw = s[(k + 1) % n] - s[k % n];
        return raw - std::round(raw / two_pi_hbar) * two_pi_hbar;
    };
    if (periodic) {
        for (int k = 0; k < n; ++k)
            grad[k] = (edge((k - 1 + n) % n) + edge(k)) / (2.0 * h);
        return;
    }
    grad[0] = (3.0 * edge(0) - edge(1)) / (2.0 * h);
    for (int k = 1; k < n - 1; ++k) grad[k] = (edge(k - 1) + edge(k)) / (2.0 * h);
    grad[n - 1] = (3.0 * edge(n - 2) - edge(n - 3)) / (2.0 * h);
}

} // namespace

std::vector<double> action_gradient(const MadelungFields& m, int axis) {
    const Grid& g = m.grid;
    const int n = g.points_per_axis;
    const double h = g.spacing();
    const bool per = g.boundary == Boundary::periodic;
    const double two_pi_hbar = 2.0 * std::numbers::pi * m.hbar;
    std::vector<double> out(m.action.size());

    if (g.dimension == 1) {
        if (axis != 0) throw std::invalid_argument("action_gradient: axis out of range");
        std::vector<double> grad(n);
        action_gradient_line(m.action, n, h, per, two_pi_hbar, grad);
        return grad;
    }

    if (axis != 0 && axis != 1) throw std::invalid_argument("action_gradient: axis out of range");
    std::vector<double> line(n), grad(n);
    for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k)
            line[k] = m.action[axis == 0 ? g.index2(k, l) : g.index2(l, k)];
        action_gradient_line(line, n, h, per, two_pi_hbar, grad);
        for (int k = 0; k < n; ++k)
            out[axis == 0 ? g.index2(k, l) : g.index2(l, k)] = grad[k];
    }
    return out;
}

ContinuityResidual continuity_residual(const MadelungFields& at_t,
                                       const MadelungFields& at_t_plus, double mass, double dt) {
    if (at_t.grid != at_t_plus.grid)
        throw std::invalid_argument("continuity_residual: grid mismatch");
    if (!(dt > 0.0))
        throw std::invalid_argument("continuity_residual: dt must be > 0");
    if (std::abs((at_t_plus.time - at_t.time) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
        throw std::invalid_argument("continuity_residual: slice times do not match dt");

    const Grid& g = at_t.grid;
    const std::size_t n = at_t.amplitude.size();

    auto flux_divergence = [&](const MadelungFields& m) {
        std::vector<double> div(n, 0.0);
        for (int axis = 0; axis < g.dimension; ++axis) {
            const auto grad_s = action_gradient(m, axis);
            std::vector<double> flux(n);
            for (std::size_t i = 0; i < n; ++i)
                flux[i] = m.amplitude[i] * m.amplitude[i] * grad_s[i] / mass;
            const auto dflux = stencil::deriv1(flux, g, axis);
            for (std::size_t i = 0; i < n; ++i) div[i] += dflux[i];
        }
        return div;
    };

    const auto div_a = flux_divergence(at_t);
    const auto div_b = flux_divergence(at_t_plus);

    ContinuityResidual out{g, std::vector<double>(n, 0.0), 0.0,
                           0.5 * (at_t.time + at_t_plus.time)};
    KahanSum l2;
    for (std::size_t i = 0; i < n; ++i) {
        if (at_t.node_mask[i] || at_t_plus.node_mask[i]) continue;
        const double ra2 = at_t.amplitude[i] * at_t.amplitude[i];
        const double rb2 = at_t_plus.amplitude[i] * at_t_plus.amplitude[i];
        const double r = (rb2 - ra2) / dt + 0.5 * (div_a[i] + div_b[i]);
        out.field[i] = r;
        l2.add(r * r);
    }
    out.l2 = std::sqrt(l2.value() * g.cell_volume());
    return out;
}

std::pair<double, double> exchange_defect(const Wavefunction& psi2) {
    if (psi2.grid.dimension != 2)
        throw std::invalid_argument("exchange_defect: needs a 2D (x1, x2) grid");
    const int n = psi2.grid.points_per_axis;
    KahanSum minus, plus, norm;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cd a = psi2.values[psi2.grid.index2(i, j)];
            const cd b = psi2.values[psi2.grid.index2(j, i)];
            minus.add(std::norm(a - b));
            plus.add(std::norm(a + b));
            norm.add(std::norm(a));
        }
    }
    const double scale = std::sqrt(norm.value());
    if (scale == 0.0)
        throw std::invalid_argument("exchange_defect: wavefunction is identically zero");
    return {std::sqrt(minus.value()) / scale, std::sqrt(plus.value()) / scale};
}

} // namespace qhj
