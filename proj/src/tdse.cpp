#include "qhj/tdse.hpp"

#include <cmath>
#include <stdexcept>

#include "qhj/fft.hpp"

namespace qhj {

Potential Potential::free_space() { return Potential{}; }

Potential Potential::harmonic_trap(double omega) {
    Potential v;
    v.kind = PotentialKind::harmonic;
    v.omega = omega;
    return v;
}

Potential Potential::soft_coulomb_well(double depth, double softening) {
    if (!(softening > 0.0))
        throw std::invalid_argument("soft_coulomb: softening must be > 0");
    Potential v;
    v.kind = PotentialKind::soft_coulomb;
    v.depth = depth;
    v.softening = softening;
    return v;
}

Potential Potential::square_barrier(double height, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("barrier: width must be > 0");
    Potential v;
    v.kind = PotentialKind::barrier;
    v.height = height;
    v.width = width;
    return v;
}

Potential Potential::focusing_lens(double strength, double switch_off_time) {
    Potential v;
    v.kind = PotentialKind::focusing_lens;
    v.strength = strength;
    v.switch_off = switch_off_time;
    return v;
}

Potential Potential::tabulated(std::vector<double> values) {
    Potential v;
    v.kind = PotentialKind::custom;
    v.table = std::move(values);
    for (double t : v.table)
        if (!std::isfinite(t))
            throw std::invalid_argument("tabulated potential: non-finite entry");
    return v;
}

double Potential::value(double x, double mass, double t) const {
    switch (kind) {
        case PotentialKind::free_space: return 0.0;
        case PotentialKind::harmonic: return 0.5 * mass * omega * omega * x * x;
        case PotentialKind::soft_coulomb:
            return -depth / std::sqrt(x * x + softening * softening);
        case PotentialKind::barrier: return std::abs(x) < 0.5 * width ? height : 0.0;
        case PotentialKind::focusing_lens:
            return t < switch_off ? 0.5 * strength * x * x : 0.0;
        case PotentialKind::custom: break;
    }
    throw std::invalid_argument("value: tabulated potentials are grid-bound");
}

double Potential::gradient(double x, double mass, double t) const {
    switch (kind) {
        case PotentialKind::free_space: return 0.0;
        case PotentialKind::harmonic: return mass * omega * omega * x;
        case PotentialKind::soft_coulomb: {
            const double r2 = x * x + softening * softening;
            return depth * x / (r2 * std::sqrt(r2));
        }
        case PotentialKind::focusing_lens: return t < switch_off ? strength * x : 0.0;
        case PotentialKind::barrier:
        case PotentialKind::custom: break;
    }
    throw std::invalid_argument("gradient: not defined for this potential kind");
}

std::vector<double> Potential::evaluate(const Grid& g, double mass, double t) const {
    if (kind == PotentialKind::custom) {
        if (table.size() != g.size())
            throw std::invalid_argument("tabulated potential: size mismatch with grid");
        return table;
    }
    std::vector<double> v(g.size());
    if (g.dimension == 1) {
        for (int k = 0; k < g.points_per_axis; ++k) v[k] = value(g.coord(k), mass, t);
        return v;
    }
    const int n = g.points_per_axis;
    if (kind == PotentialKind::soft_coulomb) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = g.coord(i) - g.coord(j);
                v[g.index2(i, j)] = -depth / std::sqrt(d * d + softening * softening);
            }
        return v;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            v[g.index2(i, j)] = value(g.coord(i), mass, t) + value(g.coord(j), mass, t);
    return v;
}

namespace {

void apply_phase(std::vector<cd>& values, const std::vector<double>& v_grid, double factor) {
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] *= std::polar(1.0, factor * v_grid[i]);
}

Wavefunction split_step(const Wavefunction& psi, const Potential& v, double dt) {
    require_spectral(psi.grid, "split_step_spectral");
    Wavefunction out = psi;
    const Grid& g = psi.grid;
    const double kin = -psi.hbar * dt / (2.0 * psi.mass);

    apply_phase(out.values, v.evaluate(g, psi.mass, psi.time), -0.5 * dt / psi.hbar);

    if (g.dimension == 1) {
        fft::forward(out.values);
        for (int j = 0; j < g.points_per_axis; ++j) {
            const double k = wavenumber(g, j);
            out.values[j] *= std::polar(1.0, kin * k * k);
        }
        fft::inverse(out.values);
    } else {
        const auto n = static_cast<std::size_t>(g.points_per_axis);
        fft::forward_2d(out.values, n);
        for (int i = 0; i < g.points_per_axis; ++i) {
            const double ki = wavenumber(g, i);
            for (int j = 0; j < g.points_per_axis; ++j) {
                const double kj = wavenumber(g, j);
                out.values[g.index2(i, j)] *= std::polar(1.0, kin * (ki * ki + kj * kj));
            }
        }
        fft::inverse_2d(out.values, n);
    }

    apply_phase(out.values, v.evaluate(g, psi.mass, psi.time + dt), -0.5 * dt / psi.hbar);
    out.time = psi.time + dt;
    return out;
}

// Thomas solve of a tridiagonal system with constant off-diagonal `off` and
// per-row diagonal diag[i]; rhs overwritten with the solution.
void solve_tridiag(const std::vector<cd>& diag, cd off, std::vector<cd>& rhs) {
    const std::size_t n = diag.size();
    std::vector<cd> cp(n);
    cp[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const cd denom = diag[i] - off * cp[i - 1];
        cp[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
}

// Cyclic variant via Sherman-Morrison for periodic boundaries.
void solve_cyclic_tridiag(const std::vector<cd>& diag, cd off, std::vector<cd>& rhs) {
    const std::size_t n = diag.size();
    const cd gamma = -diag[0];
    std::vector<cd> d2(diag);
    d2[0] -= gamma;
    d2[n - 1] -= off * off / gamma;
    std::vector<cd> u(n, cd(0.0));
    u[0] = gamma;
    u[n - 1] = off;
    solve_tridiag(d2, off, rhs);
    solve_tridiag(d2, off, u);
    const cd vy = rhs[0] + (off / gamma) * rhs[n - 1];
    const cd vq = u[0] + (off / gamma) * u[n - 1];
    const cd factor = vy / (1.0 + vq);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= factor * u[i];
}

// One Cayley (Crank-Nicolson) factor along a 1D line:
// (1 + i theta H) psi_new = (1 - i theta H) psi, H = -(hbar^2/2m) d2/dx2 + V.
// Dirichlet walls sit at index 0 and at the virtual index n.
void cayley_line(std::vector<cd>& line, const std::vector<double>& v_line, const Grid& axis,
                 double hbar, double mass, double theta) {
    const int n = axis.points_per_axis;
    const double h = axis.spacing();
    const double t_off = -hbar * hbar / (2.0 * mass * h * h); // off-diagonal of H
    const cd i_theta(0.0, theta);
    const cd off_plus = i_theta * t_off;

    const bool periodic = axis.boundary == Boundary::periodic;
    if (periodic) {
        std::vector<cd> diag(n), rhs(n);
        for (int k = 0; k < n; ++k)
            diag[k] = 1.0 + i_theta * (-2.0 * t_off + v_line[k]);
        for (int k = 0; k < n; ++k) {
            const cd hpsi = t_off * (line[(k - 1 + n) % n] + line[(k + 1) % n]) +
                            (-2.0 * t_off + v_line[k]) * line[k];
            rhs[k] = line[k] - i_theta * hpsi;
        }
        solve_cyclic_tridiag(diag, off_plus, rhs);
        line = std::move(rhs);
        return;
    }

    // Dirichlet: psi is pinned to zero on the wall point; interior unknowns 1..n-1.
    line[0] = cd(0.0);
    const int m = n - 1;
    std::vector<cd> diag(m), rhs(m);
    for (int k = 1; k < n; ++k) {
        const cd left = line[k - 1];
        const cd right = k + 1 < n ? line[k + 1] : cd(0.0);
        const cd hpsi = t_off * (left + right) + (-2.0 * t_off + v_line[k]) * line[k];
        rhs[k - 1] = line[k] - i_theta * hpsi;
        diag[k - 1] = 1.0 + i_theta * (-2.0 * t_off + v_line[k]);
    }
    solve_tridiag(diag, off_plus, rhs);
    for (int k = 1; k < n; ++k) line[k] = rhs[k - 1];
}

Wavefunction crank_nicolson(const Wavefunction& psi, const Potential& v, double dt) {
    Wavefunction out = psi;
    const Grid& g = psi.grid;
    const double theta = dt / (2.0 * psi.hbar);
    const auto v_grid = v.evaluate(g, psi.mass, psi.time + 0.5 * dt);

    if (g.dimension == 1) {
        cayley_line(out.values, v_grid, g, psi.hbar, psi.mass, theta);
        out.time = psi.time + dt;
        return out;
    }

    // 2D: Strang-split axis factors, each a unitary Cayley transform of
    // T_axis + V/2. Ordering: x half, y full, x half.
    const int n = g.points_per_axis;
    Grid axis = g;
    axis.dimension = 1;
    std::vector<cd> line(n);
    std::vector<double> v_line(n);

    auto sweep = [&](int sweep_axis, double th) {
        for (int l = 0; l < n; ++l) {
            for (int k = 0; k < n; ++k) {
                const std::size_t idx =
                    sweep_axis == 0 ? g.index2(k, l) : g.index2(l, k);
                line[k] = out.values[idx];
                v_line[k] = 0.5 * v_grid[idx];
            }
            cayley_line(line, v_line, axis, psi.hbar, psi.mass, th);
            for (int k = 0; k < n; ++k)
                out.values[sweep_axis == 0 ? g.index2(k, l) : g.index2(l, k)] = line[k];
        }
    };

    sweep(0, 0.5 * theta);
    sweep(1, theta);
    sweep(0, 0.5 * theta);
    out.time = psi.time + dt;
    return out;
}

} // namespace

std::optional<std::string> step_sanity_warning(const Wavefunction& psi, const Potential& v,
                                               const PropagatorConfig& cfg) {
    const auto v_grid = v.evaluate(psi.grid, psi.mass, psi.time);
    double vmax = 0.0;
    for (double x : v_grid) vmax = std::max(vmax, std::abs(x));
    const double ratio = cfg.dt * vmax / psi.hbar;
    if (ratio > 1.0)
        return "dt*max|V|/hbar = " + std::to_string(ratio) +
               " > 1; potential phase advances more than a radian per step";
    return std::nullopt;
}

Wavefunction step(const Wavefunction& psi, const Potential& v, const PropagatorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    Wavefunction out = cfg.scheme == Scheme::split_step_spectral
                           ? split_step(psi, v, cfg.dt)
                           : crank_nicolson(psi, v, cfg.dt);
    if (!all_finite(out))
        throw NumericalError("step: propagation produced non-finite values");
    return out;
}

std::vector<Wavefunction> propagate(const Wavefunction& psi0, const Potential& v,
                                    const PropagatorConfig& cfg, double t_final,
                                    const std::vector<Observer>& observers) {
    if (t_final < 0.0) throw std::invalid_argument("propagate: t_final must be >= 0");
    if (cfg.steps_per_output < 1)
        throw std::invalid_argument("propagate: steps_per_output must be >= 1");

    const auto n_steps = static_cast<long long>(std::llround(t_final / cfg.dt));
    std::vector<Wavefunction> snapshots;
    snapshots.reserve(static_cast<std::size_t>(n_steps / cfg.steps_per_output + 2));

    Wavefunction psi = psi0;
    snapshots.push_back(psi);
    for (const auto& obs : observers) obs(psi, 0);

    for (long long s = 1; s <= n_steps; ++s) {
        psi = step(psi, v, cfg);
        if (s % cfg.steps_per_output == 0 || s == n_steps) {
            snapshots.push_back(psi);
            for (const auto& obs : observers) obs(psi, static_cast<int>(s));
        }
    }
    return snapshots;
}

double mean_energy(const Wavefunction& psi, const Potential& v) {
    return total_energy(psi, v.evaluate(psi.grid, psi.mass, psi.time));
}

} // namespace qhj
