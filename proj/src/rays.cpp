#include "qhj/rays.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qhj/density.hpp"
#include "qhj/interp.hpp"
#include "qhj/stencil.hpp"

namespace qhj {

void FieldHistory::push(double t, const std::vector<double>& f) {
    if (!times.empty() && t <= times.back())
        throw std::invalid_argument("FieldHistory: times must be strictly increasing");
    times.push_back(t);
    fields.push_back(f);
    Grid g1 = grid;
    gradients.push_back(stencil::deriv1(f, g1, 0));
}

namespace {

std::size_t bracket_index(const std::vector<double>& times, double t) {
    if (times.empty()) throw std::invalid_argument("FieldHistory: empty history");
    if (t < times.front() - 1e-12 || t > times.back() + 1e-9)
        throw std::out_of_range("FieldHistory: time outside stored range");
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    auto hi = static_cast<std::size_t>(std::distance(times.begin(), it));
    if (hi == 0) return 0;
    if (hi >= times.size()) return times.size() - 1;
    return hi;
}

double blend(const std::vector<double>& times, double t,
             const std::vector<std::vector<double>>& slices, const Grid& g, double x) {
    const std::size_t hi = bracket_index(times, t);
    if (hi == 0 || times.size() == 1) return interp::cubic(slices[0], g, x);
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    const double a = interp::cubic(slices[lo], g, x);
    const double b = interp::cubic(slices[hi], g, x);
    return (1.0 - w) * a + w * b;
}

} // namespace

double FieldHistory::value_at(double x, double t) const {
    return blend(times, t, fields, grid, x);
}

double FieldHistory::gradient_at(double x, double t) const {
    return blend(times, t, gradients, grid, x);
}

FieldHistory quantum_potential_history(const std::vector<Wavefunction>& snapshots,
                                       double r_floor) {
    if (snapshots.empty())
        throw std::invalid_argument("quantum_potential_history: no snapshots");
    FieldHistory h;
    h.grid = snapshots.front().grid;
    for (const auto& psi : snapshots) {
        const auto m = decompose(psi, r_floor);
        const auto u = quantum_potential(m, psi.mass);
        h.push(psi.time, u.u);
    }
    return h;
}

namespace {

constexpr double kJacobianFloor = 1e-6;

std::vector<double> launch_positions(const MadelungFields& initial, int n_rays,
                                     LaunchMode mode) {
    const GridDensity density = amplitude_squared_density(initial.grid, initial.amplitude);
    std::vector<double> x(static_cast<std::size_t>(n_rays));
    if (mode == LaunchMode::quantile) {
        for (int i = 0; i < n_rays; ++i)
            x[i] = density.quantile((i + 0.5) / n_rays);
    } else {
        const double lo = density.quantile(0.005);
        const double hi = density.quantile(0.995);
        for (int i = 0; i < n_rays; ++i)
            x[i] = lo + (hi - lo) * static_cast<double>(i) / (n_rays - 1);
    }
    return x;
}

void check_launch_clear_of_nodes(const MadelungFields& initial, const std::vector<double>& x) {
    const Grid& g = initial.grid;
    for (double xi : x) {
        const double s = (xi - g.coord(0)) / g.spacing();
        const int k = std::clamp(static_cast<int>(std::lround(s)), 0, g.points_per_axis - 1);
        if (initial.node_mask[static_cast<std::size_t>(k)])
            throw std::invalid_argument("ray launch point falls on the node mask");
    }
}

RayTraceResult trace_impl(const MadelungFields& initial, const Potential& v, double mass,
                          double dt, double t_final, int n_rays, double lambda,
                          const FieldHistory* u_history, LaunchMode mode, int output_every) {
    if (initial.grid.dimension != 1)
        throw std::invalid_argument("ray tracing: 1D grids only");
    if (n_rays < 16) throw std::invalid_argument("ray tracing: n_rays must be >= 16");
    if (!(dt > 0.0)) throw std::invalid_argument("ray tracing: dt must be > 0");
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("ray tracing: lambda must be in [0, 1]");
    if (!v.analytic())
        throw std::invalid_argument("ray tracing: potential kind has no pointwise gradient");

    auto x = launch_positions(initial, n_rays, mode);
    check_launch_clear_of_nodes(initial, x);

    // p(0) = dS/dx at the launch points.
    const auto grad_s = action_gradient(initial, 0);
    std::vector<double> p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        p[i] = interp::cubic(grad_s, initial.grid, x[i]);

    std::vector<double> launch_gap(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        launch_gap[i] = x[i + 1] - x[i];
        if (!(launch_gap[i] > 0.0))
            throw std::invalid_argument("ray tracing: launch positions must be increasing");
    }

    const double t0 = initial.time;
    auto force = [&](double xi, double t) {
        double f = -v.gradient(xi, mass, t);
        if (lambda != 0.0) f -= lambda * u_history->gradient_at(xi, t);
        return f;
    };

    RayTraceResult result;
    auto jacobian_of = [&](const std::vector<double>& pos) {
        std::vector<double> j(pos.size() - 1);
        for (std::size_t i = 0; i + 1 < pos.size(); ++i)
            j[i] = (pos[i + 1] - pos[i]) / launch_gap[i];
        return j;
    };
    auto record = [&](double t) {
        result.history.push_back(RayBundle{x, p, jacobian_of(x), t});
    };
    auto scan_caustic = [&](double t) {
        if (result.caustic.formed) return;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double j = (x[i + 1] - x[i]) / launch_gap[i];
            if (j < kJacobianFloor) {
                result.caustic.formed = true;
                result.caustic.first_time = t;
                result.caustic.location = 0.5 * (x[i] + x[i + 1]);
                result.caustic.rays_involved = {static_cast<int>(i), static_cast<int>(i + 1)};
                return;
            }
        }
    };

    record(t0);
    scan_caustic(t0);

    const auto n_steps = static_cast<long long>(std::llround((t_final - t0) / dt));
    std::vector<double> acc(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] = force(x[i], t0) / mass;

    for (long long s = 1; s <= n_steps; ++s) {
        const double t_now = t0 + s * dt;
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += p[i] / mass * dt + 0.5 * acc[i] * dt * dt;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double a_new = force(x[i], t_now) / mass;
            p[i] += 0.5 * mass * (acc[i] + a_new) * dt;
            acc[i] = a_new;
        }
        scan_caustic(t_now);
        if (s % output_every == 0 || s == n_steps) record(t_now);
    }
    return result;
}

} // namespace

RayTraceResult trace_classical(const MadelungFields& initial, const Potential& v, double mass,
                               double dt, double t_final, int n_rays, LaunchMode mode,
                               int output_every) {
    return trace_impl(initial, v, mass, dt, t_final, n_rays, 0.0, nullptr, mode, output_every);
}

RayTraceResult trace_scaled(const MadelungFields& initial, const Potential& v, double mass,
                            double dt, double t_final, int n_rays, double lambda,
                            const FieldHistory& u_history, LaunchMode mode, int output_every) {
    return trace_impl(initial, v, mass, dt, t_final, n_rays, lambda, &u_history, mode,
                      output_every);
}

double ray_energy(double position, double momentum, const Potential& v, double mass, double t) {
    return momentum * momentum / (2.0 * mass) + v.value(position, mass, t);
}

} // namespace qhj
