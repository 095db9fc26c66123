#include "qhj/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qhj/interp.hpp"
#include "qhj/rng.hpp"

namespace qhj {

double TrajectoryEnsemble::flagged_fraction() const {
    if (count == 0) return 0.0;
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i)
        if (flagged[i] || aborted[i]) ++bad;
    return static_cast<double>(bad) / count;
}

std::vector<double> sample_initial(const MadelungFields& m, int count, Sampling sampling,
                                   std::uint64_t seed) {
    if (count < 2) throw std::invalid_argument("sample_initial: count must be >= 2");
    const GridDensity density = amplitude_squared_density(m.grid, m.amplitude);
    std::vector<double> x(static_cast<std::size_t>(count));
    if (sampling == Sampling::quantile) {
        for (int i = 0; i < count; ++i)
            x[i] = density.quantile((i + 0.5) / count);
    } else {
        for (int i = 0; i < count; ++i)
            x[i] = density.quantile(rng::uniform01(seed, static_cast<std::uint64_t>(i)));
        std::sort(x.begin(), x.end());
    }
    return x;
}

namespace {

struct SliceData {
    double time;
    std::vector<double> velocity;      // dS/dx / mass
    std::vector<std::uint8_t> danger;  // node mask dilated by node_radius_cells
};

std::vector<SliceData> prepare(const std::vector<MadelungFields>& history, double mass,
                               int radius) {
    std::vector<SliceData> out;
    out.reserve(history.size());
    const Grid& g = history.front().grid;
    const int n = g.points_per_axis;
    for (const auto& m : history) {
        if (m.grid != g) throw std::invalid_argument("advect: slice grid mismatch");
        SliceData s;
        s.time = m.time;
        s.velocity = action_gradient(m, 0);
        for (auto& v : s.velocity) v /= mass;
        s.danger.assign(static_cast<std::size_t>(n), 0);
        for (int k = 0; k < n; ++k) {
            if (!m.node_mask[k]) continue;
            for (int d = -radius; d <= radius; ++d) {
                int j = k + d;
                if (g.boundary == Boundary::periodic)
                    j = (j % n + n) % n;
                else if (j < 0 || j >= n)
                    continue;
                s.danger[static_cast<std::size_t>(j)] = 1;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

TrajectoryEnsemble advect(const std::vector<double>& initial,
                          const std::vector<MadelungFields>& history, double mass, double dt,
                          Sampling sampling, std::uint64_t seed, int output_every,
                          int node_radius_cells) {
    if (history.size() < 2) throw std::invalid_argument("advect: history needs >= 2 slices");
    if (!(dt > 0.0)) throw std::invalid_argument("advect: dt must be > 0");
    if (output_every < 1) throw std::invalid_argument("advect: output_every must be >= 1");

    const Grid& g = history.front().grid;
    if (g.dimension != 1) throw std::invalid_argument("advect: 1D grids only");

    const auto slices = prepare(history, mass, node_radius_cells);
    for (std::size_t s = 1; s < slices.size(); ++s) {
        const double gap = slices[s].time - slices[s - 1].time;
        if (!(gap > 0.0)) throw std::invalid_argument("advect: history times must increase");
        if (gap > dt * (1.0 + 1e-9))
            throw std::invalid_argument("advect: history gap exceeds the advection step");
    }

    const double t0 = slices.front().time;
    const double t_end = slices.back().time;
    const auto n_steps = static_cast<long long>(std::llround((t_end - t0) / dt));

    auto bracket = [&](double t) {
        auto it = std::upper_bound(slices.begin(), slices.end(), t,
                                   [](double tv, const SliceData& s) { return tv < s.time; });
        std::size_t hi = static_cast<std::size_t>(std::distance(slices.begin(), it));
        if (hi == 0) hi = 1;
        if (hi >= slices.size()) hi = slices.size() - 1;
        return hi;
    };
    auto velocity = [&](double x, double t) {
        const std::size_t hi = bracket(t);
        const std::size_t lo = hi - 1;
        const double w = (t - slices[lo].time) / (slices[hi].time - slices[lo].time);
        const double a = interp::cubic(slices[lo].velocity, g, x);
        const double b = interp::cubic(slices[hi].velocity, g, x);
        return (1.0 - w) * a + w * b;
    };
    auto near_node = [&](double x, double t) {
        const std::size_t hi = bracket(t);
        double xx = x;
        if (g.boundary == Boundary::periodic) xx = interp::wrap_into_box(x, g.box_length);
        const double s = (xx - g.coord(0)) / g.spacing();
        const int k = std::clamp(static_cast<int>(std::lround(s)), 0, g.points_per_axis - 1);
        return slices[hi - 1].danger[k] || slices[hi].danger[k];
    };
    auto in_box = [&](double x) {
        return x >= -0.5 * g.box_length && x <= 0.5 * g.box_length;
    };

    TrajectoryEnsemble e;
    e.count = static_cast<int>(initial.size());
    e.sampling = sampling;
    e.seed = seed;
    e.flagged.assign(initial.size(), 0);
    e.aborted.assign(initial.size(), 0);

    std::vector<double> x = initial;
    e.times.push_back(t0);
    e.paths.push_back(x);

    for (long long s = 1; s <= n_steps; ++s) {
        const double t = t0 + (s - 1) * dt;
        const double t_next = std::min(t + dt, t_end);
        const double step_dt = t_next - t;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (e.aborted[i]) continue;
            if (g.boundary == Boundary::dirichlet && !in_box(x[i])) {
                e.aborted[i] = 1;
                continue;
            }
            if (near_node(x[i], t)) {
                e.flagged[i] = 1; // frozen for this step
                continue;
            }
            try {
                const double k1 = velocity(x[i], t);
                const double k2 = velocity(x[i] + 0.5 * step_dt * k1, t + 0.5 * step_dt);
                const double k3 = velocity(x[i] + 0.5 * step_dt * k2, t + 0.5 * step_dt);
                const double k4 = velocity(x[i] + step_dt * k3, t_next);
                x[i] += step_dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            } catch (const std::out_of_range&) {
                e.aborted[i] = 1; // left a Dirichlet box mid-step
            }
        }
        if (s % output_every == 0 || s == n_steps) {
            e.times.push_back(t_next);
            e.paths.push_back(x);
        }
    }
    return e;
}

double equivariance_check(const TrajectoryEnsemble& e, const MadelungFields& m) {
    if (e.flagged_fraction() > 0.01)
        throw NumericalError("equivariance_check: more than 1% of paths flagged or aborted");
    const GridDensity density = amplitude_squared_density(m.grid, m.amplitude);
    return ks_distance(e.final_positions(), density);
}

bool sort_order_invariant(const TrajectoryEnsemble& e) {
    for (const auto& row : e.paths)
        if (!std::is_sorted(row.begin(), row.end())) return false;
    return true;
}

} // namespace qhj
