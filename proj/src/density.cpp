#include "qhj/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qhj/interp.hpp"
#include "qhj/wavefunction.hpp"

namespace qhj {

GridDensity::GridDensity(const Grid& g, const std::vector<double>& weights) : grid_(g) {
    if (g.dimension != 1)
        throw std::invalid_argument("GridDensity: 1D grids only");
    if (weights.size() != g.size())
        throw std::invalid_argument("GridDensity: weight size mismatch");
    const auto n = static_cast<std::size_t>(g.points_per_axis);
    cum_.assign(n + 1, 0.0);
    KahanSum acc;
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = weights[k];
        if (w < 0.0 || !std::isfinite(w))
            throw std::invalid_argument("GridDensity: weights must be finite and >= 0");
        peak = std::max(peak, w);
        acc.add(w);
        cum_[k + 1] = acc.value();
    }
    const double total = cum_[n];
    if (!(total > 0.0))
        throw std::invalid_argument("GridDensity: all weights are zero");
    for (auto& c : cum_) c /= total;
    degenerate_ = peak / total > 1.0 - 1e-12;
}

double GridDensity::cdf(double x) const {
    const double h = grid_.spacing();
    const double left = grid_.coord(0) - 0.5 * h;
    if (grid_.boundary == Boundary::periodic) x = interp::wrap_into_box(x, grid_.box_length);
    const double s = (x - left) / h;
    if (s <= 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(grid_.points_per_axis);
    if (s >= static_cast<double>(n)) return 1.0;
    const auto k = static_cast<std::size_t>(s);
    const double t = s - static_cast<double>(k);
    return cum_[k] + t * (cum_[k + 1] - cum_[k]);
}

double GridDensity::quantile(double u) const {
    if (u < 0.0 || u > 1.0)
        throw std::invalid_argument("quantile: u must be in [0, 1]");
    if (degenerate_)
        throw std::invalid_argument("quantile: degenerate density (all mass in one cell)");
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    auto k = static_cast<std::size_t>(std::distance(cum_.begin(), it));
    if (k > 0) --k; // cell k satisfies cum_[k] <= u <= cum_[k+1]
    const double mass = cum_[k + 1] - cum_[k];
    const double t = mass > 0.0 ? (u - cum_[k]) / mass : 0.0;
    const double h = grid_.spacing();
    const double left = grid_.coord(0) - 0.5 * h;
    return left + (static_cast<double>(k) + std::min(std::max(t, 0.0), 1.0)) * h;
}

GridDensity amplitude_squared_density(const Grid& g, const std::vector<double>& amplitude) {
    std::vector<double> w(amplitude.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = amplitude[i] * amplitude[i];
    return GridDensity(g, w);
}

double ks_distance(std::vector<double> positions, const GridDensity& density) {
    if (positions.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    if (density.grid().boundary == Boundary::periodic)
        for (auto& x : positions)
            x = interp::wrap_into_box(x, density.grid().box_length);
    std::sort(positions.begin(), positions.end());
    const auto n = static_cast<double>(positions.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double f = density.cdf(positions[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return ks;
}

} // namespace qhj
