#pragma once

#include <vector>

#include "qhj/grid.hpp"

namespace qhj {

// Piecewise-linear CDF of a non-negative field sampled at cell centers; cell k
// covers [coord(k) - h/2, coord(k) + h/2). Used for quantile draws and
// Kolmogorov-Smirnov comparisons against |psi|^2.
class GridDensity {
  public:
    GridDensity(const Grid& g, const std::vector<double>& weights);

    double cdf(double x) const;
    double quantile(double u) const;
    // True when one cell carries essentially all mass (no invertible CDF).
    bool degenerate() const { return degenerate_; }
    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
    std::vector<double> cum_; // size n+1, normalized, cum_[0] = 0, cum_[n] = 1
    bool degenerate_ = false;
};

GridDensity amplitude_squared_density(const Grid& g, const std::vector<double>& amplitude);

// KS distance between a sample of positions and the density's CDF. Positions
// are wrapped into the box on periodic grids.
double ks_distance(std::vector<double> positions, const GridDensity& density);

} // namespace qhj
