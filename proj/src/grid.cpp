#include "qhj/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "qhj/fft.hpp"

namespace qhj {

Grid make_grid(int dimension, int points_per_axis, double box_length, Boundary boundary) {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("make_grid: dimension must be 1 or 2");
    if (points_per_axis < 8)
        throw std::invalid_argument("make_grid: points_per_axis must be >= 8");
    if (!(box_length > 0.0))
        throw std::invalid_argument("make_grid: box_length must be > 0");
    return Grid{dimension, points_per_axis, box_length, boundary};
}

double wavenumber(const Grid& g, int j) {
    const int n = g.points_per_axis;
    const int shifted = j < n / 2 ? j : j - n;
    return 2.0 * std::numbers::pi * shifted / g.box_length;
}

std::vector<double> wavenumbers(const Grid& g) {
    std::vector<double> k(static_cast<std::size_t>(g.points_per_axis));
    for (int j = 0; j < g.points_per_axis; ++j) k[j] = wavenumber(g, j);
    return k;
}

std::vector<double> axis_coords(const Grid& g) {
    std::vector<double> x(static_cast<std::size_t>(g.points_per_axis));
    for (int k = 0; k < g.points_per_axis; ++k) x[k] = g.coord(k);
    return x;
}

void require_spectral(const Grid& g, const char* what) {
    if (g.boundary != Boundary::periodic)
        throw std::invalid_argument(std::string(what) + ": requires a periodic grid");
    if (!fft::is_power_of_two(static_cast<std::size_t>(g.points_per_axis)))
        throw std::invalid_argument(std::string(what) +
                                    ": requires power-of-two points_per_axis");
}

} // namespace qhj
