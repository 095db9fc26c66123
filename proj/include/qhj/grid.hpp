#pragma once

#include <cstddef>
#include <vector>

namespace qhj {

enum class Boundary { periodic, dirichlet };

// Uniform lattice on [-L/2, L/2), the same extent along every axis.
// Point k of an axis sits at -L/2 + k*spacing; for Dirichlet boundaries the
// walls are at x_0 = -L/2 and at the virtual point x_n = +L/2.
struct Grid {
    int dimension = 1; // 1 or 2
    int points_per_axis = 0;
    double box_length = 0.0;
    Boundary boundary = Boundary::periodic;

    double spacing() const { return box_length / points_per_axis; }
    std::size_t size() const {
        auto n = static_cast<std::size_t>(points_per_axis);
        return dimension == 1 ? n : n * n;
    }
    // Quadrature weight of one grid cell, spacing^dimension.
    double cell_volume() const {
        const double h = spacing();
        return dimension == 1 ? h : h * h;
    }
    double coord(int k) const { return -0.5 * box_length + k * spacing(); }
    std::size_t index2(int i, int j) const {
        return static_cast<std::size_t>(i) * points_per_axis + j;
    }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(int dimension, int points_per_axis, double box_length, Boundary boundary);

// DFT wavenumber of bin j on a periodic axis: 2*pi*j~/L with j~ in [-n/2, n/2).
double wavenumber(const Grid& g, int j);
std::vector<double> wavenumbers(const Grid& g);

// Coordinates of all axis points.
std::vector<double> axis_coords(const Grid& g);

// Throws unless the grid supports spectral (FFT-based) operations.
void require_spectral(const Grid& g, const char* what);

} // namespace qhj
