#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qhj/grid.hpp"

namespace qhj::interp {

// Wrap x into the periodic box [-L/2, L/2).
inline double wrap_into_box(double x, double box_length) {
    const double half = 0.5 * box_length;
    double y = std::fmod(x + half, box_length);
    if (y < 0.0) y += box_length;
    return y - half;
}

// Catmull-Rom cubic on a uniform 1D axis. Periodic axes wrap; Dirichlet axes
// clamp the stencil at the edges and reject points outside the box.
inline double cubic(const std::vector<double>& f, const Grid& g, double x) {
    const int n = g.points_per_axis;
    const double h = g.spacing();
    const bool per = g.boundary == Boundary::periodic;

    if (per) {
        x = wrap_into_box(x, g.box_length);
    } else if (x < g.coord(0) || x > g.coord(n - 1)) {
        throw std::out_of_range("cubic interpolation: point outside grid");
    }

    double s = (x - g.coord(0)) / h;
    int k = static_cast<int>(std::floor(s));
    double t = s - k;
    if (!per && k >= n - 1) {
        k = n - 2;
        t = s - k;
    }

    auto at = [&](int j) {
        if (per) return f[((j % n) + n) % n];
        return f[std::clamp(j, 0, n - 1)];
    };
    const double f0 = at(k - 1), f1 = at(k), f2 = at(k + 1), f3 = at(k + 2);
    return 0.5 * (2.0 * f1 + (-f0 + f2) * t + (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) * t * t +
                  (-f0 + 3.0 * f1 - 3.0 * f2 + f3) * t * t * t);
}

} // namespace qhj::interp
