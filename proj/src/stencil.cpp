#include "qhj/stencil.hpp"

#include <stdexcept>

namespace qhj::stencil {

namespace {

// One-sided 2nd-order first derivative weights at an edge.
double edge_deriv1(const double* f, int n, int k, double h, bool left) {
    (void)n;
    if (left) return (-3.0 * f[k] + 4.0 * f[k + 1] - f[k + 2]) / (2.0 * h);
    return (3.0 * f[k] - 4.0 * f[k - 1] + f[k - 2]) / (2.0 * h);
}

// One-sided 2nd-order second derivative at an edge.
double edge_deriv2(const double* f, int k, double h, bool left) {
    if (left)
        return (2.0 * f[k] - 5.0 * f[k + 1] + 4.0 * f[k + 2] - f[k + 3]) / (h * h);
    return (2.0 * f[k] - 5.0 * f[k - 1] + 4.0 * f[k - 2] - f[k - 3]) / (h * h);
}

} // namespace

std::vector<double> deriv1(const std::vector<double>& f, const Grid& g, int axis) {
    const int n = g.points_per_axis;
    const double h = g.spacing();
    const bool per = g.boundary == Boundary::periodic;
    std::vector<double> out(f.size());

    if (g.dimension == 1) {
        if (axis != 0) throw std::invalid_argument("deriv1: axis out of range");
        for (int k = 0; k < n; ++k) {
            if (per) {
                const double fm = f[(k - 1 + n) % n], fp = f[(k + 1) % n];
                out[k] = (fp - fm) / (2.0 * h);
            } else if (k == 0) {
                out[k] = edge_deriv1(f.data(), n, k, h, true);
            } else if (k == n - 1) {
                out[k] = edge_deriv1(f.data(), n, k, h, false);
            } else {
                out[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
            }
        }
        return out;
    }

    if (axis != 0 && axis != 1) throw std::invalid_argument("deriv1: axis out of range");
    std::vector<double> line(n), dline(n);
    const int n_lines = n;
    for (int l = 0; l < n_lines; ++l) {
        for (int k = 0; k < n; ++k)
            line[k] = axis == 0 ? f[g.index2(k, l)] : f[g.index2(l, k)];
        for (int k = 0; k < n; ++k) {
            if (per) {
                dline[k] = (line[(k + 1) % n] - line[(k - 1 + n) % n]) / (2.0 * h);
            } else if (k == 0) {
                dline[k] = edge_deriv1(line.data(), n, k, h, true);
            } else if (k == n - 1) {
                dline[k] = edge_deriv1(line.data(), n, k, h, false);
            } else {
                dline[k] = (line[k + 1] - line[k - 1]) / (2.0 * h);
            }
        }
        for (int k = 0; k < n; ++k)
            out[axis == 0 ? g.index2(k, l) : g.index2(l, k)] = dline[k];
    }
    return out;
}

namespace {

void laplacian_axis(const std::vector<double>& f, const Grid& g, int axis,
                    std::vector<double>& out) {
    const int n = g.points_per_axis;
    const double h = g.spacing();
    const bool per = g.boundary == Boundary::periodic;
    std::vector<double> line(n);
    const int n_lines = g.dimension == 1 ? 1 : n;
    for (int l = 0; l < n_lines; ++l) {
        for (int k = 0; k < n; ++k) {
            std::size_t idx = g.dimension == 1 ? static_cast<std::size_t>(k)
                              : axis == 0      ? g.index2(k, l)
                                               : g.index2(l, k);
            line[k] = f[idx];
        }
        for (int k = 0; k < n; ++k) {
            double d2;
            if (per) {
                d2 = (line[(k - 1 + n) % n] - 2.0 * line[k] + line[(k + 1) % n]) / (h * h);
            } else if (k == 0) {
                d2 = edge_deriv2(line.data(), k, h, true);
            } else if (k == n - 1) {
                d2 = edge_deriv2(line.data(), k, h, false);
            } else {
                d2 = (line[k - 1] - 2.0 * line[k] + line[k + 1]) / (h * h);
            }
            std::size_t idx = g.dimension == 1 ? static_cast<std::size_t>(k)
                              : axis == 0      ? g.index2(k, l)
                                               : g.index2(l, k);
            out[idx] += d2;
        }
    }
}

} // namespace

std::vector<double> laplacian(const std::vector<double>& f, const Grid& g) {
    std::vector<double> out(f.size(), 0.0);
    laplacian_axis(f, g, 0, out);
    if (g.dimension == 2) laplacian_axis(f, g, 1, out);
    return out;
}

} // namespace qhj::stencil
