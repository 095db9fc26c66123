#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qhj/grid.hpp"

namespace qhj::stencil {

// Index helpers for stencil neighbors along one axis of length n.
//
// Periodic axes wrap. Dirichlet axes place walls at grid index 0 and at the
// virtual index n; complex wavefunctions are extended by odd reflection about
// both walls (psi(-j) = -psi(j), psi(n) = 0, psi(n+j) = -psi(n-j)), which is
// the extension consistent with psi vanishing at the walls.
template <typename T>
T sample_odd(const T* f, int n, int k) {
    if (k >= 0 && k < n) return f[k];
    if (k < 0) return -f[-k];
    if (k == n) return T{};
    return -f[2 * n - k];
}

template <typename T>
T sample_periodic(const T* f, int n, int k) {
    k %= n;
    if (k < 0) k += n;
    return f[k];
}

// 4th-order central first derivative along a 1D axis.
template <typename T>
std::vector<T> deriv1_c4(const std::vector<T>& f, const Grid& g) {
    const int n = g.points_per_axis;
    const double h = g.spacing();
    std::vector<T> out(f.size());
    const bool per = g.boundary == Boundary::periodic;
    auto at = [&](int k) { return per ? sample_periodic(f.data(), n, k) : sample_odd(f.data(), n, k); };
    for (int k = 0; k < n; ++k)
        out[k] = (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2)) / (12.0 * h);
    return out;
}

// 4th-order central second derivative along a 1D axis.
template <typename T>
std::vector<T> deriv2_c4(const std::vector<T>& f, const Grid& g) {
    const int n = g.points_per_axis;
    const double h = g.spacing();
    std::vector<T> out(f.size());
    const bool per = g.boundary == Boundary::periodic;
    auto at = [&](int k) { return per ? sample_periodic(f.data(), n, k) : sample_odd(f.data(), n, k); };
    for (int k = 0; k < n; ++k)
        out[k] = (-at(k - 2) + 16.0 * at(k - 1) - 30.0 * at(k) + 16.0 * at(k + 1) - at(k + 2)) /
                 (12.0 * h * h);
    return out;
}

// 2nd-order first derivative of a real field; centered in the interior,
// one-sided at Dirichlet edges (appropriate for amplitude/action fields that
// carry no sign constraint at the walls).
std::vector<double> deriv1(const std::vector<double>& f, const Grid& g, int axis);

// 2nd-order Laplacian: 3-point in 1D, 5-point in 2D; periodic wrap or
// one-sided second differences at Dirichlet edges.
std::vector<double> laplacian(const std::vector<double>& f, const Grid& g);

} // namespace qhj::stencil
