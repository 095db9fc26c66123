#pragma once

#include <vector>

#include "qhj/madelung.hpp"
#include "qhj/wavefunction.hpp"

namespace qhj {

// Everything in this module is measurement-free: inputs are fields, outputs
// are quadratures of them.

// <x> moved to 0 by translation (spectral shift on periodic grids) and <p>
// removed by a phase ramp. Dirichlet states must already be spatially
// centered; only the ramp is applied there.
Wavefunction centered(const Wavefunction& psi);

// g(alpha) = integral |alpha x psi + dpsi/dx|^2 dx on the centered state;
// equals alpha^2 var_x - alpha + var_p/hbar^2 up to quadrature error.
double weyl_functional(const Wavefunction& psi, double alpha);

struct WeylMinimum {
    double alpha_star = 0.0; // 1/(2 var_x), the closed-form minimizer
    double g_min = 0.0;
};
// Evaluates g at the closed-form minimizer; g_min >= -1e-8 is enforced, which
// is the uncertainty bound var_x var_p >= (hbar/2)^2 in disguise.
WeylMinimum weyl_minimize(const Wavefunction& psi);

// var_p rewritten in amplitude/action variables:
//   drift     = integral R^2 (dS/dx)^2 dx
//   curvature = -hbar^2 integral R d2R/dx2 dx
// curvature_by_parts (+hbar^2 integral (dR/dx)^2 dx) recomputes the same
// quantity along the integration-by-parts route as an internal check.
struct MomentumSplit {
    double drift = 0.0;
    double curvature = 0.0;
    double curvature_by_parts = 0.0;
    double total = 0.0; // drift + curvature
    double excluded_measure = 0.0;
    double parts_gap = 0.0; // |curvature - curvature_by_parts| relative
};
MomentumSplit momentum_variance_split(const MadelungFields& m);

struct UncertaintyReport {
    double dx2 = 0.0;
    double dp2_spectral = 0.0; // the oracle route
    double dp2_hj = 0.0;       // drift + curvature route
    double hj_drift_term = 0.0;
    double hj_quantum_term = 0.0;
    double product = 0.0; // sqrt(dx2 * dp2_spectral)
    double g_min_alpha = 0.0;
    double excluded_measure = 0.0;
    double parts_gap = 0.0;
};
UncertaintyReport uncertainty_report(const Wavefunction& psi, double r_floor = 1e-6);

struct WidthScalingRow {
    double sigma = 0.0;
    double dx2 = 0.0;
    double dp2 = 0.0;
    double curvature_term = 0.0;
    double product = 0.0;
};
// Gaussians of shrinking width on a fixed grid; exhibits dx2 -> 0 with the
// curvature term growing as hbar^2/(4 sigma^2) while the product stays
// pinned at hbar/2. Widths below 4*spacing are rejected.
std::vector<WidthScalingRow> width_scaling_study(const Grid& g, double hbar, double mass,
                                                 const std::vector<double>& widths);

// Least-squares slope of log y against log x.
double fit_power_law_exponent(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qhj
