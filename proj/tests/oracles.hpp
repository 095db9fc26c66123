#pragma once

// Independent ground-truth formulas and brute-force helpers used by the test
// suites. Everything here is derived analytically or computed by elementary
// long-double loops; nothing routes through the library's reduction or
// spectral code paths.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// ---- Gaussian packet, |psi|^2 variance sigma0^2 ----------------------------

inline double gaussian_var_x(double sigma0) { return sigma0 * sigma0; }

inline double gaussian_var_p(double hbar, double sigma0) {
    return hbar * hbar / (4.0 * sigma0 * sigma0);
}

// Free spreading law: sigma_x(t) = sigma0 sqrt(1 + (hbar t / 2 m sigma0^2)^2).
inline double spread_sigma_x(double sigma0, double hbar, double mass, double t) {
    const double r = hbar * t / (2.0 * mass * sigma0 * sigma0);
    return sigma0 * std::sqrt(1.0 + r * r);
}

// Quantum potential of the t = 0 free Gaussian:
// U(x) = (hbar^2 / 2m) (1/(2 sigma0^2) - x^2/(4 sigma0^4)).
inline double free_gaussian_u(double hbar, double mass, double sigma0, double x) {
    const double s2 = sigma0 * sigma0;
    return hbar * hbar / (2.0 * mass) * (1.0 / (2.0 * s2) - x * x / (4.0 * s2 * s2));
}

// Harmonic ground state: U(x) = hbar omega / 2 - m omega^2 x^2 / 2,
// so V + U is the constant hbar omega / 2.
inline double harmonic_ground_u(double hbar, double mass, double omega, double x) {
    return 0.5 * hbar * omega - 0.5 * mass * omega * omega * x * x;
}

// ---- Dirichlet box ground state sqrt(2/L) sin(pi x / L) on [0, L] ----------

inline double box_sine_var_x(double box_length) {
    return box_length * box_length * (1.0 / 12.0 - 1.0 / (2.0 * pi * pi));
}

inline double box_sine_var_p(double hbar, double box_length) {
    const double k = pi / box_length;
    return hbar * hbar * k * k;
}

// Delta x * Delta p = hbar sqrt(pi^2 - 6) / (2 sqrt(3)) ~= 0.56786 hbar.
inline double box_sine_product(double hbar) {
    return hbar * std::sqrt(pi * pi - 6.0) / (2.0 * std::sqrt(3.0));
}

// ---- Harmonic eigenstates ---------------------------------------------------

inline double harmonic_sigma0(double hbar, double mass, double omega) {
    return std::sqrt(hbar / (2.0 * mass * omega));
}

inline double harmonic_energy(double hbar, double omega, int n) {
    return hbar * omega * (n + 0.5);
}

// n = 1 state: var_x = 3 hbar / (2 m w), var_p = 3 hbar m w / 2, product 1.5 hbar.
inline double hermite1_var_x(double hbar, double mass, double omega) {
    return 1.5 * hbar / (mass * omega);
}
inline double hermite1_var_p(double hbar, double mass, double omega) {
    return 1.5 * hbar * mass * omega;
}

// ---- Classical characteristics ----------------------------------------------

// Rays of S(x, 0) = -m x^2 / (2 t_f) under V = 0: x(t) = x0 (1 - t/t_f).
inline double focusing_ray(double x0, double t, double t_focus) {
    return x0 * (1.0 - t / t_focus);
}

// Harmonic rays from rest: x(t) = x0 cos(w t); first focus at t = pi/(2w).
inline double harmonic_focus_time(double omega) { return 0.5 * pi / omega; }

// Bohmian free-Gaussian path: x(t) = x0 * sigma_x(t) / sigma_x(0).
inline double bohm_free_gaussian_path(double x0, double sigma0, double hbar, double mass,
                                      double t) {
    return x0 * spread_sigma_x(sigma0, hbar, mass, t) / sigma0;
}

// ---- Plain long-double quadrature and difference helpers --------------------

inline double trapezoid_sum(const std::vector<double>& f, double h) {
    long double acc = 0.0L;
    for (double v : f) acc += static_cast<long double>(v);
    return static_cast<double>(acc * static_cast<long double>(h));
}

// Centered 2nd derivative of a scalar function, for one-off oracle checks.
inline double second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x - h) - 2.0 * f(x) + f(x + h)) / (h * h);
}

// ---- Binomial by multiplicative recurrence (no log-gamma) -------------------

inline std::vector<double> binom_probs_recurrence(int n, double p) {
    std::vector<double> probs(static_cast<std::size_t>(n) + 1, 0.0);
    const double q = 1.0 - p;
    long double term = 1.0L;
    for (int i = 0; i < n; ++i) term *= static_cast<long double>(q);
    probs[0] = static_cast<double>(term);
    for (int r = 1; r <= n; ++r) {
        term *= static_cast<long double>(n - r + 1) / static_cast<long double>(r) *
                static_cast<long double>(p) / static_cast<long double>(q);
        probs[static_cast<std::size_t>(r)] = static_cast<double>(term);
    }
    return probs;
}

// Direct-summation central moment of f = r/N from a probability table.
inline double direct_central_moment(const std::vector<double>& probs, int order) {
    const auto n = static_cast<long double>(probs.size() - 1);
    long double mean = 0.0L;
    for (std::size_t r = 0; r < probs.size(); ++r)
        mean += static_cast<long double>(r) / n * static_cast<long double>(probs[r]);
    long double acc = 0.0L;
    for (std::size_t r = 0; r < probs.size(); ++r) {
        long double dev = static_cast<long double>(r) / n - mean;
        long double pw = 1.0L;
        for (int k = 0; k < order; ++k) pw *= dev;
        acc += pw * static_cast<long double>(probs[r]);
    }
    return static_cast<double>(acc);
}

// C(10,3) 0.3^3 0.7^7, computed once by hand before the build.
inline constexpr double kBinom10_3_p03 = 0.266827932;

} // namespace oracle
