#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qhj/accumulate.hpp"
#include "qhj/grid.hpp"

namespace qhj {

using cd = std::complex<double>;

// Thrown when a propagation or reduction produces non-finite values.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complex field on a Grid, row-major for 2D, units length^(-dim/2).
struct Wavefunction {
    Grid grid;
    std::vector<cd> values;
    double time = 0.0;
    double hbar = 1.0;
    double mass = 1.0;
};

double norm_sq(const Wavefunction& psi);
Wavefunction& normalize(Wavefunction& psi);
bool all_finite(const Wavefunction& psi);

// sum conj(a)*b * spacing^dim; both fields must share a grid.
cd inner_product(const Wavefunction& a, const Wavefunction& b);

struct Observables {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double norm_sq = 0.0;
};

// Position moments by quadrature against |psi|^2; momentum moments spectrally
// on periodic grids (|psi_hat(k)|^2 with p = hbar k) and by 4th-order central
// differences on Dirichlet grids. 1D only; input must be normalized to 1e-6.
Observables observables(const Wavefunction& psi);

// Forward DFT of values (unscaled), 1D periodic grids.
std::vector<cd> spectrum(const Wavefunction& psi);

// <T> = <p^2>/2m summed over axes; spectral on periodic grids, stencil-based
// on Dirichlet grids. Works in 1D and 2D.
double kinetic_energy(const Wavefunction& psi);
double potential_energy(const Wavefunction& psi, const std::vector<double>& v_grid);
double total_energy(const Wavefunction& psi, const std::vector<double>& v_grid);

} // namespace qhj
