#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qhj/wavefunction.hpp"

namespace qhj {

// Polar form psi = R exp(i S / hbar): non-negative amplitude R and unwrapped
// action S. Points with R below the relative floor are node-masked; S there
// is a nearest-neighbor extension, not data.
struct MadelungFields {
    Grid grid;
    std::vector<double> amplitude; // R >= 0
    std::vector<double> action;    // S, unwrapped
    std::vector<std::uint8_t> node_mask;
    double time = 0.0;
    double hbar = 1.0;
    double mass = 1.0;

    std::size_t node_count() const;
};

// r_floor is relative to max |psi| and must lie in (0, 1e-3].
MadelungFields decompose(const Wavefunction& psi, double r_floor = 1e-6);
Wavefunction recompose(const MadelungFields& m);

struct QuantumPotentialField {
    Grid grid;
    std::vector<double> u; // energy units
    bool regularized = false;
};

// U = -(hbar^2 / 2 mass) lap(R)/R; node points take the value of the nearest
// unmasked point (regularized flag set).
QuantumPotentialField quantum_potential(const MadelungFields& m, double mass);

// dS/dx along one axis, 2nd-order centered.
std::vector<double> action_gradient(const MadelungFields& m, int axis);

struct ContinuityResidual {
    Grid grid;
    std::vector<double> field; // zeroed at node-masked points
    double l2 = 0.0;           // over unmasked points
    double midpoint_time = 0.0;
};

// d(R^2)/dt (centered between the two slices) + div(R^2 grad(S)/mass)
// (centered in space, averaged over the two slices).
ContinuityResidual continuity_residual(const MadelungFields& at_t,
                                       const MadelungFields& at_t_plus, double mass, double dt);

// Relative deviation of a two-particle state from exchange symmetry:
// first = ||psi(x1,x2) - psi(x2,x1)|| / ||psi||  (zero for bosonic symmetry)
// second = ||psi(x1,x2) + psi(x2,x1)|| / ||psi|| (zero for fermionic antisymmetry)
std::pair<double, double> exchange_defect(const Wavefunction& psi2);

} // namespace qhj
