#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhj/wavefunction.hpp"

namespace qhj {

enum class PotentialKind { free_space, harmonic, soft_coulomb, barrier, focusing_lens, custom };

// External potential library. In 2D the analytic kinds act per axis
// (V(x1) + V(x2), exchange-symmetric by construction), except soft_coulomb
// which becomes the interparticle interaction -depth/sqrt((x1-x2)^2 + s^2).
struct Potential {
    PotentialKind kind = PotentialKind::free_space;
    double omega = 0.0;                      // harmonic
    double depth = 0.0, softening = 1.0;     // soft_coulomb
    double height = 0.0, width = 1.0;        // barrier
    double strength = 0.0, switch_off = 0.0; // focusing_lens: V = strength x^2/2 for t < switch_off
    std::vector<double> table;               // custom, one value per grid point

    static Potential free_space();
    static Potential harmonic_trap(double omega);
    static Potential soft_coulomb_well(double depth, double softening);
    static Potential square_barrier(double height, double width);
    static Potential focusing_lens(double strength, double switch_off_time);
    static Potential tabulated(std::vector<double> values);

    double value(double x, double mass, double t) const;    // analytic kinds, 1D
    double gradient(double x, double mass, double t) const; // analytic kinds, 1D
    std::vector<double> evaluate(const Grid& g, double mass, double t) const;
    bool time_dependent() const { return kind == PotentialKind::focusing_lens; }
    bool analytic() const {
        return kind != PotentialKind::custom && kind != PotentialKind::barrier;
    }
};

enum class Scheme { split_step_spectral, crank_nicolson };

struct PropagatorConfig {
    Scheme scheme = Scheme::split_step_spectral;
    double dt = 1e-3;
    int steps_per_output = 1;
};

// Advance one step of i hbar dpsi/dt = -(hbar^2/2m) lap psi + V psi.
// split_step_spectral: Strang ordering exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h),
// periodic power-of-two grids. crank_nicolson: Cayley transform of the 3-point
// stencil Hamiltonian (1D); in 2D the axis factors are split in Strang order so
// every factor stays exactly unitary.
Wavefunction step(const Wavefunction& psi, const Potential& v, const PropagatorConfig& cfg);

// Returns a diagnostic when dt * max|V| / hbar > 1 (accuracy, not stability).
std::optional<std::string> step_sanity_warning(const Wavefunction& psi, const Potential& v,
                                               const PropagatorConfig& cfg);

using Observer = std::function<void(const Wavefunction&, int step_index)>;

// Repeated step() with snapshots (and observer calls) every steps_per_output
// steps, always including the initial and final states. Deterministic.
std::vector<Wavefunction> propagate(const Wavefunction& psi0, const Potential& v,
                                    const PropagatorConfig& cfg, double t_final,
                                    const std::vector<Observer>& observers = {});

double mean_energy(const Wavefunction& psi, const Potential& v);

} // namespace qhj
