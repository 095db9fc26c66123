#pragma once

#include <cstdint>
#include <vector>

#include "qhj/density.hpp"
#include "qhj/madelung.hpp"

namespace qhj {

enum class Sampling { quantile, random };

// Time series of an ordered family of 1D paths following v = dS/dx / m.
// Positions are kept unwrapped (no periodic folding) so the 1D ordering is
// directly comparable across time; they are folded into the box only for
// density comparisons.
struct TrajectoryEnsemble {
    int count = 0;
    Sampling sampling = Sampling::quantile;
    std::uint64_t seed = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> paths; // paths[t_index][trajectory]
    std::vector<std::uint8_t> flagged;      // froze near a node at least once
    std::vector<std::uint8_t> aborted;      // left a Dirichlet box

    const std::vector<double>& final_positions() const { return paths.back(); }
    double flagged_fraction() const;
};

// Quantile sampling inverts the discrete CDF of R^2 at (i+0.5)/count
// (deterministic); random sampling inverts at seeded uniform draws. Results
// are sorted ascending.
std::vector<double> sample_initial(const MadelungFields& m, int count, Sampling sampling,
                                   std::uint64_t seed);

// RK4 advection through the Madelung slice history (cubic in space, linear in
// time). Paths entering within node_radius_cells of a node mask freeze for
// that step and are flagged.
TrajectoryEnsemble advect(const std::vector<double>& initial,
                          const std::vector<MadelungFields>& history, double mass, double dt,
                          Sampling sampling = Sampling::quantile, std::uint64_t seed = 0,
                          int output_every = 1, int node_radius_cells = 2);

// KS distance between the ensemble's final positions and R^2 of the fields.
// Throws when more than 1% of paths were flagged or aborted.
double equivariance_check(const TrajectoryEnsemble& e, const MadelungFields& m);

// True when every recorded time slice preserves the initial ascending order.
bool sort_order_invariant(const TrajectoryEnsemble& e);

} // namespace qhj
