#pragma once

#include <utility>
#include <vector>

#include "qhj/madelung.hpp"
#include "qhj/tdse.hpp"

namespace qhj {

// Snapshot of the characteristic family: ordered 1D positions, matched
// momenta, and the neighbor-spacing ratio relative to launch.
struct RayBundle {
    std::vector<double> positions;
    std::vector<double> momenta;
    std::vector<double> jacobian; // size n_rays - 1
    double time = 0.0;
};

struct CausticReport {
    bool formed = false;
    double first_time = 0.0;
    double location = 0.0;
    std::pair<int, int> rays_involved{-1, -1};
};

struct RayTraceResult {
    std::vector<RayBundle> history;
    CausticReport caustic;
};

enum class LaunchMode { quantile, uniform };

// Time-sampled field with cubic space interpolation and linear time blending;
// used to feed the quantum-run potential back into ray tracing.
struct FieldHistory {
    Grid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> fields;    // value per slice
    std::vector<std::vector<double>> gradients; // centered d/dx per slice

    void push(double t, const std::vector<double>& f);
    double value_at(double x, double t) const;
    double gradient_at(double x, double t) const;
};

// Builds U(x, t) history slices from propagated wavefunction snapshots.
FieldHistory quantum_potential_history(const std::vector<Wavefunction>& snapshots,
                                       double r_floor = 1e-6);

// Characteristics of the classical flow: dx/dt = p/m, dp/dt = -dV/dx,
// launched with p(0) = dS/dx from the initial decomposition and advanced by
// velocity Verlet. Caustic reported at the first neighbor-spacing collapse
// (ratio below j_floor or sign change).
RayTraceResult trace_classical(const MadelungFields& initial, const Potential& v, double mass,
                               double dt, double t_final, int n_rays,
                               LaunchMode mode = LaunchMode::quantile, int output_every = 1);

// Same flow with force -d(V + lambda U)/dx; lambda = 0 reproduces
// trace_classical bit for bit, lambda = 1 follows the smoothed evolution that
// supplied u_history.
RayTraceResult trace_scaled(const MadelungFields& initial, const Potential& v, double mass,
                            double dt, double t_final, int n_rays, double lambda,
                            const FieldHistory& u_history,
                            LaunchMode mode = LaunchMode::quantile, int output_every = 1);

double ray_energy(double position, double momentum, const Potential& v, double mass, double t);

} // namespace qhj
