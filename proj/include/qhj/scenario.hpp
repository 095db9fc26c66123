#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhj/rays.hpp"
#include "qhj/tdse.hpp"
#include "qhj/trajectories.hpp"

namespace qhj {

// Raised for anything wrong with a scenario file; the message is a single
// line naming the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int dimension = 1;
    int points_per_axis = 256;
    double box_length = 20.0;
    Boundary boundary = Boundary::periodic;
};

struct InitialSpec {
    std::string kind; // gaussian | plane_wave | harmonic_eigenstate | box_mode | two_particle
    double sigma0 = 1.0, x0 = 0.0, p0 = 0.0, converge_time = 0.0;
    double omega = 1.0; // harmonic_eigenstate
    int n = 0;          // eigenstate / box mode index
    // two_particle only:
    std::string symmetry; // sym | antisym | product
    std::vector<InitialSpec> orbitals;
};

struct TrajectoryAnalysis {
    int count = 1000;
    Sampling sampling = Sampling::quantile;
};

struct RayAnalysis {
    int n_rays = 64;
    std::vector<double> lambdas{0.0};
    LaunchMode launch = LaunchMode::uniform;
};

struct BornAnalysis {
    double p = 0.5;
    std::int64_t n_measurements = 100;
    std::int64_t n_sequences = 10000;
};

struct WidthStudyAnalysis {
    std::vector<double> widths;
};

struct Analyses {
    bool madelung = false;
    double r_floor = 1e-6;
    bool uncertainty = false;
    std::optional<TrajectoryAnalysis> trajectories;
    std::optional<RayAnalysis> rays;
    std::optional<BornAnalysis> born;
    std::optional<WidthStudyAnalysis> width_study;
};

struct Scenario {
    std::string name;
    double hbar = 1.0;
    double mass = 1.0;
    Potential potential;
    GridSpec grid;
    InitialSpec initial;
    Scheme scheme = Scheme::split_step_spectral;
    double dt = 1e-3;
    double t_final = 1.0;
    int steps_per_output = 1;
    Analyses analyses;
    std::uint64_t seed = 0;
};

// Strict parse: unknown keys anywhere in the tree are fatal.
Scenario parse_scenario_text(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// Bundled scenario configs, keyed by name (alphabetical by map order).
const std::map<std::string, std::string>& bundled_scenarios();
std::vector<std::string> list_scenario_names();

// Applies one `path.to.key=value` override to a JSON config text.
std::string apply_override(const std::string& json_text, const std::string& assignment);

Grid make_grid(const GridSpec& spec);
Wavefunction build_initial_state(const Scenario& s);

} // namespace qhj
