#include "qhj/scenario.hpp"

namespace qhj {

const std::map<std::string, std::string>& bundled_scenarios() {
    static const std::map<std::string, std::string> scenarios = {
        {"free_gaussian", R"json({
  "name": "free_gaussian",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 1024, "box_length": 40.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 1.0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.0005, "t_final": 2.0, "steps_per_output": 40 },
  "analyses": {
    "madelung": { "r_floor": 1e-06 },
    "uncertainty": {},
    "trajectories": { "count": 1000, "sampling": "quantile" }
  },
  "seed": 1
})json"},
        {"plane_wave", R"json({
  "name": "plane_wave",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 256, "box_length": 20.0, "boundary": "periodic" },
  "initial": { "kind": "plane_wave", "p0": 1.5707963267948966 },
  "run": { "scheme": "split_step_spectral", "dt": 0.001, "t_final": 0.5, "steps_per_output": 25 },
  "analyses": {
    "madelung": { "r_floor": 1e-06 },
    "trajectories": { "count": 200, "sampling": "quantile" }
  },
  "seed": 1
})json"},
        {"harmonic_ground", R"json({
  "name": "harmonic_ground",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "harmonic", "omega": 1.0 } },
  "grid": { "dimension": 1, "points_per_axis": 512, "box_length": 20.0, "boundary": "periodic" },
  "initial": { "kind": "harmonic_eigenstate", "omega": 1.0, "n": 0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.001, "t_final": 5.0, "steps_per_output": 100 },
  "analyses": { "madelung": { "r_floor": 1e-06 }, "uncertainty": {} },
  "seed": 1
})json"},
        {"harmonic_excited", R"json({
  "name": "harmonic_excited",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "harmonic", "omega": 1.0 } },
  "grid": { "dimension": 1, "points_per_axis": 512, "box_length": 20.0, "boundary": "periodic" },
  "initial": { "kind": "harmonic_eigenstate", "omega": 1.0, "n": 1 },
  "run": { "scheme": "split_step_spectral", "dt": 0.001, "t_final": 5.0, "steps_per_output": 100 },
  "analyses": { "madelung": { "r_floor": 1e-06 }, "uncertainty": {} },
  "seed": 1
})json"},
        {"focusing_caustic", R"json({
  "name": "focusing_caustic",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 2048, "box_length": 40.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 1.0, "converge_time": 1.0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.0005, "t_final": 3.0, "steps_per_output": 10 },
  "analyses": {
    "madelung": { "r_floor": 1e-06 },
    "classical_rays": { "n_rays": 64, "lambda": [0.0, 0.5, 1.0], "launch": "uniform" },
    "trajectories": { "count": 500, "sampling": "quantile" }
  },
  "seed": 1
})json"},
        {"soft_coulomb_lens", R"json({
  "name": "soft_coulomb_lens",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "soft_coulomb", "depth": 2.0, "softening": 0.5 } },
  "grid": { "dimension": 1, "points_per_axis": 1024, "box_length": 40.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 1.0, "x0": -8.0, "p0": 2.0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.0005, "t_final": 6.0, "steps_per_output": 20 },
  "analyses": {
    "madelung": { "r_floor": 1e-06 },
    "classical_rays": { "n_rays": 64, "lambda": [0.0, 1.0], "launch": "uniform" }
  },
  "seed": 1
})json"},
        {"born_two_state", R"json({
  "name": "born_two_state",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 64, "box_length": 16.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 1.0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.001, "t_final": 0.0, "steps_per_output": 1 },
  "analyses": { "born": { "p": 0.3, "n_measurements": 100, "n_sequences": 100000 } },
  "seed": 42
})json"},
        {"uncertainty_sweep", R"json({
  "name": "uncertainty_sweep",
  "physics": { "hbar": 0.8, "mass": 1.3, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 1024, "box_length": 40.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 0.7 },
  "run": { "scheme": "split_step_spectral", "dt": 0.0005, "t_final": 1.5, "steps_per_output": 30 },
  "analyses": { "madelung": { "r_floor": 1e-06 }, "uncertainty": {} },
  "seed": 1
})json"},
        {"delta_limit", R"json({
  "name": "delta_limit",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "free" } },
  "grid": { "dimension": 1, "points_per_axis": 4096, "box_length": 24.0, "boundary": "periodic" },
  "initial": { "kind": "gaussian", "sigma0": 1.0 },
  "run": { "scheme": "split_step_spectral", "dt": 0.001, "t_final": 0.0, "steps_per_output": 1 },
  "analyses": {
    "width_study": { "widths": [1.0, 0.8, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2, 0.15, 0.1] }
  },
  "seed": 1
})json"},
        {"exchange_pair", R"json({
  "name": "exchange_pair",
  "physics": { "hbar": 1.0, "mass": 1.0, "potential": { "kind": "harmonic", "omega": 1.0 } },
  "grid": { "dimension": 2, "points_per_axis": 128, "box_length": 16.0, "boundary": "periodic" },
  "initial": {
    "kind": "two_particle", "symmetry": "sym",
    "orbital_a": { "kind": "harmonic_eigenstate", "omega": 1.0, "n": 0 },
    "orbital_b": { "kind": "harmonic_eigenstate", "omega": 1.0, "n": 1 }
  },
  "run": { "scheme": "split_step_spectral", "dt": 0.002, "t_final": 0.2, "steps_per_output": 10 },
  "analyses": {},
  "seed": 1
})json"}};
    return scenarios;
}

std::vector<std::string> list_scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : bundled_scenarios()) {
        (void)text;
        names.push_back(name);
    }
    return names;
}

} // namespace qhj
