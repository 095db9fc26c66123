#pragma once

#include <string>

#include "qhj/scenario.hpp"

namespace qhj {

// Executes a scenario and writes its results directory under out_root:
//   manifest.json        config echo + version + seed
//   timeseries.csv       observables / residual norms / uncertainty per output
//   trajectories.csv     path positions over time (+ *_summary.csv)
//   rays_<i>.csv         ray positions per lambda value
//   caustic_report.txt   one record per lambda
//   born.csv             exact vs sampled outcome histogram (+ summary)
//   width_scaling.csv    width study rows (+ summary)
// Output is byte-identical for identical config + seed on one platform.
void run_scenario(const Scenario& s, const std::string& config_echo_json,
                  const std::string& out_root);

} // namespace qhj
