#include "qhj/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "qhj/born.hpp"
#include "qhj/madelung.hpp"
#include "qhj/rays.hpp"
#include "qhj/version.hpp"
#include "qhj/weyl.hpp"

namespace qhj {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }
    void raw_row(const std::string& line) { out_ << line << "\n"; }

  private:
    std::ofstream out_;
};

void write_manifest(const fs::path& dir, const Scenario& s, const std::string& config_echo) {
    nlohmann::json manifest;
    manifest["config"] = nlohmann::json::parse(config_echo);
    manifest["version"] = kVersion;
    manifest["seed"] = s.seed;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
}

void write_timeseries(const fs::path& dir, const Scenario& s,
                      const std::vector<Wavefunction>& snapshots) {
    const bool two_d = s.grid.dimension == 2;
    std::vector<std::string> header{"step", "time", "norm_sq", "energy"};
    if (two_d) {
        header.insert(header.end(), {"sym_defect", "antisym_defect"});
    } else {
        header.insert(header.end(), {"mean_x", "mean_p", "var_x", "var_p"});
        if (s.analyses.madelung) header.push_back("continuity_l2");
        if (s.analyses.uncertainty)
            header.insert(header.end(),
                          {"dx2", "dp2_spectral", "dp2_hj", "hj_drift", "hj_quantum", "product",
                           "g_min_alpha", "excluded_measure"});
    }
    CsvWriter csv(dir / "timeseries.csv", header);

    MadelungFields prev;
    bool have_prev = false;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const auto& psi = snapshots[i];
        std::vector<double> row{static_cast<double>(i) * s.steps_per_output, psi.time,
                                norm_sq(psi), mean_energy(psi, s.potential)};
        if (two_d) {
            const auto [sym, antisym] = exchange_defect(psi);
            row.push_back(sym);
            row.push_back(antisym);
        } else {
            const Observables o = observables(psi);
            row.insert(row.end(), {o.mean_x, o.mean_p, o.var_x, o.var_p});
            if (s.analyses.madelung) {
                const MadelungFields m = decompose(psi, s.analyses.r_floor);
                if (have_prev) {
                    const double gap = m.time - prev.time;
                    row.push_back(continuity_residual(prev, m, s.mass, gap).l2);
                } else {
                    row.push_back(0.0);
                }
                prev = m;
                have_prev = true;
            }
            if (s.analyses.uncertainty) {
                const UncertaintyReport u = uncertainty_report(psi, s.analyses.r_floor);
                row.insert(row.end(), {u.dx2, u.dp2_spectral, u.dp2_hj, u.hj_drift_term,
                                       u.hj_quantum_term, u.product, u.g_min_alpha,
                                       u.excluded_measure});
            }
        }
        csv.row(row);
    }
}

void write_trajectories(const fs::path& dir, const Scenario& s,
                        const std::vector<Wavefunction>& snapshots) {
    const auto& cfg = *s.analyses.trajectories;
    std::vector<MadelungFields> history;
    history.reserve(snapshots.size());
    for (const auto& psi : snapshots) history.push_back(decompose(psi, s.analyses.r_floor));

    const auto x0 = sample_initial(history.front(), cfg.count, cfg.sampling, s.seed);
    const double dt = history.size() > 1 ? history[1].time - history[0].time : s.dt;
    const TrajectoryEnsemble e =
        advect(x0, history, s.mass, dt, cfg.sampling, s.seed, 1);

    std::vector<std::string> header{"time"};
    for (int i = 0; i < e.count; ++i) header.push_back("x" + std::to_string(i));
    CsvWriter csv(dir / "trajectories.csv", header);
    for (std::size_t t = 0; t < e.times.size(); ++t) {
        std::vector<double> row{e.times[t]};
        row.insert(row.end(), e.paths[t].begin(), e.paths[t].end());
        csv.row(row);
    }

    CsvWriter summary(dir / "trajectories_summary.csv",
                      {"ks_final", "flagged_fraction", "order_invariant"});
    const double ks = equivariance_check(e, history.back());
    summary.row({ks, e.flagged_fraction(), sort_order_invariant(e) ? 1.0 : 0.0});
}

void write_rays(const fs::path& dir, const Scenario& s,
                const std::vector<Wavefunction>& snapshots) {
    const auto& cfg = *s.analyses.rays;
    const MadelungFields initial = decompose(snapshots.front(), s.analyses.r_floor);

    FieldHistory u_history;
    const bool needs_history =
        std::any_of(cfg.lambdas.begin(), cfg.lambdas.end(), [](double l) { return l > 0.0; });
    if (needs_history) u_history = quantum_potential_history(snapshots, s.analyses.r_floor);

    std::ofstream report(dir / "caustic_report.txt");
    for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
        const double lambda = cfg.lambdas[li];
        const RayTraceResult r =
            lambda == 0.0
                ? trace_classical(initial, s.potential, s.mass, s.dt, s.t_final, cfg.n_rays,
                                  cfg.launch, s.steps_per_output)
                : trace_scaled(initial, s.potential, s.mass, s.dt, s.t_final, cfg.n_rays,
                               lambda, u_history, cfg.launch, s.steps_per_output);

        std::vector<std::string> header{"time"};
        for (int i = 0; i < cfg.n_rays; ++i) header.push_back("x" + std::to_string(i));
        header.push_back("min_jacobian");
        CsvWriter csv(dir / ("rays_" + std::to_string(li) + ".csv"), header);
        for (const auto& bundle : r.history) {
            std::vector<double> row{bundle.time};
            row.insert(row.end(), bundle.positions.begin(), bundle.positions.end());
            double mj = bundle.jacobian.empty() ? 1.0 : bundle.jacobian.front();
            for (double j : bundle.jacobian) mj = std::min(mj, j);
            row.push_back(mj);
            csv.row(row);
        }

        report << "lambda=" << fmt(lambda) << " formed=" << (r.caustic.formed ? 1 : 0)
               << " first_time=" << fmt(r.caustic.formed ? r.caustic.first_time : -1.0)
               << " location=" << fmt(r.caustic.formed ? r.caustic.location : 0.0)
               << " ray_lo=" << r.caustic.rays_involved.first
               << " ray_hi=" << r.caustic.rays_involved.second << "\n";
    }
}

void write_born(const fs::path& dir, const Scenario& s) {
    const auto& cfg = *s.analyses.born;
    const TwoStateWeights w{cfg.p, 1.0 - cfg.p};
    const BranchDistribution exact = branch_distribution(w, cfg.n_measurements);
    const BranchSimResult sim =
        simulate_branching(w, cfg.n_measurements, cfg.n_sequences, s.seed);

    CsvWriter csv(dir / "born.csv", {"r", "exact_prob", "count", "freq"});
    for (std::size_t r = 0; r < exact.probs.size(); ++r)
        csv.row({static_cast<double>(r), exact.probs[r], static_cast<double>(sim.counts[r]),
                 static_cast<double>(sim.counts[r]) / static_cast<double>(cfg.n_sequences)});

    CsvWriter summary(dir / "born_summary.csv",
                      {"p", "n_measurements", "n_sequences", "mean_f", "var_f", "ks",
                       "exact_mean_f", "exact_var_f"});
    summary.row({cfg.p, static_cast<double>(cfg.n_measurements),
                 static_cast<double>(cfg.n_sequences), sim.mean_f, sim.var_f, sim.ks,
                 exact.mean_f, exact.var_f});
}

void write_width_study(const fs::path& dir, const Scenario& s) {
    const auto& cfg = *s.analyses.width_study;
    const Grid g = make_grid(s.grid);
    const auto rows = width_scaling_study(g, s.hbar, s.mass, cfg.widths);

    CsvWriter csv(dir / "width_scaling.csv",
                  {"sigma", "dx2", "dp2", "curvature_term", "product"});
    std::vector<double> sigmas, terms;
    for (const auto& r : rows) {
        csv.row({r.sigma, r.dx2, r.dp2, r.curvature_term, r.product});
        sigmas.push_back(r.sigma);
        terms.push_back(r.curvature_term);
    }
    CsvWriter summary(dir / "width_scaling_summary.csv", {"fit_exponent"});
    summary.row({fit_power_law_exponent(sigmas, terms)});
}

} // namespace

void run_scenario(const Scenario& s, const std::string& config_echo_json,
                  const std::string& out_root) {
    const fs::path dir = fs::path(out_root) / s.name;
    fs::create_directories(dir);
    write_manifest(dir, s, config_echo_json);

    Wavefunction psi = build_initial_state(s);
    normalize(psi);

    const PropagatorConfig cfg{s.scheme, s.dt, s.steps_per_output};
    if (const auto warning = step_sanity_warning(psi, s.potential, cfg))
        std::cerr << "warning: " << *warning << "\n";

    const auto snapshots = propagate(psi, s.potential, cfg, s.t_final);

    write_timeseries(dir, s, snapshots);
    if (s.analyses.trajectories) write_trajectories(dir, s, snapshots);
    if (s.analyses.rays) write_rays(dir, s, snapshots);
    if (s.analyses.born) write_born(dir, s);
    if (s.analyses.width_study) write_width_study(dir, s);
}

} // namespace qhj
