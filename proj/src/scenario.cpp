#include "qhj/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qhj/states.hpp"

namespace qhj {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ConfigError(field + ": " + msg);
}

void check_keys(const json& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(ctx, "must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(ctx + "." + key, "unknown key");
    }
}

const json* find(const json& j, const std::string& key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double number_at(const json& j, const std::string& ctx, const std::string& key,
                 std::optional<double> fallback = std::nullopt) {
    const json* v = find(j, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(ctx + "." + key, "missing required value");
    }
    if (!v->is_number()) fail(ctx + "." + key, "must be a number");
    return v->get<double>();
}

std::int64_t integer_at(const json& j, const std::string& ctx, const std::string& key,
                        std::optional<std::int64_t> fallback = std::nullopt) {
    const json* v = find(j, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(ctx + "." + key, "missing required value");
    }
    if (!v->is_number_integer()) fail(ctx + "." + key, "must be an integer");
    return v->get<std::int64_t>();
}

std::string string_at(const json& j, const std::string& ctx, const std::string& key,
                      std::optional<std::string> fallback = std::nullopt) {
    const json* v = find(j, key);
    if (!v) {
        if (fallback) return *fallback;
        fail(ctx + "." + key, "missing required value");
    }
    if (!v->is_string()) fail(ctx + "." + key, "must be a string");
    return v->get<std::string>();
}

GridSpec parse_grid(const json& j) {
    check_keys(j, "grid", {"dimension", "points_per_axis", "box_length", "boundary"});
    GridSpec g;
    g.dimension = static_cast<int>(integer_at(j, "grid", "dimension", 1));
    if (g.dimension != 1 && g.dimension != 2) fail("grid.dimension", "must be 1 or 2");
    g.points_per_axis = static_cast<int>(integer_at(j, "grid", "points_per_axis"));
    if (g.points_per_axis < 8) fail("grid.points_per_axis", "must be >= 8");
    g.box_length = number_at(j, "grid", "box_length");
    if (!(g.box_length > 0.0)) fail("grid.box_length", "must be > 0");
    const std::string b = string_at(j, "grid", "boundary", std::string("periodic"));
    if (b == "periodic")
        g.boundary = Boundary::periodic;
    else if (b == "dirichlet")
        g.boundary = Boundary::dirichlet;
    else
        fail("grid.boundary", "must be 'periodic' or 'dirichlet'");
    return g;
}

InitialSpec parse_initial(const json& j, const std::string& ctx) {
    check_keys(j, ctx,
               {"kind", "sigma0", "x0", "p0", "converge_time", "omega", "n", "symmetry",
                "orbital_a", "orbital_b"});
    InitialSpec s;
    s.kind = string_at(j, ctx, "kind");
    if (s.kind == "gaussian") {
        s.sigma0 = number_at(j, ctx, "sigma0");
        if (!(s.sigma0 > 0.0)) fail(ctx + ".sigma0", "must be > 0");
        s.x0 = number_at(j, ctx, "x0", 0.0);
        s.p0 = number_at(j, ctx, "p0", 0.0);
        s.converge_time = number_at(j, ctx, "converge_time", 0.0);
        if (s.converge_time < 0.0) fail(ctx + ".converge_time", "must be >= 0");
    } else if (s.kind == "plane_wave") {
        s.p0 = number_at(j, ctx, "p0");
    } else if (s.kind == "harmonic_eigenstate") {
        s.omega = number_at(j, ctx, "omega");
        if (!(s.omega > 0.0)) fail(ctx + ".omega", "must be > 0");
        s.n = static_cast<int>(integer_at(j, ctx, "n", 0));
        if (s.n < 0 || s.n > 3) fail(ctx + ".n", "must be in [0, 3]");
    } else if (s.kind == "box_mode") {
        s.n = static_cast<int>(integer_at(j, ctx, "n", 1));
        if (s.n < 1) fail(ctx + ".n", "must be >= 1");
    } else if (s.kind == "two_particle") {
        s.symmetry = string_at(j, ctx, "symmetry");
        if (s.symmetry != "sym" && s.symmetry != "antisym" && s.symmetry != "product")
            fail(ctx + ".symmetry", "must be 'sym', 'antisym' or 'product'");
        const json* a = find(j, "orbital_a");
        const json* b = find(j, "orbital_b");
        if (!a || !b) fail(ctx, "two_particle needs orbital_a and orbital_b");
        s.orbitals.push_back(parse_initial(*a, ctx + ".orbital_a"));
        s.orbitals.push_back(parse_initial(*b, ctx + ".orbital_b"));
        for (const auto& orb : s.orbitals)
            if (orb.kind == "two_particle") fail(ctx, "orbitals must be one-particle states");
    } else {
        fail(ctx + ".kind", "unknown initial state kind '" + s.kind + "'");
    }
    return s;
}

Potential parse_potential(const json& j) {
    check_keys(j, "physics.potential",
               {"kind", "omega", "depth", "softening", "height", "width", "strength",
                "switch_off_time", "values"});
    const std::string kind = string_at(j, "physics.potential", "kind");
    if (kind == "free") return Potential::free_space();
    if (kind == "harmonic") {
        const double omega = number_at(j, "physics.potential", "omega");
        if (!(omega > 0.0)) fail("physics.potential.omega", "must be > 0");
        return Potential::harmonic_trap(omega);
    }
    if (kind == "soft_coulomb") {
        const double depth = number_at(j, "physics.potential", "depth");
        const double softening = number_at(j, "physics.potential", "softening");
        if (!(softening > 0.0)) fail("physics.potential.softening", "must be > 0");
        return Potential::soft_coulomb_well(depth, softening);
    }
    if (kind == "barrier") {
        const double height = number_at(j, "physics.potential", "height");
        const double width = number_at(j, "physics.potential", "width");
        if (!(width > 0.0)) fail("physics.potential.width", "must be > 0");
        return Potential::square_barrier(height, width);
    }
    if (kind == "focusing_lens") {
        const double strength = number_at(j, "physics.potential", "strength");
        const double off = number_at(j, "physics.potential", "switch_off_time");
        if (!(off >= 0.0)) fail("physics.potential.switch_off_time", "must be >= 0");
        return Potential::focusing_lens(strength, off);
    }
    if (kind == "custom") {
        const json* v = find(j, "values");
        if (!v || !v->is_array()) fail("physics.potential.values", "must be an array");
        std::vector<double> table;
        for (const auto& x : *v) {
            if (!x.is_number()) fail("physics.potential.values", "entries must be numbers");
            table.push_back(x.get<double>());
        }
        return Potential::tabulated(std::move(table));
    }
    fail("physics.potential.kind", "unknown potential kind '" + kind + "'");
}

Analyses parse_analyses(const json& j) {
    check_keys(j, "analyses",
               {"madelung", "uncertainty", "trajectories", "classical_rays", "born",
                "width_study"});
    Analyses a;
    if (const json* m = find(j, "madelung")) {
        check_keys(*m, "analyses.madelung", {"r_floor"});
        a.madelung = true;
        a.r_floor = number_at(*m, "analyses.madelung", "r_floor", 1e-6);
        if (!(a.r_floor > 0.0) || a.r_floor > 1e-3)
            fail("analyses.madelung.r_floor", "must be in (0, 1e-3]");
    }
    if (const json* u = find(j, "uncertainty")) {
        check_keys(*u, "analyses.uncertainty", {});
        a.uncertainty = true;
    }
    if (const json* t = find(j, "trajectories")) {
        check_keys(*t, "analyses.trajectories", {"count", "sampling"});
        TrajectoryAnalysis ta;
        ta.count = static_cast<int>(integer_at(*t, "analyses.trajectories", "count", 1000));
        if (ta.count < 2) fail("analyses.trajectories.count", "must be >= 2");
        const std::string s =
            string_at(*t, "analyses.trajectories", "sampling", std::string("quantile"));
        if (s == "quantile")
            ta.sampling = Sampling::quantile;
        else if (s == "random")
            ta.sampling = Sampling::random;
        else
            fail("analyses.trajectories.sampling", "must be 'quantile' or 'random'");
        a.trajectories = ta;
    }
    if (const json* r = find(j, "classical_rays")) {
        check_keys(*r, "analyses.classical_rays", {"n_rays", "lambda", "launch"});
        RayAnalysis ra;
        ra.n_rays = static_cast<int>(integer_at(*r, "analyses.classical_rays", "n_rays", 64));
        if (ra.n_rays < 16) fail("analyses.classical_rays.n_rays", "must be >= 16");
        if (const json* l = find(*r, "lambda")) {
            ra.lambdas.clear();
            if (l->is_number()) {
                ra.lambdas.push_back(l->get<double>());
            } else if (l->is_array()) {
                for (const auto& x : *l) {
                    if (!x.is_number())
                        fail("analyses.classical_rays.lambda", "entries must be numbers");
                    ra.lambdas.push_back(x.get<double>());
                }
            } else {
                fail("analyses.classical_rays.lambda", "must be a number or array");
            }
        }
        for (double l : ra.lambdas)
            if (l < 0.0 || l > 1.0)
                fail("analyses.classical_rays.lambda", "values must lie in [0, 1]");
        const std::string mode =
            string_at(*r, "analyses.classical_rays", "launch", std::string("uniform"));
        if (mode == "uniform")
            ra.launch = LaunchMode::uniform;
        else if (mode == "quantile")
            ra.launch = LaunchMode::quantile;
        else
            fail("analyses.classical_rays.launch", "must be 'uniform' or 'quantile'");
        a.rays = ra;
    }
    if (const json* b = find(j, "born")) {
        check_keys(*b, "analyses.born", {"p", "n_measurements", "n_sequences"});
        BornAnalysis ba;
        ba.p = number_at(*b, "analyses.born", "p");
        if (ba.p < 0.0 || ba.p > 1.0) fail("analyses.born.p", "must be in [0, 1]");
        ba.n_measurements = integer_at(*b, "analyses.born", "n_measurements");
        if (ba.n_measurements < 1 || ba.n_measurements > 1'000'000)
            fail("analyses.born.n_measurements", "must be in [1, 1e6]");
        ba.n_sequences = integer_at(*b, "analyses.born", "n_sequences");
        if (ba.n_sequences < 1000) fail("analyses.born.n_sequences", "must be >= 1000");
        a.born = ba;
    }
    if (const json* w = find(j, "width_study")) {
        check_keys(*w, "analyses.width_study", {"widths"});
        const json* widths = find(*w, "widths");
        if (!widths || !widths->is_array() || widths->empty())
            fail("analyses.width_study.widths", "must be a non-empty array");
        WidthStudyAnalysis ws;
        for (const auto& x : *widths) {
            if (!x.is_number()) fail("analyses.width_study.widths", "entries must be numbers");
            ws.widths.push_back(x.get<double>());
        }
        for (std::size_t i = 1; i < ws.widths.size(); ++i)
            if (!(ws.widths[i] < ws.widths[i - 1]))
                fail("analyses.width_study.widths", "must be strictly decreasing");
        if (!(ws.widths.back() > 0.0)) fail("analyses.width_study.widths", "must be positive");
        a.width_study = ws;
    }
    return a;
}

void cross_validate(const Scenario& s) {
    const bool two_d = s.grid.dimension == 2;
    if ((s.initial.kind == "two_particle") != two_d)
        fail("initial.kind", two_d ? "2D grids require a two_particle state"
                                   : "two_particle states require grid.dimension = 2");
    if (s.initial.kind == "plane_wave" && s.grid.boundary != Boundary::periodic)
        fail("initial.kind", "plane_wave requires a periodic grid");
    if (s.initial.kind == "box_mode" && s.grid.boundary != Boundary::dirichlet)
        fail("initial.kind", "box_mode requires a dirichlet grid");
    if (s.scheme == Scheme::split_step_spectral && s.grid.boundary != Boundary::periodic)
        fail("run.scheme", "split_step_spectral requires periodic boundary");
    if (s.scheme == Scheme::crank_nicolson && two_d)
        fail("run.scheme", "crank_nicolson is 1D-only in this build");
    if (two_d) {
        if (s.analyses.uncertainty) fail("analyses.uncertainty", "needs a 1D scenario");
        if (s.analyses.trajectories) fail("analyses.trajectories", "needs a 1D scenario");
        if (s.analyses.rays) fail("analyses.classical_rays", "needs a 1D scenario");
        if (s.analyses.width_study) fail("analyses.width_study", "needs a 1D scenario");
    }
}

} // namespace

Scenario parse_scenario_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    check_keys(j, "config", {"name", "physics", "grid", "initial", "run", "analyses", "seed"});

    Scenario s;
    s.name = string_at(j, "config", "name");
    if (s.name.empty()) fail("name", "must not be empty");

    const json* physics = find(j, "physics");
    if (!physics) fail("physics", "missing required section");
    check_keys(*physics, "physics", {"hbar", "mass", "potential"});
    s.hbar = number_at(*physics, "physics", "hbar", 1.0);
    if (!(s.hbar > 0.0)) fail("physics.hbar", "must be > 0");
    s.mass = number_at(*physics, "physics", "mass", 1.0);
    if (!(s.mass > 0.0)) fail("physics.mass", "must be > 0");
    if (const json* pot = find(*physics, "potential"))
        s.potential = parse_potential(*pot);

    const json* grid = find(j, "grid");
    if (!grid) fail("grid", "missing required section");
    s.grid = parse_grid(*grid);

    const json* initial = find(j, "initial");
    if (!initial) fail("initial", "missing required section");
    s.initial = parse_initial(*initial, "initial");

    const json* run = find(j, "run");
    if (!run) fail("run", "missing required section");
    check_keys(*run, "run", {"scheme", "dt", "t_final", "steps_per_output"});
    const std::string scheme =
        string_at(*run, "run", "scheme", std::string("split_step_spectral"));
    if (scheme == "split_step_spectral")
        s.scheme = Scheme::split_step_spectral;
    else if (scheme == "crank_nicolson")
        s.scheme = Scheme::crank_nicolson;
    else
        fail("run.scheme", "must be 'split_step_spectral' or 'crank_nicolson'");
    s.dt = number_at(*run, "run", "dt");
    if (!(s.dt > 0.0)) fail("run.dt", "must be > 0");
    s.t_final = number_at(*run, "run", "t_final");
    if (s.t_final < 0.0) fail("run.t_final", "must be >= 0");
    s.steps_per_output = static_cast<int>(integer_at(*run, "run", "steps_per_output", 1));
    if (s.steps_per_output < 1) fail("run.steps_per_output", "must be >= 1");

    if (const json* analyses = find(j, "analyses")) s.analyses = parse_analyses(*analyses);

    if (const json* seed = find(j, "seed")) {
        if (!seed->is_number_integer() || seed->get<std::int64_t>() < 0)
            fail("seed", "must be a non-negative integer");
        s.seed = seed->get<std::uint64_t>();
    }

    cross_validate(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string apply_override(const std::string& json_text, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override: expected key.path=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text; // plain string
    }

    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) throw ConfigError("override: empty key segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
    return j.dump(2);
}

Grid make_grid(const GridSpec& spec) {
    return make_grid(spec.dimension, spec.points_per_axis, spec.box_length, spec.boundary);
}

namespace {

Wavefunction build_one_particle(const InitialSpec& init, const Grid& g, double hbar,
                                double mass) {
    if (init.kind == "gaussian")
        return gaussian_packet(g, hbar, mass, init.sigma0, init.x0, init.p0,
                               init.converge_time);
    if (init.kind == "plane_wave") return plane_wave_state(g, hbar, mass, init.p0);
    if (init.kind == "harmonic_eigenstate")
        return harmonic_eigenstate(g, hbar, mass, init.omega, init.n);
    if (init.kind == "box_mode") return box_mode_state(g, hbar, mass, init.n);
    throw ConfigError("initial.kind: cannot build state '" + init.kind + "'");
}

} // namespace

Wavefunction build_initial_state(const Scenario& s) {
    const Grid g = make_grid(s.grid);
    if (s.initial.kind != "two_particle") return build_one_particle(s.initial, g, s.hbar, s.mass);

    Grid axis = g;
    axis.dimension = 1;
    const Wavefunction a = build_one_particle(s.initial.orbitals[0], axis, s.hbar, s.mass);
    const Wavefunction b = build_one_particle(s.initial.orbitals[1], axis, s.hbar, s.mass);
    if (s.initial.symmetry == "product") return product_state(g, a, b);
    return exchange_combination(g, a, b, s.initial.symmetry == "sym" ? 1 : -1);
}

} // namespace qhj
