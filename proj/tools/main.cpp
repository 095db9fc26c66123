#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhj/runner.hpp"
#include "qhj/version.hpp"
#include "qhj/wavefunction.hpp"

namespace {

// A config argument is either a bundled scenario name or a path to a file.
std::string resolve_config_text(const std::string& arg) {
    const auto& bundled = qhj::bundled_scenarios();
    if (const auto it = bundled.find(arg); it != bundled.end()) return it->second;
    std::ifstream in(arg);
    if (!in)
        throw qhj::ConfigError("config: '" + arg +
                               "' is neither a bundled scenario nor a readable file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string output_root(const std::string& cli_value) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("QHJ_OUT_DIR"); env && *env) return env;
    return "results";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton-Jacobi / Schroedinger trajectory-ensemble simulator"};
    app.set_version_flag("--version", qhj::kVersion);
    app.require_subcommand(1);

    std::string config_arg;
    std::string out_dir;
    std::vector<std::string> overrides;

    auto* run = app.add_subcommand("run", "Run a scenario (bundled name or config file)");
    run->add_option("config", config_arg, "Bundled scenario name or JSON config path")
        ->required();
    run->add_option("--out-dir", out_dir, "Results root directory (default: results)");
    run->add_option("--override", overrides, "key.path=value override (repeatable)");

    auto* validate = app.add_subcommand("validate", "Parse and validate a config");
    validate->add_option("config", config_arg, "Bundled scenario name or JSON config path")
        ->required();
    validate->add_option("--override", overrides, "key.path=value override (repeatable)");

    app.add_subcommand("list", "List bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            for (const auto& name : qhj::list_scenario_names()) std::cout << name << "\n";
            return 0;
        }

        std::string text = resolve_config_text(config_arg);
        for (const auto& assignment : overrides)
            text = qhj::apply_override(text, assignment);
        const qhj::Scenario scenario = qhj::parse_scenario_text(text);
        // Echo the normalized config so the manifest is stable under formatting.
        const std::string echo = nlohmann::json::parse(text).dump(2);

        if (app.got_subcommand("validate")) {
            std::cout << "ok: " << scenario.name << "\n";
            return 0;
        }

        qhj::run_scenario(scenario, echo, output_root(out_dir));
        return 0;
    } catch (const qhj::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "abort: " << e.what() << "\n";
        return 3;
    }
}
