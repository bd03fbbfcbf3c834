// main.cpp: monitored-transport command line

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"
#include "runner.hpp"

using namespace mt::cli;

namespace {

json load(const std::string& path, const std::string& preset_name) {
    if (!path.empty() && !preset_name.empty()) throw mt::ConfigError("", "give either a config file or --preset, not both");
    if (!preset_name.empty()) return preset(preset_name);
    if (path.empty()) throw mt::ConfigError("", "no configuration: pass a config file or --preset <name>");
    return load_json_file(path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state currents of continuously monitored quantum junctions"};
    app.set_version_flag("--version", std::string(MT_VERSION));
    app.require_subcommand(1);

    std::string config_path, preset_name;
    RunOptions opts;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::optional<double> rel_tol;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write CSV output");
    run_cmd->add_option("config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
    run_cmd->add_option("--preset", preset_name, "Built-in scenario (see `presets`)");
    run_cmd->add_option("--out", out, "Output CSV path, '-' for stdout");
    run_cmd->add_option("--workers", workers, "Worker threads (default: MT_WORKERS or 1)");
    run_cmd->add_option("--rel-tol", rel_tol, "Relative quadrature tolerance");
    run_cmd->add_flag("--json", opts.json, "Also write a JSON mirror of the table");

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario without running it");
    validate_cmd->add_option("config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
    validate_cmd->add_option("--preset", preset_name, "Built-in scenario");

    auto* list_cmd = app.add_subcommand("presets", "List built-in scenarios");
    auto* show_cmd = app.add_subcommand("show-preset", "Print a built-in scenario as JSON");
    show_cmd->add_option("name", preset_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& n : preset_names()) std::cout << n << '\n';
            return kExitOk;
        }
        if (show_cmd->parsed()) {
            std::cout << preset(preset_name).dump(2) << '\n';
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            const ScenarioConfig c = parse_config(load(config_path, preset_name));
            fmt::print("ok: {} task, config_sha256 {}\n", task_name(c.task), config_digest(c));
            return kExitOk;
        }
        opts.preset = preset_name;
        opts.out = out;
        opts.workers = workers;
        opts.rel_tol = rel_tol;
        const RunSummary s = run(load(config_path, preset_name), opts);
        if (s.failed_rows > 0)
            fmt::print(stderr, "{} of {} rows failed; see the error column of {}\n", s.failed_rows, s.rows, s.output);
        return s.exit_code;
    } catch (const mt::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return e.is_numerical() ? kExitNumerical : kExitInvalid;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitInvalid;
    }
}
