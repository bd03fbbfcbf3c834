// runner.hpp: executes a scenario: parallel units, resume log, output files

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "config.hpp"

namespace mt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

struct RunOptions {
    std::string preset;                 // name recorded in the metadata
    std::optional<std::string> out;     // overrides output.path; "-" is stdout
    std::optional<int> workers;         // overrides config and MT_WORKERS
    std::optional<double> rel_tol;      // overrides quadrature.rel_tol
    bool json = false;                  // also write the JSON mirror
    /// Called after each finished unit with the number finished so far.
    std::function<void(int)> on_unit_done;
};

struct RunSummary {
    int exit_code = kExitOk;
    int rows = 0;
    int failed_rows = 0;
    int resumed_units = 0;
    int units = 0;
    std::string output; // path written, or "-"
    std::string digest;
};

/// Applies command-line overrides to a config document.
json apply_overrides(json doc, const RunOptions& opts);

/// SHA-256 of the canonical config without output and worker settings.
std::string config_digest(const ScenarioConfig& c);

/// Worker count: explicit option, then config, then MT_WORKERS, then 1.
int resolve_workers(const ScenarioConfig& c, const RunOptions& opts);

/// Runs the scenario. Configuration problems throw ConfigError; per-unit
/// failures are recorded in the error column and set the exit code.
RunSummary run(const json& doc, const RunOptions& opts);

} // namespace mt::cli
