// config.hpp: JSON scenario configuration: schema checks, grids, junction builders

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtransport/mtransport.hpp"

namespace mt::cli {

using json = nlohmann::json;

enum class Task { Currents, Sweep, ConductanceScan, PowerCurve, CoolingMap, CopCurve, OracleCheck };

const char* task_name(Task t);

struct Axis {
    std::string param;
    std::vector<double> values;
};

struct ScenarioConfig {
    Task task = Task::Currents;
    std::string description;
    json junction; // junction description, see build_junction

    std::vector<Axis> axes;        // sweep: one or two axes
    std::vector<double> gammas;    // conductance-scan, power-curve, cooling-map, oracle-check
    std::vector<double> mu_grid;   // conductance-scan
    std::vector<double> dmu_grid;  // power-curve
    std::vector<double> eps_L_grid, eps_R_grid; // cooling-map
    std::vector<double> gamma_grid; // cop-curve
    std::vector<int> modes;        // oracle-check
    double mu = 0.0;               // power-curve centre
    double step = 1e-4;            // conductance finite-difference step

    QuadratureSpec quadrature;
    std::string output_path;       // empty or "-" writes to stdout
    bool json_mirror = false;
    std::optional<int> workers;
};

/// Parses and validates a configuration. Throws ConfigError naming the field.
ScenarioConfig parse_config(const json& doc);

/// Canonical form: defaults filled in, grids expanded. parse_config(to_json(c))
/// reproduces c, and the config hash is taken over this form.
json to_json(const ScenarioConfig& c);

/// Reads a JSON file; syntax errors are reported with line and column.
json load_json_file(const std::string& path);

/// Parses JSON text; `origin` names the source in error messages.
json parse_json_text(const std::string& text, const std::string& origin);

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
json preset(const std::string& name);

/// Builds a junction from its description. Three types are understood:
///   single_level  monitored level between two Lorentzian filters
///   pair          two levels coupled only through a cross-correlation monitor
///   general       explicit h, O and reservoir blocks
Junction build_junction(const json& desc, const std::string& path = "junction");

/// Copy of `desc` with a scalar parameter set. Besides the fields of each
/// type, "mu" and "T" set both reservoirs at once.
json with_param(json desc, const std::string& param, double value, const std::string& path = "junction");

} // namespace mt::cli
