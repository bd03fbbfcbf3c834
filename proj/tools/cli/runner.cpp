// runner.cpp: scenario execution

#include "runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>

#include <fmt/format.h>

#include "output.hpp"
#include "tasks.hpp"

#ifndef MT_VERSION
#define MT_VERSION "unknown"
#endif

namespace mt::cli {

json apply_overrides(json doc, const RunOptions& opts) {
    if (!doc.is_object()) return doc;
    if (opts.rel_tol) doc["quadrature"]["rel_tol"] = *opts.rel_tol;
    if (opts.out) doc["output"]["path"] = *opts.out;
    if (opts.json) doc["output"]["json"] = true;
    return doc;
}

std::string config_digest(const ScenarioConfig& c) {
    json canon = to_json(c);
    canon.erase("output");
    canon.erase("workers");
    canon.erase("description");
    return sha256_hex(canon.dump());
}

int resolve_workers(const ScenarioConfig& c, const RunOptions& opts) {
    if (opts.workers) {
        if (*opts.workers < 1) throw ConfigError("--workers", "must be at least 1");
        return *opts.workers;
    }
    if (c.workers) return *c.workers;
    if (const char* env = std::getenv("MT_WORKERS"); env && *env) {
        char* end = nullptr;
        const long k = std::strtol(env, &end, 10);
        if (*end != '\0' || k < 1 || k > 4096)
            throw ConfigError("MT_WORKERS", fmt::format("expected a positive integer, got '{}'", env));
        return static_cast<int>(k);
    }
    return 1;
}

namespace {

Metadata metadata(const ScenarioConfig& c, const RunOptions& opts, const std::string& digest, int rows, int failed) {
    Metadata m{{"monitored-transport", MT_VERSION}, {"task", task_name(c.task)}};
    if (!opts.preset.empty()) m.emplace_back("preset", opts.preset);
    if (!c.description.empty()) m.emplace_back("description", c.description);
    m.emplace_back("config_sha256", digest);
    m.emplace_back("quadrature", fmt::format("rel_tol={} abs_tol={} max_subdivisions={}", c.quadrature.rel_tol,
                                             c.quadrature.abs_tol, c.quadrature.max_subdivisions));
    m.emplace_back("units", "hbar = e = k_B = 1; energies and temperatures in t; particle currents in t; "
                            "heat currents in t^2");
    m.emplace_back("sign", "currents are positive when flowing into the named reservoir");
    m.emplace_back("rows", std::to_string(rows));
    m.emplace_back("failed_rows", std::to_string(failed));
    return m;
}

// Writes through a temporary file so a crash never leaves a truncated result.
template <class Writer>
void write_file(const std::string& path, Writer&& w) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("output.path", fmt::format("cannot write '{}'", path));
        w(out);
        if (!out) throw ConfigError("output.path", fmt::format("write to '{}' failed", path));
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

RunSummary run(const json& input, const RunOptions& opts) {
    const ScenarioConfig cfg = parse_config(apply_overrides(input, opts));
    const int workers = resolve_workers(cfg, opts);
    const Plan plan = make_plan(cfg);

    RunSummary summary;
    summary.digest = config_digest(cfg);
    summary.units = static_cast<int>(plan.units.size());
    summary.output = cfg.output_path.empty() ? "-" : cfg.output_path;
    const bool to_file = summary.output != "-";

    std::vector<std::vector<TableRow>> results(plan.units.size());
    std::vector<int> severity(plan.units.size(), kExitOk);
    std::optional<Sidecar> sidecar;
    if (to_file) {
        const auto parent = std::filesystem::path(summary.output).parent_path();
        std::error_code ec;
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        sidecar.emplace(summary.output + ".progress", summary.digest);
        auto done = sidecar->load();
        for (auto& [u, rows] : done)
            if (u >= 0 && u < summary.units && rows.size() == plan.units[static_cast<std::size_t>(u)].keys.size()) {
                for (const auto& r : rows)
                    if (!r.error.empty()) severity[static_cast<std::size_t>(u)] = kExitNumerical;
                results[static_cast<std::size_t>(u)] = std::move(rows);
                ++summary.resumed_units;
            }
        sidecar->open(summary.resumed_units > 0);
        if (summary.resumed_units > 0)
            fmt::print(stderr, "resuming: {} of {} units already finished\n", summary.resumed_units, summary.units);
    }

    std::vector<int> todo;
    for (int u = 0; u < summary.units; ++u)
        if (results[static_cast<std::size_t>(u)].empty()) todo.push_back(u);

    const std::size_t n_values = plan.value_columns.size();
    std::mutex mu;
    int finished = summary.resumed_units;
    parallel_for(static_cast<int>(todo.size()), workers, [&](int k) {
        const int u = todo[static_cast<std::size_t>(k)];
        const Unit& unit = plan.units[static_cast<std::size_t>(u)];
        std::vector<TableRow> rows;
        int sev = kExitOk;
        std::string error;
        try {
            const auto values = unit.compute();
            if (values.size() != unit.keys.size()) throw ConsistencyError("task produced the wrong number of rows");
            for (std::size_t r = 0; r < values.size(); ++r) {
                TableRow row{unit.keys[r], {}};
                row.values.insert(row.values.end(), values[r].begin(), values[r].end());
                rows.push_back(std::move(row));
            }
        } catch (const Error& e) {
            error = e.what();
            sev = e.is_numerical() ? kExitNumerical : kExitInvalid;
        }
        if (!error.empty()) {
            rows.clear();
            for (const auto& key : unit.keys) {
                TableRow row{key, error};
                row.values.resize(key.size() + n_values, std::numeric_limits<double>::quiet_NaN());
                rows.push_back(std::move(row));
            }
        }
        std::lock_guard lock(mu);
        results[static_cast<std::size_t>(u)] = rows;
        severity[static_cast<std::size_t>(u)] = sev;
        if (sidecar) sidecar->record(u, rows);
        ++finished;
        if (opts.on_unit_done) opts.on_unit_done(finished);
    });

    Table table;
    table.columns = plan.key_columns;
    table.columns.insert(table.columns.end(), plan.value_columns.begin(), plan.value_columns.end());
    for (std::size_t u = 0; u < results.size(); ++u) {
        for (auto& r : results[u]) {
            summary.failed_rows += !r.error.empty();
            table.rows.push_back(std::move(r));
        }
        summary.exit_code = std::max(summary.exit_code, severity[u]);
    }
    summary.rows = static_cast<int>(table.rows.size());
    const Metadata meta = metadata(cfg, opts, summary.digest, summary.rows, summary.failed_rows);

    if (to_file) {
        write_file(summary.output, [&](std::ostream& out) { write_csv(out, table, meta); });
        if (cfg.json_mirror) {
            std::string jpath = std::filesystem::path(summary.output).replace_extension(".json").string();
            if (jpath == summary.output) jpath += ".json";
            write_file(jpath, [&](std::ostream& out) { write_json(out, table, meta); });
        }
        sidecar->remove();
    } else {
        write_csv(std::cout, table, meta);
        if (cfg.json_mirror) write_json(std::cout, table, meta);
        std::cout.flush();
    }
    return summary;
}

} // namespace mt::cli
