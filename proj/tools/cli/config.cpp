// config.cpp: configuration parsing and junction construction

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>

namespace mt::cli {

namespace detail {
// Generated at build time from tools/presets/*.json.
const std::vector<std::pair<std::string, std::string>>& embedded_presets();
} // namespace detail

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join(const std::string& path, std::size_t k) { return fmt::format("{}[{}]", path, k); }

[[noreturn]] void fail(const std::string& field, const std::string& message) { throw ConfigError(field, message); }

const char* type_name(const json& v) { return v.type_name(); }

void check_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, fmt::format("expected an object, got {}", type_name(v)));
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(join(path, key), "unknown field");
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, fmt::format("expected a number, got {}", type_name(v)));
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing required field");
    return *it;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, join(path, key));
}

cplx complex_number(const json& v, const std::string& path) {
    if (v.is_number()) return {number(v, path), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], join(path, 0)), number(v[1], join(path, 1))};
    fail(path, "expected a number or a [re, im] pair");
}

Mat matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(v.size());
    Mat m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        const std::string rp = join(path, static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            fail(rp, fmt::format("expected a row of {} entries", n));
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = complex_number(row[static_cast<std::size_t>(c)], join(rp, static_cast<std::size_t>(c)));
    }
    return m;
}

int positive_int(const json& v, const std::string& path, int minimum) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    const auto k = v.get<long long>();
    if (k < minimum || k > 1000000) fail(path, fmt::format("must be an integer >= {}", minimum));
    return static_cast<int>(k);
}

void require_increasing(const std::vector<double>& g, const std::string& path) {
    if (g.empty()) fail(path, "empty grid");
    for (std::size_t k = 1; k < g.size(); ++k)
        if (!(g[k] > g[k - 1])) fail(join(path, k), "grid must be strictly increasing");
}

// Explicit list, {"linspace": [a, b, n]} or {"logspace": [a, b, n]} with
// endpoints given as values.
std::vector<double> grid(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], join(path, k)));
    } else if (v.is_object()) {
        if (v.size() != 1) fail(path, "grid object needs exactly one of linspace, logspace");
        const auto& [kind, spec] = *v.items().begin();
        const std::string sp = join(path, kind);
        if (kind != "linspace" && kind != "logspace") fail(sp, "unknown grid kind (use linspace or logspace)");
        if (!spec.is_array() || spec.size() != 3) fail(sp, "expected [start, stop, count]");
        const double a = number(spec[0], join(sp, 0)), b = number(spec[1], join(sp, 1));
        const int n = positive_int(spec[2], join(sp, 2), 1);
        if (kind == "logspace" && !(a > 0.0 && b > 0.0)) fail(sp, "logspace endpoints must be positive");
        for (int k = 0; k < n; ++k) {
            const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
            out.push_back(kind == "linspace" ? a + (b - a) * t
                                             : std::exp(std::log(a) + (std::log(b) - std::log(a)) * t));
        }
        out.front() = a;
        if (n > 1) out.back() = b;
    } else {
        fail(path, "expected an array or a {linspace|logspace: [start, stop, count]} object");
    }
    require_increasing(out, path);
    return out;
}

const std::set<std::string> kSingleLevelKeys{"type", "eps_d", "eps_filter_L", "eps_filter_R", "delta", "t_c",
                                             "gamma", "mu_L", "mu_R", "T_L", "T_R"};
const std::set<std::string> kPairKeys{"type", "eps_L", "eps_R", "delta", "t_c", "gamma",
                                      "mu_L", "mu_R", "T_L", "T_R"};

std::string junction_type(const json& desc, const std::string& path) {
    check_object(desc, path);
    const json& t = require(desc, "type", path);
    if (!t.is_string()) fail(join(path, "type"), "expected a string");
    const auto s = t.get<std::string>();
    if (s != "single_level" && s != "pair" && s != "general")
        fail(join(path, "type"), fmt::format("unknown junction type '{}' (single_level, pair, general)", s));
    return s;
}

HybridizationShape shape(const json& v, const std::string& path) {
    check_object(v, path);
    const json& t = require(v, "type", path);
    const std::string kind = t.is_string() ? t.get<std::string>() : "";
    if (kind == "lorentzian") {
        check_keys(v, {"type", "t_c", "delta", "eps_f"}, path);
        return LorentzianFilter{number(require(v, "t_c", path), join(path, "t_c")),
                                number(require(v, "delta", path), join(path, "delta")),
                                number(require(v, "eps_f", path), join(path, "eps_f"))};
    }
    if (kind == "flat") {
        check_keys(v, {"type", "gamma0", "half_bandwidth", "wide_band"}, path);
        FlatBand f;
        f.gamma0 = number(require(v, "gamma0", path), join(path, "gamma0"));
        f.half_bandwidth = number_or(v, "half_bandwidth", 1.0, path);
        if (auto it = v.find("wide_band"); it != v.end()) {
            if (!it->is_boolean()) fail(join(path, "wide_band"), "expected true or false");
            f.wide_band = it->get<bool>();
        }
        return f;
    }
    if (kind == "tabulated") {
        check_keys(v, {"type", "grid", "values"}, path);
        Tabulated tab;
        const json& g = require(v, "grid", path);
        const json& val = require(v, "values", path);
        if (!g.is_array() || !val.is_array()) fail(path, "grid and values must be arrays");
        for (std::size_t k = 0; k < g.size(); ++k) tab.grid.push_back(number(g[k], join(join(path, "grid"), k)));
        for (std::size_t k = 0; k < val.size(); ++k)
            tab.values.push_back(number(val[k], join(join(path, "values"), k)));
        return tab;
    }
    fail(join(path, "type"), "unknown hybridization type (lorentzian, flat, tabulated)");
}

Reservoir reservoir(const json& v, const std::string& path) {
    check_object(v, path);
    check_keys(v, {"mu", "T", "hybridization", "coupling_sites"}, path);
    Reservoir r;
    r.mu = number_or(v, "mu", 0.0, path);
    r.T = number_or(v, "T", 0.0, path);
    r.hyb.shape = shape(require(v, "hybridization", path), join(path, "hybridization"));
    if (auto it = v.find("coupling_sites"); it != v.end()) {
        const std::string cp = join(path, "coupling_sites");
        if (!it->is_array() || it->empty()) fail(cp, "expected a non-empty array");
        r.hyb.coupling_sites.clear();
        for (std::size_t k = 0; k < it->size(); ++k) {
            const json& s = (*it)[k];
            const std::string sp = join(cp, k);
            check_object(s, sp);
            check_keys(s, {"site", "weight"}, sp);
            CouplingSite cs;
            cs.site = positive_int(require(s, "site", sp), join(sp, "site"), 0);
            if (auto w = s.find("weight"); w != s.end()) cs.weight = complex_number(*w, join(sp, "weight"));
            r.hyb.coupling_sites.push_back(cs);
        }
    }
    return r;
}

void check_valid(const Junction& j, const std::string& path) {
    const auto rep = validate(j);
    if (!rep.ok()) fail(path, rep.summary());
}

Task parse_task(const json& v) {
    if (!v.is_string()) fail("task", "expected a string");
    const auto s = v.get<std::string>();
    for (Task t : {Task::Currents, Task::Sweep, Task::ConductanceScan, Task::PowerCurve, Task::CoolingMap,
                   Task::CopCurve, Task::OracleCheck})
        if (s == task_name(t)) return t;
    fail("task", fmt::format("unknown task '{}' (currents, sweep, conductance-scan, power-curve, cooling-map, "
                             "cop-curve, oracle-check)",
                             s));
}

std::set<std::string> task_keys(Task t) {
    std::set<std::string> k{"description", "task", "junction", "quadrature", "output", "workers"};
    switch (t) {
    case Task::Currents: break;
    case Task::Sweep: k.insert("axes"); break;
    case Task::ConductanceScan: k.insert({"mu", "gammas", "step"}); break;
    case Task::PowerCurve: k.insert({"mu", "dmu", "gammas"}); break;
    case Task::CoolingMap: k.insert({"eps_L", "eps_R", "gammas"}); break;
    case Task::CopCurve: k.insert("gamma"); break;
    case Task::OracleCheck: k.insert({"gammas", "modes"}); break;
    }
    return k;
}

QuadratureSpec quadrature(const json& doc) {
    QuadratureSpec q;
    auto it = doc.find("quadrature");
    if (it == doc.end()) return q;
    check_object(*it, "quadrature");
    check_keys(*it, {"rel_tol", "abs_tol", "max_subdivisions"}, "quadrature");
    q.rel_tol = number_or(*it, "rel_tol", q.rel_tol, "quadrature");
    q.abs_tol = number_or(*it, "abs_tol", q.abs_tol, "quadrature");
    if (auto m = it->find("max_subdivisions"); m != it->end())
        q.max_subdivisions = positive_int(*m, "quadrature.max_subdivisions", 1);
    try {
        q.validate();
    } catch (const InvalidParameterError& e) {
        fail("quadrature", e.what());
    }
    return q;
}

} // namespace

const char* task_name(Task t) {
    switch (t) {
    case Task::Currents: return "currents";
    case Task::Sweep: return "sweep";
    case Task::ConductanceScan: return "conductance-scan";
    case Task::PowerCurve: return "power-curve";
    case Task::CoolingMap: return "cooling-map";
    case Task::CopCurve: return "cop-curve";
    case Task::OracleCheck: return "oracle-check";
    }
    return "?";
}

Junction build_junction(const json& desc, const std::string& path) {
    const std::string type = junction_type(desc, path);
    if (type == "single_level") {
        check_keys(desc, kSingleLevelKeys, path);
        scenarios::SingleLevelParams p;
        p.eps_d = number_or(desc, "eps_d", p.eps_d, path);
        p.eps_filter_L = number_or(desc, "eps_filter_L", p.eps_filter_L, path);
        p.eps_filter_R = number_or(desc, "eps_filter_R", p.eps_filter_R, path);
        p.delta = number_or(desc, "delta", p.delta, path);
        p.t_c = number_or(desc, "t_c", p.t_c, path);
        p.gamma = number_or(desc, "gamma", p.gamma, path);
        p.mu_L = number_or(desc, "mu_L", p.mu_L, path);
        p.mu_R = number_or(desc, "mu_R", p.mu_R, path);
        p.T_L = number_or(desc, "T_L", p.T_L, path);
        p.T_R = number_or(desc, "T_R", p.T_R, path);
        Junction j = scenarios::single_level_junction(p);
        check_valid(j, path);
        return j;
    }
    if (type == "pair") {
        check_keys(desc, kPairKeys, path);
        scenarios::PairParams p;
        p.eps_L = number_or(desc, "eps_L", p.eps_L, path);
        p.eps_R = number_or(desc, "eps_R", p.eps_R, path);
        p.delta = number_or(desc, "delta", p.delta, path);
        p.t_c = number_or(desc, "t_c", p.t_c, path);
        p.gamma = number_or(desc, "gamma", p.gamma, path);
        p.mu_L = number_or(desc, "mu_L", p.mu_L, path);
        p.mu_R = number_or(desc, "mu_R", p.mu_R, path);
        p.T_L = number_or(desc, "T_L", p.T_L, path);
        p.T_R = number_or(desc, "T_R", p.T_R, path);
        Junction j = scenarios::pair_junction(p);
        check_valid(j, path);
        return j;
    }
    check_keys(desc, {"type", "h", "O", "gamma", "left", "right"}, path);
    Junction j;
    j.h = matrix(require(desc, "h", path), join(path, "h"));
    j.O = matrix(require(desc, "O", path), join(path, "O"));
    j.gamma = number_or(desc, "gamma", 0.0, path);
    j.left = reservoir(require(desc, "left", path), join(path, "left"));
    j.right = reservoir(require(desc, "right", path), join(path, "right"));
    check_valid(j, path);
    return j;
}

json with_param(json desc, const std::string& param, double value, const std::string& path) {
    const std::string type = junction_type(desc, path);
    if (param == "mu" || param == "T") {
        desc = with_param(std::move(desc), param + "_L", value, path);
        return with_param(std::move(desc), param + "_R", value, path);
    }
    if (type == "general") {
        static const std::map<std::string, std::pair<const char*, const char*>> map{
            {"mu_L", {"left", "mu"}}, {"mu_R", {"right", "mu"}}, {"T_L", {"left", "T"}}, {"T_R", {"right", "T"}}};
        if (param == "gamma") {
            desc["gamma"] = value;
            return desc;
        }
        auto it = map.find(param);
        if (it == map.end())
            fail(path, fmt::format("parameter '{}' cannot be set on a general junction "
                                   "(gamma, mu, T, mu_L, mu_R, T_L, T_R)",
                                   param));
        if (!desc.contains(it->second.first)) fail(join(path, it->second.first), "missing required field");
        desc[it->second.first][it->second.second] = value;
        return desc;
    }
    const auto& keys = type == "pair" ? kPairKeys : kSingleLevelKeys;
    if (param == "type" || !keys.count(param))
        fail(path, fmt::format("parameter '{}' does not exist for a {} junction", param, type));
    desc[param] = value;
    return desc;
}

ScenarioConfig parse_config(const json& doc) {
    check_object(doc, "");
    ScenarioConfig c;
    c.task = parse_task(require(doc, "task", ""));
    check_keys(doc, task_keys(c.task), "");
    if (auto it = doc.find("description"); it != doc.end()) {
        if (!it->is_string()) fail("description", "expected a string");
        c.description = it->get<std::string>();
    }
    c.junction = require(doc, "junction", "");
    const std::string jtype = junction_type(c.junction, "junction");
    c.quadrature = quadrature(doc);

    if (auto it = doc.find("output"); it != doc.end()) {
        check_object(*it, "output");
        check_keys(*it, {"path", "json"}, "output");
        if (auto p = it->find("path"); p != it->end()) {
            if (!p->is_string()) fail("output.path", "expected a string");
            c.output_path = p->get<std::string>();
        }
        if (auto p = it->find("json"); p != it->end()) {
            if (!p->is_boolean()) fail("output.json", "expected true or false");
            c.json_mirror = p->get<bool>();
        }
    }
    if (auto it = doc.find("workers"); it != doc.end()) c.workers = positive_int(*it, "workers", 1);

    bool task_sets_gamma = false;
    auto gammas = [&](const std::string& key, bool required) {
        auto it = doc.find(key);
        if (it == doc.end()) {
            if (required) fail(key, "missing required field");
            return;
        }
        c.gammas = grid(*it, key);
        for (std::size_t k = 0; k < c.gammas.size(); ++k)
            if (c.gammas[k] < 0.0) fail(join(key, k), "monitoring strength must be non-negative");
        task_sets_gamma = true;
    };

    switch (c.task) {
    case Task::Currents: break;
    case Task::Sweep: {
        const json& axes = require(doc, "axes", "");
        if (!axes.is_array() || axes.empty() || axes.size() > 2) fail("axes", "expected one or two axes");
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::string ap = join("axes", k);
            check_object(axes[k], ap);
            check_keys(axes[k], {"param", "values"}, ap);
            const json& p = require(axes[k], "param", ap);
            if (!p.is_string()) fail(join(ap, "param"), "expected a string");
            Axis a{p.get<std::string>(), grid(require(axes[k], "values", ap), join(ap, "values"))};
            if (a.param == "gamma") task_sets_gamma = true;
            c.axes.push_back(std::move(a));
        }
        if (c.axes.size() == 2 && c.axes[0].param == c.axes[1].param) fail("axes", "both axes sweep the same parameter");
        break;
    }
    case Task::ConductanceScan:
        c.mu_grid = grid(require(doc, "mu", ""), "mu");
        c.step = number_or(doc, "step", c.step, "");
        if (!(c.step > 0.0)) fail("step", "must be positive");
        gammas("gammas", false);
        break;
    case Task::PowerCurve:
        c.dmu_grid = grid(require(doc, "dmu", ""), "dmu");
        c.mu = number_or(doc, "mu", 0.0, "");
        gammas("gammas", false);
        break;
    case Task::CoolingMap:
        if (jtype != "pair") fail("junction.type", "cooling-map needs a pair junction");
        c.eps_L_grid = grid(require(doc, "eps_L", ""), "eps_L");
        c.eps_R_grid = grid(require(doc, "eps_R", ""), "eps_R");
        gammas("gammas", true);
        break;
    case Task::CopCurve:
        c.gamma_grid = grid(require(doc, "gamma", ""), "gamma");
        task_sets_gamma = true;
        break;
    case Task::OracleCheck: {
        const json& m = require(doc, "modes", "");
        if (!m.is_array() || m.empty()) fail("modes", "expected a non-empty array of integers");
        for (std::size_t k = 0; k < m.size(); ++k) {
            c.modes.push_back(positive_int(m[k], join("modes", k), 2));
            if (k > 0 && c.modes[k] <= c.modes[k - 1]) fail(join("modes", k), "modes must be strictly increasing");
        }
        gammas("gammas", false);
        break;
    }
    }

    if (!task_sets_gamma && !c.junction.contains("gamma"))
        fail("junction.gamma", "missing required field (monitoring strength)");

    // Build every junction the run will touch along each axis so that bad
    // values fail here rather than mid-run.
    build_junction(c.junction, "junction");
    for (std::size_t k = 0; k < c.axes.size(); ++k)
        for (double v : c.axes[k].values)
            build_junction(with_param(c.junction, c.axes[k].param, v, join(join("axes", k), "param")),
                           join("axes", k));
    return c;
}

json to_json(const ScenarioConfig& c) {
    json d;
    d["task"] = task_name(c.task);
    if (!c.description.empty()) d["description"] = c.description;
    d["junction"] = c.junction;
    d["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                       {"abs_tol", c.quadrature.abs_tol},
                       {"max_subdivisions", c.quadrature.max_subdivisions}};
    switch (c.task) {
    case Task::Currents: break;
    case Task::Sweep:
        d["axes"] = json::array();
        for (const auto& a : c.axes) d["axes"].push_back({{"param", a.param}, {"values", a.values}});
        break;
    case Task::ConductanceScan:
        d["mu"] = c.mu_grid;
        d["step"] = c.step;
        if (!c.gammas.empty()) d["gammas"] = c.gammas;
        break;
    case Task::PowerCurve:
        d["dmu"] = c.dmu_grid;
        d["mu"] = c.mu;
        if (!c.gammas.empty()) d["gammas"] = c.gammas;
        break;
    case Task::CoolingMap:
        d["eps_L"] = c.eps_L_grid;
        d["eps_R"] = c.eps_R_grid;
        d["gammas"] = c.gammas;
        break;
    case Task::CopCurve: d["gamma"] = c.gamma_grid; break;
    case Task::OracleCheck:
        d["modes"] = c.modes;
        if (!c.gammas.empty()) d["gammas"] = c.gammas;
        break;
    }
    if (!c.output_path.empty() || c.json_mirror) {
        d["output"] = json::object();
        if (!c.output_path.empty()) d["output"]["path"] = c.output_path;
        d["output"]["json"] = c.json_mirror;
    }
    if (c.workers) d["workers"] = *c.workers;
    return d;
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line and column.
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < end; ++k) {
            if (text[k] == '\n') ++line, col = 1;
            else ++col;
        }
        std::string msg = e.what();
        if (auto p = msg.find("; last read"); p != std::string::npos) msg = msg.substr(p + 2);
        throw ConfigError("", fmt::format("{}:{}:{}: invalid JSON: {}", origin, line, col, msg));
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", fmt::format("cannot read config file '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : detail::embedded_presets()) out.push_back(name);
    return out;
}

json preset(const std::string& name) {
    for (const auto& [n, text] : detail::embedded_presets())
        if (n == name) return parse_json_text(text, "preset " + name);
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("preset", fmt::format("unknown preset '{}' (available: {})", name, known));
}

} // namespace mt::cli
