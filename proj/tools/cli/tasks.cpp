// tasks.cpp: per-task row layouts and evaluation

#include "tasks.hpp"

#include <cmath>
#include <limits>

namespace mt::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<Column>& transport_columns() {
    static const std::vector<Column> cols{
        {"J0_L", "t"},          {"J0_R", "t"},           {"J1_L", "t^2"},          {"J1_R", "t^2"},
        {"J0_R_elastic", "t"},  {"J0_R_inelastic", "t"}, {"J1_L_elastic", "t^2"},  {"J1_L_inelastic", "t^2"},
        {"J1_R_elastic", "t^2"}, {"J1_R_inelastic", "t^2"}, {"occupation", "1"},   {"W_meas", "t^2"},
        {"D_residual", "1"},    {"quadrature_error", "t"}};
    return cols;
}

Row transport_row(const Junction& j, const QuadratureSpec& base) {
    const auto tr = transport(j, junction_quadrature(j, base));
    return {tr.J(Side::Left, 0),
            tr.J(Side::Right, 0),
            tr.J(Side::Left, 1),
            tr.J(Side::Right, 1),
            tr.elastic[1][0],
            tr.inelastic[1][0],
            tr.elastic[0][1],
            tr.inelastic[0][1],
            tr.elastic[1][1],
            tr.inelastic[1][1],
            tr.correlation.D.trace().real(),
            tr.measurement_work(j),
            tr.correlation.residual,
            tr.current_error + tr.transfer_error};
}

// Gamma values a task iterates over: the explicit list or the junction's own.
std::vector<double> gamma_list(const ScenarioConfig& c) {
    return c.gammas.empty() ? std::vector<double>{build_junction(c.junction).gamma} : c.gammas;
}

Plan currents(const ScenarioConfig& c) {
    Plan p;
    p.value_columns = transport_columns();
    p.units.push_back({{Row{}}, [c] { return std::vector<Row>{transport_row(build_junction(c.junction), c.quadrature)}; }});
    return p;
}

Plan sweep(const ScenarioConfig& c) {
    Plan p;
    for (const auto& a : c.axes) p.key_columns.push_back({a.param, "t"});
    p.value_columns = transport_columns();
    auto add = [&](json desc, Row key) {
        p.units.push_back({{key}, [desc = std::move(desc), q = c.quadrature] {
                               return std::vector<Row>{transport_row(build_junction(desc), q)};
                           }});
    };
    const Axis& a0 = c.axes[0];
    for (double v0 : a0.values) {
        json d0 = with_param(c.junction, a0.param, v0);
        if (c.axes.size() == 1) {
            add(d0, {v0});
            continue;
        }
        for (double v1 : c.axes[1].values) add(with_param(d0, c.axes[1].param, v1), {v0, v1});
    }
    return p;
}

Plan conductance_scan(const ScenarioConfig& c) {
    Plan p;
    p.key_columns = {{"gamma", "t"}, {"mu", "t"}};
    p.value_columns = {{"G", "1"}};
    for (double g : gamma_list(c))
        for (double mu : c.mu_grid) {
            json desc = with_param(c.junction, "gamma", g);
            p.units.push_back({{{g, mu}}, [desc, mu, c] {
                                   const Junction j = build_junction(desc);
                                   const double G =
                                       differential_conductance(j, mu, c.step, junction_quadrature(j, c.quadrature));
                                   return std::vector<Row>{{G}};
                               }});
        }
    return p;
}

Plan power(const ScenarioConfig& c) {
    Plan p;
    p.key_columns = {{"gamma", "t"}, {"dmu", "t"}};
    p.value_columns = {{"J0_R", "t"},        {"P", "t^2"},           {"P_linear", "t^2"},
                       {"J0_zero_bias", "t"}, {"G", "1"},            {"dmu_stop", "t"},
                       {"dmu_stop_linear", "t"}, {"P_max_linear", "t^2"}};
    for (double g : gamma_list(c)) {
        json desc = with_param(with_param(c.junction, "gamma", g), "mu", c.mu);
        Unit u;
        for (double d : c.dmu_grid) u.keys.push_back({g, d});
        u.compute = [desc, c] {
            const Junction j = build_junction(desc);
            const auto spec = junction_quadrature(j, c.quadrature);
            const auto pc = power_curve(j, c.dmu_grid, spec);
            double stop = kNaN;
            // The stopping voltage only exists with a zero-bias current.
            if (std::abs(pc.zero_bias_current) > 1e-12) stop = stopping_voltage(j, spec);
            std::vector<Row> rows;
            for (const auto& pt : pc.points)
                rows.push_back({pt.current, pt.power, pt.power_linear, pc.zero_bias_current, pc.conductance, stop,
                                pc.linear_stopping_voltage(), pc.linear_max_power()});
            return rows;
        };
        p.units.push_back(std::move(u));
    }
    return p;
}

Plan cooling(const ScenarioConfig& c) {
    Plan p;
    p.key_columns = {{"gamma", "t"}, {"eps_L", "t"}, {"eps_R", "t"}};
    p.value_columns = {{"J1_R", "t^2"}, {"J1_L", "t^2"}, {"cooling", "1"}};
    for (double g : c.gammas)
        for (double el : c.eps_L_grid)
            for (double er : c.eps_R_grid) {
                json desc = with_param(with_param(with_param(c.junction, "gamma", g), "eps_L", el), "eps_R", er);
                p.units.push_back({{{g, el, er}}, [desc, q = c.quadrature] {
                                       const Junction j = build_junction(desc);
                                       const auto tr = transport(j, junction_quadrature(j, q));
                                       const double h = tr.J(Side::Right, 1);
                                       return std::vector<Row>{{h, tr.J(Side::Left, 1), h < 0.0 ? 1.0 : 0.0}};
                                   }});
            }
    return p;
}

Plan cop_curve(const ScenarioConfig& c) {
    Plan p;
    p.key_columns = {{"gamma", "t"}};
    p.value_columns = {{"J1_L", "t^2"}, {"J1_R", "t^2"}, {"COP", "1"}};
    for (double g : c.gamma_grid) {
        json desc = with_param(c.junction, "gamma", g);
        p.units.push_back({{{g}}, [desc, q = c.quadrature] {
                               const Junction j = build_junction(desc);
                               const auto tr = transport(j, junction_quadrature(j, q));
                               const double l = tr.J(Side::Left, 1), r = tr.J(Side::Right, 1);
                               return std::vector<Row>{{l, r, cop_from_currents(r, l)}};
                           }});
    }
    return p;
}

Plan oracle_check(const ScenarioConfig& c) {
    Plan p;
    p.key_columns = {{"gamma", "t"}, {"M", "1"}};
    p.value_columns = {{"J0_R_oracle", "t"},  {"J1_R_oracle", "t^2"}, {"J0_R_exact", "t"},
                       {"J1_R_exact", "t^2"}, {"rel_err_J0", "1"},    {"J0_R_extrapolated", "t"},
                       {"rel_err_extrapolated", "1"}, {"kappa", "t"}};
    for (double g : gamma_list(c)) {
        json desc = with_param(c.junction, "gamma", g);
        Unit u;
        for (int m : c.modes) u.keys.push_back({g, static_cast<double>(m)});
        u.compute = [desc, c] {
            const Junction j = build_junction(desc);
            const auto exact = transport(j, junction_quadrature(j, c.quadrature));
            const double j0 = exact.J(Side::Right, 0);
            std::vector<Row> rows;
            double prev = kNaN;
            int prev_m = 0;
            for (int m : c.modes) {
                const auto dj = discretize(j, m);
                const auto oc = oracle_currents(dj, steady_state(dj));
                const double o0 = oc.J[1][0];
                // The discretization error is first order in 1/M.
                const double ex = prev_m * 2 == m ? 2.0 * o0 - prev : kNaN;
                rows.push_back({o0, oc.J[1][1], j0, exact.J(Side::Right, 1), std::abs(o0 - j0) / std::abs(j0), ex,
                                std::abs(ex - j0) / std::abs(j0), dj.kappa});
                prev = o0;
                prev_m = m;
            }
            return rows;
        };
        p.units.push_back(std::move(u));
    }
    return p;
}

} // namespace

Plan make_plan(const ScenarioConfig& c) {
    switch (c.task) {
    case Task::Currents: return currents(c);
    case Task::Sweep: return sweep(c);
    case Task::ConductanceScan: return conductance_scan(c);
    case Task::PowerCurve: return power(c);
    case Task::CoolingMap: return cooling(c);
    case Task::CopCurve: return cop_curve(c);
    case Task::OracleCheck: return oracle_check(c);
    }
    throw ConfigError("task", "unsupported task");
}

} // namespace mt::cli
