// currents.hpp: exact particle/heat currents and derived transport quantities
//
// Sign convention: J^zeta_r > 0 means flow *into* reservoir r. Heat currents
// (zeta = 1) are measured relative to mu_r.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mtransport/model.hpp"
#include "mtransport/numerics.hpp"
#include "mtransport/selfconsistent.hpp"

namespace mt {

struct TransportResult {
    // [reservoir][zeta]; heat entries are NaN when monitoring a wide-band junction (log-divergent)
    std::array<std::array<double, 2>, 2> elastic{};
    std::array<std::array<double, 2>, 2> inelastic{};
    std::array<std::array<double, 2>, 2> total{};
    CorrelationMatrix correlation;
    double transfer_error = 0.0;
    double current_error = 0.0;

    double J(Side s, int zeta) const { return total[index(s)][zeta]; }
    /// Particle current into the right reservoir.
    double through_current() const { return total[1][0]; }
    /// J^E_r = J^1_r + mu_r J^0_r.
    double energy_current(Side s, const Junction& j) const { return J(s, 1) + j.reservoir(s).mu * J(s, 0); }
    /// Energy injected by the monitor, -sum_r J^E_r. Diagnostic only.
    double measurement_work(const Junction& j) const {
        return -(energy_current(Side::Left, j) + energy_current(Side::Right, j));
    }
};

/// Scale used to normalise conservation residuals.
inline double conservation_tolerance(double current) { return 1e-9 * std::max(std::abs(current), 1e-3); }

double elastic_current(const Junction& j, Side r, int zeta, const QuadratureSpec& spec);
double inelastic_current(const Junction& j, const Mat& D, Side r, int zeta, const QuadratureSpec& spec);

/// Solves D and evaluates all four (r, zeta) currents in one quadrature pass.
TransportResult transport(const Junction& j, const QuadratureSpec& spec);

/// Copy of j with mu_L = mu - dmu/2 and mu_R = mu + dmu/2 (dmu = mu_R - mu_L).
Junction with_symmetric_bias(const Junction& j, double mu, double dmu);

/// G = dJ^0_R / d(mu_L - mu_R) at mu_L = mu_R = mu, by central difference with
/// one Richardson step.
double differential_conductance(const Junction& j, double mu, double step, const QuadratureSpec& spec);

struct PowerPoint {
    double dmu;      // mu_R - mu_L
    double current;  // J^0_R
    double power;    // dmu * J^0_R
    double power_linear;
};

struct PowerCurve {
    double mu = 0.0;
    double zero_bias_current = 0.0;
    double conductance = 0.0;
    std::vector<PowerPoint> points;
    double linear_max_power() const;
    double linear_stopping_voltage() const;
};

/// Exact P = dmu J^0 around the template's mean chemical potential, with the
/// linear-response parabola for comparison.
PowerCurve power_curve(const Junction& j, const std::vector<double>& dmu_grid, const QuadratureSpec& spec,
                       double conductance_step = 1e-4);

/// Root of J^0_R(dmu) on the side opposing the zero-bias current.
double stopping_voltage(const Junction& j, const QuadratureSpec& spec, double max_bias = 100.0);

using JunctionBuilder = std::function<Junction(double eps_L, double eps_R, double gamma)>;

struct CoolingMap {
    double gamma = 0.0;
    std::vector<double> eps_L;
    std::vector<double> eps_R;
    Eigen::MatrixXd heat_right; // J^1_R, rows eps_L, cols eps_R; NaN on failure
    int cooling_cells() const;
};

std::vector<CoolingMap> cooling_map(const JunctionBuilder& builder, const std::vector<double>& eps_L,
                                    const std::vector<double>& eps_R, const std::vector<double>& gammas,
                                    const QuadratureSpec& spec, int workers = 1);

/// |J^1_R / (J^1_R + J^1_L)|.
double cop_from_currents(double heat_right, double heat_left);
double cop(const Junction& j, const QuadratureSpec& spec);

/// Runs fn(0..count-1) over `workers` threads; exceptions are rethrown.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

} // namespace mt
