// oracle.hpp: brute-force check with finite "mesoscopic" leads
//
// Each continuum reservoir is replaced by M star-coupled modes. Every mode is
// kept thermal by local gain kappa f_r(eps_k) and loss kappa (1 - f_r(eps_k)),
// and the stationary single-particle correlation matrix C_ab = <a_b^dag a_a>
// of system + modes solves
//
//     0 = -i[H, C] - gamma [O, [O, C]] - {K, C}/2 + K_in,
//
// with K = kappa on lead modes and K_in = kappa f on lead modes. A mode with
// decay rate kappa is a Lorentzian of half-width kappa/2 in frequency.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mtransport/model.hpp"

namespace mt {

struct LeadModes {
    std::vector<int> index;       // rows of the full matrices
    std::vector<double> energy;   // eps_{r,k}
    std::vector<double> coupling; // t_{r,k} >= 0
    Vec site_vector;              // v_r on the system
    double mu = 0.0;
    double T = 0.0;
};

struct DiscretizedJunction {
    int n_sys = 0;
    Mat H;                       // (n + 2M) x (n + 2M)
    Mat O;                       // monitor, zero on lead modes
    Eigen::VectorXd decay;       // kappa on lead modes, 0 on the system
    Eigen::VectorXd inflow;      // kappa f_r(eps_k) on lead modes
    double gamma = 0.0;
    double kappa = 0.0;
    double spacing = 0.0;
    std::pair<double, double> band{0.0, 0.0};
    LeadModes leads[2];

    int dim() const { return static_cast<int>(H.rows()); }
    const LeadModes& lead(Side s) const { return leads[index(s)]; }
};

struct DiscretizeOptions {
    /// Lead band; auto-sized from resonances and thermal windows when empty.
    std::optional<std::pair<double, double>> band;
    /// Mode decay rate; defaults to 2 x spacing.
    std::optional<double> kappa;
    /// Band margin around resonances, in units of the widest resonance width.
    double margin_widths = 10.0;
    /// Sample Lorentzian filters with their width reduced by kappa/2 so that the
    /// mode broadening restores the target Gamma (Lorentzian widths add).
    bool compensate_broadening = true;
};

DiscretizedJunction discretize(const Junction& j, int M, const DiscretizeOptions& opts = {});

/// pi sum_k t_k^2 L_{kappa/2}(w - eps_k): the hybridization the modes produce.
double reconstructed_hybridization(const DiscretizedJunction& dj, Side s, double omega);

enum class SteadyStateMethod { Auto, Dense, Schur };

struct SteadyState {
    Mat C;
    double residual = 0.0; // max-abs of the stationary equation
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
};

/// Dense solves flatten to a dim^2 linear system and are limited to small
/// dimensions. The Schur route solves A C + C A^dag = Q with
/// A = iH + gamma O^2 + K/2 by Bartels-Stewart and resolves the gamma O C O
/// feedback on the system block through an n^2 x n^2 system.
SteadyState steady_state(const DiscretizedJunction& dj, SteadyStateMethod method = SteadyStateMethod::Auto);

struct OracleCurrents {
    double J[2][2] = {{0, 0}, {0, 0}};         // [reservoir][zeta], from tunneling amplitudes
    double J_bath[2][2] = {{0, 0}, {0, 0}};    // same, from the gain/loss balance of each mode
    double bath_balance = 0.0;                 // sum over all modes of gain - loss
    double channel_mismatch = 0.0;
};

inline constexpr double kOracleChannelTol = 1e-8;

OracleCurrents oracle_currents(const DiscretizedJunction& dj, const SteadyState& ss);

} // namespace mt
