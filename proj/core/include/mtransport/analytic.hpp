// analytic.hpp: closed forms for the monitored single level and the
// cross-correlation-monitored pair of levels.
//
// Double frequency integrals are factorised into products of single ones.
// The coupling_sites of the reservoirs are ignored here: each reservoir is a
// scalar self-energy acting on its own level.

#pragma once

#include "mtransport/model.hpp"
#include "mtransport/numerics.hpp"

namespace mt {

/// Level eps_d, occupation monitored (O = n), coupled to both reservoirs.
struct SingleLevelModel {
    double eps_d = 0.0;
    Reservoir left;
    Reservoir right;
    double gamma = 0.0;

    /// A(w) = (1/pi) (Gamma_L + Gamma_R + gamma) / |w - eps_d - Sigma_L - Sigma_R + i gamma|^2.
    double spectral(double omega) const;
    /// P_r(w) = Gamma_r / (Gamma_L + Gamma_R + gamma).
    double partition(Side s, double omega) const;
    /// The same physics expressed as a general junction.
    Junction to_junction() const;
};

/// Two uncoupled levels, left level on the left reservoir and right level on
/// the right one, monitored through O = d_L^dag d_R + d_R^dag d_L.
struct TwoSiteModel {
    double eps_L = 0.0;
    double eps_R = 0.0;
    Reservoir left;
    Reservoir right;
    double gamma = 0.0;

    /// A_r(w) = (1/pi) (Gamma_r + gamma) / |w - eps_r - Sigma_r + i gamma|^2.
    double spectral(Side s, double omega) const;
    /// P_r(w) = Gamma_r / (Gamma_r + gamma).
    double partition(Side s, double omega) const;
    Junction to_junction() const;
};

double single_level_occupation(const SingleLevelModel& m, const QuadratureSpec& spec);

struct CurrentParts {
    double elastic = 0.0;
    double inelastic = 0.0;
    double total = 0.0;
};

/// Particle current J^0 = J^0_R = -J^0_L through the monitored level.
CurrentParts single_level_current(const SingleLevelModel& m, const QuadratureSpec& spec);

struct TwoSiteOccupations {
    double left = 0.0;
    double right = 0.0;
    double denominator = 0.0; // N = p_L + p_R - p_L p_R
};

inline constexpr double kMinDenominator = 1e-14;

TwoSiteOccupations two_site_occupations(const TwoSiteModel& m, const QuadratureSpec& spec);

/// Heat current into the right reservoir (only the inelastic channel exists).
double two_site_heat_current(const TwoSiteModel& m, const QuadratureSpec& spec);

/// Leading order in gamma: 2 gamma int (w - mu_R) A_R [<n_L> - f_R] with P_r -> 1.
double two_site_small_gamma(const TwoSiteModel& m, const QuadratureSpec& spec);

/// Narrow-resonance limit 2 gamma (eps_R - mu_R) (<n_L> - <n_R>), using
/// occupations from the full model.
double two_site_delta_limit(const TwoSiteModel& m, const QuadratureSpec& spec);

} // namespace mt
