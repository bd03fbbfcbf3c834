// scenarios.hpp: junctions used by the presets and tests

#pragma once

#include "mtransport/analytic.hpp"
#include "mtransport/model.hpp"

namespace mt::scenarios {

// Monitored level between two Lorentzian energy filters.
inline constexpr double kFilterEnergy = 1.48; // right filter; left sits at -kFilterEnergy
inline constexpr double kFilterWidth = 0.55;

// Cross-monitored pair with filters aligned to the levels.
inline constexpr double kPairFilterWidth = 0.5;
inline constexpr double kPairEpsL = 10.0;
inline constexpr double kPairEpsR = 3.0;

struct SingleLevelParams {
    double eps_d = 0.0;
    double eps_filter_L = -kFilterEnergy;
    double eps_filter_R = kFilterEnergy;
    double delta = kFilterWidth;
    double t_c = 1.0;
    double gamma = 1.0;
    double mu_L = 0.0, mu_R = 0.0;
    double T_L = 0.0, T_R = 0.0;
};

SingleLevelModel single_level_model(const SingleLevelParams& p);
Junction single_level_junction(const SingleLevelParams& p);

struct PairParams {
    double eps_L = kPairEpsL;
    double eps_R = kPairEpsR;
    double delta = kPairFilterWidth;
    double t_c = 1.0;
    double gamma = 0.1;
    double mu_L = 0.0, mu_R = 0.0;
    double T_L = 1.0, T_R = 1.0;
};

TwoSiteModel pair_model(const PairParams& p);
Junction pair_junction(const PairParams& p);

} // namespace mt::scenarios
