// common.hpp: small fixtures shared by the unit tests

#pragma once

#include <numbers>

#include "support.hpp"

namespace mt::testing {

inline Reservoir flat_reservoir(double gamma0, double mu, double T, bool wide = true, double W = 10.0) {
    Reservoir r;
    r.hyb.shape = FlatBand{gamma0, W, wide};
    r.mu = mu;
    r.T = T;
    return r;
}

inline SingleLevelModel flat_level(double eps_d, double gamma0, double gamma, double mu = 0.0, double T = 0.0) {
    SingleLevelModel m;
    m.eps_d = eps_d;
    m.left = flat_reservoir(gamma0, mu, T);
    m.right = flat_reservoir(gamma0, mu, T);
    m.gamma = gamma;
    return m;
}

// Real-symmetric junction: time-reversal invariant.
inline Junction real_junction(Rng& rng, int n, double gamma) {
    Junction j = random_junction(rng, n, gamma);
    j.h = j.h.real().cast<cplx>();
    j.O = j.O.real().cast<cplx>();
    for (auto* r : {&j.left, &j.right})
        for (auto& c : r->hyb.coupling_sites) c.weight = c.weight.real();
    return j;
}

inline QuadratureSpec quad(const Junction& j) { return junction_quadrature(j, {}); }

} // namespace mt::testing
