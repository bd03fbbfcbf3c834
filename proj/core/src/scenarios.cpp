#include "mtransport/scenarios.hpp"

namespace mt::scenarios {

namespace {

Reservoir filter_reservoir(double t_c, double delta, double eps_f, double mu, double T, int site) {
    Reservoir r;
    r.hyb.shape = LorentzianFilter{t_c, delta, eps_f};
    r.hyb.coupling_sites = {{site, {1.0, 0.0}}};
    r.mu = mu;
    r.T = T;
    return r;
}

} // namespace

SingleLevelModel single_level_model(const SingleLevelParams& p) {
    SingleLevelModel m;
    m.eps_d = p.eps_d;
    m.left = filter_reservoir(p.t_c, p.delta, p.eps_filter_L, p.mu_L, p.T_L, 0);
    m.right = filter_reservoir(p.t_c, p.delta, p.eps_filter_R, p.mu_R, p.T_R, 0);
    m.gamma = p.gamma;
    return m;
}

Junction single_level_junction(const SingleLevelParams& p) { return single_level_model(p).to_junction(); }

TwoSiteModel pair_model(const PairParams& p) {
    TwoSiteModel m;
    m.eps_L = p.eps_L;
    m.eps_R = p.eps_R;
    m.left = filter_reservoir(p.t_c, p.delta, p.eps_L, p.mu_L, p.T_L, 0);
    m.right = filter_reservoir(p.t_c, p.delta, p.eps_R, p.mu_R, p.T_R, 1);
    m.gamma = p.gamma;
    return m;
}

Junction pair_junction(const PairParams& p) { return pair_model(p).to_junction(); }

} // namespace mt::scenarios
