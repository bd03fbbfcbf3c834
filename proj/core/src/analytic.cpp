// analytic.cpp: factorised closed forms for the two worked models

#include "mtransport/analytic.hpp"

#include <cmath>
#include <numbers>

#include "mtransport/errors.hpp"
#include "mtransport/greens.hpp"

namespace mt {

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

double gamma_of(const Reservoir& r, double w) { return hybridization_value(r.hyb.shape, w); }

Reservoir on_site(Reservoir r, int site) {
    r.hyb.coupling_sites = {{site, {1.0, 0.0}}};
    return r;
}

void check_model(double gamma, const Reservoir& l, const Reservoir& r) {
    if (!(gamma >= 0.0)) throw InvalidParameterError("negative monitoring strength");
    for (const auto* res : {&l, &r}) {
        const auto rep = validate(on_site(*res, 0), 1, res == &l ? "left" : "right");
        if (!rep.ok()) throw InvalidParameterError(rep.summary());
    }
}

// Integrates a small vector of real integrands with the breakpoints of the
// equivalent junction.
Eigen::VectorXd integrate_vector(const Junction& j, int count, const std::function<void(double, double*)>& f,
                                 const QuadratureSpec& spec) {
    auto res = integrate_matrix(
        [&](double w) {
            std::vector<double> buf(count, 0.0);
            f(w, buf.data());
            Mat m(count, 1);
            for (int k = 0; k < count; ++k) m(k, 0) = buf[k];
            return m;
        },
        junction_quadrature(j, spec));
    return res.value.col(0).real();
}

} // namespace

double SingleLevelModel::spectral(double w) const {
    const cplx den = w - eps_d - retarded_kernel(left.hyb.shape, w) - retarded_kernel(right.hyb.shape, w) +
                     cplx(0.0, gamma);
    return kInvPi * (gamma_of(left, w) + gamma_of(right, w) + gamma) / std::norm(den);
}

double SingleLevelModel::partition(Side s, double w) const {
    const double gl = gamma_of(left, w), gr = gamma_of(right, w);
    const double tot = gl + gr + gamma;
    if (tot == 0.0) return 0.0;
    return (s == Side::Left ? gl : gr) / tot;
}

Junction SingleLevelModel::to_junction() const {
    Junction j;
    j.h = Mat::Constant(1, 1, eps_d);
    j.O = Mat::Identity(1, 1);
    j.left = on_site(left, 0);
    j.right = on_site(right, 0);
    j.gamma = gamma;
    return j;
}

double TwoSiteModel::spectral(Side s, double w) const {
    const Reservoir& r = s == Side::Left ? left : right;
    const double e = s == Side::Left ? eps_L : eps_R;
    const cplx den = w - e - retarded_kernel(r.hyb.shape, w) + cplx(0.0, gamma);
    return kInvPi * (gamma_of(r, w) + gamma) / std::norm(den);
}

double TwoSiteModel::partition(Side s, double w) const {
    const double g = gamma_of(s == Side::Left ? left : right, w);
    return g + gamma == 0.0 ? 0.0 : g / (g + gamma);
}

Junction TwoSiteModel::to_junction() const {
    Junction j;
    j.h = Mat::Zero(2, 2);
    j.h(0, 0) = eps_L;
    j.h(1, 1) = eps_R;
    j.O = Mat::Zero(2, 2);
    j.O(0, 1) = 1.0;
    j.O(1, 0) = 1.0;
    j.left = on_site(left, 0);
    j.right = on_site(right, 1);
    j.gamma = gamma;
    return j;
}

namespace {

// For the single level: [A P_L f_L, A P_R f_R, A P_L, A P_R, elastic kernel].
Eigen::VectorXd single_level_integrals(const SingleLevelModel& m, const QuadratureSpec& spec) {
    check_model(m.gamma, m.left, m.right);
    return integrate_vector(
        m.to_junction(), 5,
        [&m](double w, double* out) {
            const cplx den = w - m.eps_d - retarded_kernel(m.left.hyb.shape, w) -
                             retarded_kernel(m.right.hyb.shape, w) + cplx(0.0, m.gamma);
            const double g2 = kInvPi / std::norm(den); // A / (Gamma_L + Gamma_R + gamma)
            const double gl = gamma_of(m.left, w), gr = gamma_of(m.right, w);
            const double fl = fermi(w, m.left.mu, m.left.T), fr = fermi(w, m.right.mu, m.right.T);
            out[0] = g2 * gl * fl;
            out[1] = g2 * gr * fr;
            out[2] = g2 * gl;
            out[3] = g2 * gr;
            out[4] = 2.0 * g2 * gl * gr * (fl - fr);
        },
        spec);
}

// For the pair: [a_L, a_R, p_L, p_R, e_R, g_R] with a_r = int A_r P_r f_r,
// p_r = int A_r P_r, e_R = int (w - mu_R) A_R P_R, g_R = int (w - mu_R) A_R P_R f_R.
Eigen::VectorXd two_site_integrals(const TwoSiteModel& m, const QuadratureSpec& spec) {
    check_model(m.gamma, m.left, m.right);
    return integrate_vector(
        m.to_junction(), 6,
        [&m](double w, double* out) {
            const cplx dl = w - m.eps_L - retarded_kernel(m.left.hyb.shape, w) + cplx(0.0, m.gamma);
            const cplx dr = w - m.eps_R - retarded_kernel(m.right.hyb.shape, w) + cplx(0.0, m.gamma);
            const double apl = kInvPi * gamma_of(m.left, w) / std::norm(dl);
            const double apr = kInvPi * gamma_of(m.right, w) / std::norm(dr);
            const double fl = fermi(w, m.left.mu, m.left.T), fr = fermi(w, m.right.mu, m.right.T);
            const double x = w - m.right.mu;
            out[0] = apl * fl;
            out[1] = apr * fr;
            out[2] = apl;
            out[3] = apr;
            out[4] = x * apr;
            out[5] = x * apr * fr;
        },
        spec);
}

} // namespace

double single_level_occupation(const SingleLevelModel& m, const QuadratureSpec& spec) {
    const auto I = single_level_integrals(m, spec);
    const double den = I(2) + I(3);
    if (!(den > kMinDenominator)) throw DegenerateDenominatorError("single level decoupled from both reservoirs");
    return (I(0) + I(1)) / den;
}

CurrentParts single_level_current(const SingleLevelModel& m, const QuadratureSpec& spec) {
    const auto I = single_level_integrals(m, spec);
    const double den = I(2) + I(3);
    if (!(den > kMinDenominator)) throw DegenerateDenominatorError("single level decoupled from both reservoirs");
    CurrentParts c;
    c.elastic = I(4);
    c.inelastic = 2.0 * m.gamma / den * (I(0) * I(3) - I(2) * I(1));
    c.total = c.elastic + c.inelastic;
    return c;
}

namespace {

TwoSiteOccupations occupations_from(const Eigen::VectorXd& I) {
    const double aL = I(0), aR = I(1), pL = I(2), pR = I(3);
    TwoSiteOccupations o;
    o.denominator = pL + pR - pL * pR;
    if (!(std::abs(o.denominator) >= kMinDenominator))
        throw DegenerateDenominatorError("two-site occupation denominator vanishes");
    o.left = (aL + (1.0 - pL) * aR) / o.denominator;
    o.right = (aR + (1.0 - pR) * aL) / o.denominator;
    return o;
}

} // namespace

TwoSiteOccupations two_site_occupations(const TwoSiteModel& m, const QuadratureSpec& spec) {
    return occupations_from(two_site_integrals(m, spec));
}

double two_site_heat_current(const TwoSiteModel& m, const QuadratureSpec& spec) {
    const auto I = two_site_integrals(m, spec);
    const auto occ = occupations_from(I);
    const double aL = I(0), aR = I(1), pL = I(2), pR = I(3), eR = I(4), gR = I(5);
    return 2.0 * m.gamma / occ.denominator * (eR * aL - gR * pL + (1.0 - pL) * (eR * aR - gR * pR));
}

double two_site_small_gamma(const TwoSiteModel& m, const QuadratureSpec& spec) {
    const auto I = two_site_integrals(m, spec);
    const double nL = I(0);
    return 2.0 * m.gamma * (I(4) * nL - I(5));
}

double two_site_delta_limit(const TwoSiteModel& m, const QuadratureSpec& spec) {
    const auto occ = two_site_occupations(m, spec);
    return 2.0 * m.gamma * (m.eps_R - m.right.mu) * (occ.left - occ.right);
}

} // namespace mt
