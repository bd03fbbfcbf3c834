// support.hpp: random junctions and an independent Landauer evaluator for tests

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mtransport/mtransport.hpp"

namespace mt::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Reservoir lorentzian_reservoir(double t_c, double delta, double eps_f, double mu, double T,
                                      std::vector<CouplingSite> sites = {{0, {1.0, 0.0}}}) {
    Reservoir r;
    r.hyb.shape = LorentzianFilter{t_c, delta, eps_f};
    r.hyb.coupling_sites = std::move(sites);
    r.mu = mu;
    r.T = T;
    return r;
}

// Biases stay within |dmu|, |dT| <= 1.
inline Reservoir random_filter(Rng& rng, double mu, double T, int site = 0) {
    return lorentzian_reservoir(uniform(rng, 0.5, 1.5), uniform(rng, 0.2, 1.2), uniform(rng, -3.0, 3.0), mu, T,
                                {{site, {1.0, 0.0}}});
}

inline SingleLevelModel random_single_level(Rng& rng) {
    SingleLevelModel m;
    m.eps_d = uniform(rng, -2.0, 2.0);
    m.left = random_filter(rng, uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0));
    m.right = random_filter(rng, uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0));
    m.gamma = uniform(rng, 0.1, 5.0);
    return m;
}

inline TwoSiteModel random_two_site(Rng& rng) {
    TwoSiteModel m;
    m.eps_L = uniform(rng, -3.0, 3.0);
    m.eps_R = uniform(rng, -3.0, 3.0);
    m.left = random_filter(rng, uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0));
    m.right = random_filter(rng, uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0));
    m.gamma = uniform(rng, 0.1, 5.0);
    return m;
}

inline Mat random_hermitian(Rng& rng, int n, double scale) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a(i, k) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    return scale * 0.5 * (a + a.adjoint());
}

// Multi-site chain with random hoppings, a random Hermitian monitor and
// filters attached through random complex weights on several sites.
inline Junction random_junction(Rng& rng, int n, double gamma) {
    Junction j;
    j.h = random_hermitian(rng, n, 1.0);
    j.O = random_hermitian(rng, n, 1.0);
    auto sites = [&](int first) {
        std::vector<CouplingSite> s{{first, {1.0, 0.0}}};
        if (n > 1) s.push_back({(first + 1) % n, cplx(uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5))});
        return s;
    };
    j.left = lorentzian_reservoir(uniform(rng, 0.5, 1.5), uniform(rng, 0.2, 1.2), uniform(rng, -3, 3),
                                  uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0), sites(0));
    j.right = lorentzian_reservoir(uniform(rng, 0.5, 1.5), uniform(rng, 0.2, 1.2), uniform(rng, -3, 3),
                                   uniform(rng, -0.5, 0.5), uniform(rng, 0.0, 1.0), sites(n - 1));
    j.gamma = gamma;
    return j;
}

inline bool close(double a, double b, double rel, double abs) {
    return std::abs(a - b) <= std::max(rel * std::abs(b), abs);
}

// Landauer currents computed from scratch: filter kernels, embedding and the
// resolvent are rebuilt here and integrated with Boost's Gauss-Kronrod rule.
struct LandauerCurrents {
    double J[2][2] = {{0, 0}, {0, 0}};
};

namespace detail {

inline std::complex<double> filter_kernel(const Reservoir& r, double w) {
    const auto& f = std::get<LorentzianFilter>(r.hyb.shape);
    return f.t_c * f.t_c / std::complex<double>(w - f.eps_f, f.delta);
}

inline Eigen::VectorXcd embedding(const Reservoir& r, int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (const auto& c : r.hyb.coupling_sites) v(c.site) += c.weight;
    return v;
}

inline double occupation(double w, double mu, double T) {
    if (T == 0.0) return w < mu ? 1.0 : (w > mu ? 0.0 : 0.5);
    return 0.5 * (1.0 - std::tanh((w - mu) / (2.0 * T)));
}

} // namespace detail

inline LandauerCurrents landauer(const Junction& j) {
    const int n = j.n_sites();
    const Eigen::VectorXcd vl = detail::embedding(j.left, n), vr = detail::embedding(j.right, n);
    auto trans = [&](double w) {
        const auto sl = detail::filter_kernel(j.left, w), sr = detail::filter_kernel(j.right, w);
        Eigen::MatrixXcd m = -j.h - sl * vl * vl.adjoint() - sr * vr * vr.adjoint();
        m.diagonal().array() += w;
        const Eigen::MatrixXcd g = m.inverse();
        const Eigen::MatrixXcd gl = -sl.imag() * vl * vl.adjoint(), gr = -sr.imag() * vr * vr.adjoint();
        return (gr * g * gl * g.adjoint()).trace().real();
    };
    const double mu_lo = std::min(j.left.mu, j.right.mu), mu_hi = std::max(j.left.mu, j.right.mu);
    const double tmax = std::max(j.left.T, j.right.T);
    std::vector<double> pts{mu_lo - 40.0 * tmax, mu_hi + 40.0 * tmax, j.left.mu, j.right.mu};
    for (const auto* r : {&j.left, &j.right}) pts.push_back(std::get<LorentzianFilter>(r->hyb.shape).eps_f);
    std::sort(pts.begin(), pts.end());
    const double lo = pts.front(), hi = pts.back();

    LandauerCurrents out;
    if (hi <= lo) return out;
    for (int s = 0; s < 2; ++s) {
        const Reservoir& self = s == 0 ? j.left : j.right;
        const Reservoir& opp = s == 0 ? j.right : j.left;
        for (int zeta = 0; zeta < 2; ++zeta) {
            auto f = [&](double w) {
                const double df = detail::occupation(w, opp.mu, opp.T) - detail::occupation(w, self.mu, self.T);
                if (df == 0.0) return 0.0;
                return (zeta ? w - self.mu : 1.0) * df * trans(w);
            };
            double total = 0.0;
            for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
                if (pts[k + 1] <= pts[k]) continue;
                total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, pts[k], pts[k + 1], 15,
                                                                                        1e-12);
            }
            out.J[s][zeta] = 2.0 / std::numbers::pi * total;
        }
    }
    return out;
}

} // namespace mt::testing
