// model.cpp: reservoir kernels, validation and frequency features

#include "mtransport/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mtransport/errors.hpp"

namespace mt {

double fermi(double omega, double mu, double T) {
    if (T < 0.0 || std::isnan(T)) throw InvalidParameterError("fermi: negative temperature");
    const double e = omega - mu;
    if (T == 0.0) {
        if (e < 0.0) return 1.0;
        if (e > 0.0) return 0.0;
        return 0.5;
    }
    const double x = e / T;
    if (x > 0.0) {
        const double ex = std::exp(-x);
        return ex / (1.0 + ex);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double thermal_factor(double omega, double mu, double T) {
    if (T < 0.0 || std::isnan(T)) throw InvalidParameterError("thermal_factor: negative temperature");
    const double e = omega - mu;
    if (T == 0.0) return e > 0.0 ? 1.0 : (e < 0.0 ? -1.0 : 0.0);
    return std::tanh(e / (2.0 * T));
}

namespace {

struct ValueVisitor {
    double omega;
    double operator()(const LorentzianFilter& f) const {
        const double d = omega - f.eps_f;
        return f.t_c * f.t_c * f.delta / (d * d + f.delta * f.delta);
    }
    double operator()(const FlatBand& f) const {
        return f.wide_band || std::abs(omega) <= f.half_bandwidth ? f.gamma0 : 0.0;
    }
    double operator()(const Tabulated& t) const {
        const auto& g = t.grid;
        if (g.empty() || omega < g.front() || omega > g.back()) return 0.0;
        auto it = std::upper_bound(g.begin(), g.end(), omega);
        if (it == g.end()) return t.values.back();
        const auto k = static_cast<std::size_t>(it - g.begin());
        if (k == 0) return t.values.front();
        const double a = g[k - 1], b = g[k];
        const double w = (omega - a) / (b - a);
        return (1.0 - w) * t.values[k - 1] + w * t.values[k];
    }
};

// |x| floored so that log terms stay finite exactly at band edges/grid points.
double safe_abs(double x) { return std::max(std::abs(x), 1e-300); }

struct KernelVisitor {
    double omega;
    cplx operator()(const LorentzianFilter& f) const {
        return f.t_c * f.t_c / cplx(omega - f.eps_f, f.delta);
    }
    cplx operator()(const FlatBand& f) const {
        if (f.wide_band) return {0.0, -f.gamma0};
        const double im = std::abs(omega) <= f.half_bandwidth ? -f.gamma0 : 0.0;
        const double W = f.half_bandwidth;
        const double re = f.gamma0 / std::numbers::pi * std::log(safe_abs(omega + W) / safe_abs(omega - W));
        return {re, im};
    }
    cplx operator()(const Tabulated& t) const {
        // Principal value of (1/pi) int Gamma(e) / (w - e) de for a piecewise
        // linear Gamma: per segment g(w) ln|(w-a)/(w-b)| - s (b - a).
        double re = 0.0;
        for (std::size_t k = 0; k + 1 < t.grid.size(); ++k) {
            const double a = t.grid[k], b = t.grid[k + 1];
            const double s = (t.values[k + 1] - t.values[k]) / (b - a);
            const double g = t.values[k] + s * (omega - a);
            re += g * std::log(safe_abs(omega - a) / safe_abs(omega - b)) - s * (b - a);
        }
        re /= std::numbers::pi;
        return {re, -ValueVisitor{omega}(t)};
    }
};

} // namespace

double hybridization_value(const HybridizationShape& shape, double omega) {
    return std::visit(ValueVisitor{omega}, shape);
}

cplx retarded_kernel(const HybridizationShape& shape, double omega) {
    return std::visit(KernelVisitor{omega}, shape);
}

Vec coupling_vector(const HybridizationModel& hyb, int n_sites) {
    Vec v = Vec::Zero(n_sites);
    for (const auto& cs : hyb.coupling_sites) {
        if (cs.site < 0 || cs.site >= n_sites)
            throw InvalidParameterError("coupling site " + std::to_string(cs.site) + " outside system");
        v(cs.site) += cs.weight;
    }
    return v;
}

double gamma_from_bosonic_bath(double tau, double mu_B, double T_B) {
    if (!(tau >= 0.0)) throw InvalidParameterError("bosonic bath: coupling must be non-negative");
    if (mu_B == 0.0 || std::isnan(mu_B)) throw InvalidParameterError("bosonic bath: chemical potential must be nonzero");
    if (!(T_B > 0.0)) throw InvalidParameterError("bosonic bath: temperature must be positive");
    const double x = std::abs(mu_B) / (2.0 * T_B);
    return std::numbers::pi * tau * tau / std::tanh(x);
}

std::string ValidationReport::summary() const {
    if (issues.empty()) return "ok";
    std::ostringstream os;
    for (std::size_t k = 0; k < issues.size(); ++k) {
        if (k) os << "; ";
        os << issues[k].message;
        if (issues[k].row >= 0) os << " at (" << issues[k].row << "," << issues[k].col << ")";
    }
    return os.str();
}

namespace {

void check_hermitian(const Mat& m, const std::string& what, ValidationReport& rep) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermiticityTol) {
                rep.issues.push_back({"non_hermitian", what + " is not Hermitian", static_cast<int>(i),
                                      static_cast<int>(j)});
            }
        }
    }
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

ValidationReport validate(const Reservoir& r, int n_sites, const std::string& label) {
    ValidationReport rep;
    auto add = [&](std::string code, std::string msg) { rep.issues.push_back({std::move(code), label + ": " + msg}); };
    if (!(r.T >= 0.0) || !finite(r.T)) add("negative_temperature", "negative or non-finite temperature");
    if (!finite(r.mu)) add("bad_mu", "non-finite chemical potential");
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LorentzianFilter>) {
                if (!(s.t_c > 0.0)) add("bad_filter", "filter coupling t_c must be positive");
                if (!(s.delta > 0.0)) add("bad_filter", "filter width delta must be positive");
                if (!finite(s.eps_f)) add("bad_filter", "filter energy must be finite");
            } else if constexpr (std::is_same_v<S, FlatBand>) {
                if (!(s.gamma0 >= 0.0) || !finite(s.gamma0)) add("bad_band", "gamma0 must be non-negative");
                if (!(s.half_bandwidth > 0.0) || !finite(s.half_bandwidth))
                    add("bad_band", "half_bandwidth must be positive");
            } else {
                if (s.grid.size() < 2) add("bad_table", "tabulated grid needs at least two points");
                if (s.grid.size() != s.values.size()) add("bad_table", "grid and values differ in length");
                for (std::size_t k = 0; k + 1 < s.grid.size(); ++k)
                    if (!(s.grid[k + 1] > s.grid[k])) {
                        add("bad_table", "tabulated grid not strictly ascending");
                        break;
                    }
                for (double v : s.values)
                    if (!(v >= 0.0) || !finite(v)) {
                        add("bad_table", "tabulated Gamma must be non-negative");
                        break;
                    }
            }
        },
        r.hyb.shape);
    if (r.hyb.coupling_sites.empty()) add("no_coupling", "no coupling sites");
    for (const auto& cs : r.hyb.coupling_sites)
        if (cs.site < 0 || cs.site >= n_sites)
            add("bad_coupling_site", "coupling site " + std::to_string(cs.site) + " outside system");
    return rep;
}

ValidationReport validate(const Junction& j) {
    ValidationReport rep;
    const auto n = j.h.rows();
    if (n < 1) rep.issues.push_back({"empty", "system must have at least one site"});
    if (j.h.rows() != j.h.cols()) rep.issues.push_back({"shape", "h is not square"});
    if (j.O.rows() != n || j.O.cols() != n)
        rep.issues.push_back({"dimension_mismatch", "monitor operator dimension does not match h"});
    if (j.h.rows() == j.h.cols()) check_hermitian(j.h, "h", rep);
    if (j.O.rows() == j.O.cols()) check_hermitian(j.O, "O", rep);
    if (!finite(j.gamma)) rep.issues.push_back({"bad_gamma", "non-finite monitoring strength"});
    else if (j.gamma < 0.0) rep.issues.push_back({"negative_gamma", "negative monitoring strength"});
    for (Side s : {Side::Left, Side::Right}) {
        auto sub = validate(j.reservoir(s), static_cast<int>(n), s == Side::Left ? "left" : "right");
        rep.issues.insert(rep.issues.end(), sub.issues.begin(), sub.issues.end());
    }
    return rep;
}

void require_valid(const Junction& j) {
    const auto rep = validate(j);
    if (!rep.ok()) throw InvalidParameterError("invalid junction: " + rep.summary());
}

bool has_wide_band(const Junction& j) {
    for (Side s : {Side::Left, Side::Right}) {
        const auto* fb = std::get_if<FlatBand>(&j.reservoir(s).hyb.shape);
        if (fb && fb->wide_band) return true;
    }
    return false;
}

FrequencyFeatures frequency_features(const Junction& j) {
    FrequencyFeatures ff;
    double scale = 1.0;
    if (j.h.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Mat> es(j.h, Eigen::EigenvaluesOnly);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            ff.breakpoints.push_back(es.eigenvalues()(k));
            scale = std::max(scale, std::abs(es.eigenvalues()(k)));
        }
    }
    for (Side s : {Side::Left, Side::Right}) {
        const auto& r = j.reservoir(s);
        ff.breakpoints.push_back(r.mu);
        std::visit(
            [&](const auto& sh) {
                using S = std::decay_t<decltype(sh)>;
                if constexpr (std::is_same_v<S, LorentzianFilter>) {
                    ff.breakpoints.push_back(sh.eps_f);
                    scale = std::max({scale, std::abs(sh.eps_f), sh.delta});
                } else if constexpr (std::is_same_v<S, FlatBand>) {
                    scale = std::max(scale, sh.gamma0);
                    if (!sh.wide_band) {
                        ff.breakpoints.push_back(-sh.half_bandwidth);
                        ff.breakpoints.push_back(sh.half_bandwidth);
                    }
                } else {
                    ff.breakpoints.insert(ff.breakpoints.end(), sh.grid.begin(), sh.grid.end());
                }
            },
            r.hyb.shape);
    }
    std::sort(ff.breakpoints.begin(), ff.breakpoints.end());
    ff.breakpoints.erase(std::unique(ff.breakpoints.begin(), ff.breakpoints.end(),
                                     [](double a, double b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)); }),
                         ff.breakpoints.end());
    ff.scale = scale;
    return ff;
}

} // namespace mt
