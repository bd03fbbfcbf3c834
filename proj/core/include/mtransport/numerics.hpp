// numerics.hpp: adaptive Gauss-Kronrod quadrature of matrix-valued integrands
// over the real frequency line.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mt {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    /// Integrate over [first, second] only, without the tail mapping.
    std::optional<std::pair<double, double>> window;
    /// Frequencies forced onto panel boundaries (resonances, mu_r, band edges).
    std::vector<double> breakpoints;
    /// Scale c of the mapping w = c tan(theta); <= 0 selects 1.
    double tail_scale = 0.0;

    void validate() const;
};

struct QuadratureResult {
    Eigen::MatrixXcd value;
    double error = 0.0; // bound on the entrywise max-abs error
    int panels = 0;
};

using MatrixIntegrand = std::function<Eigen::MatrixXcd(double)>;

/// Integrates f over the real line (or spec.window). Every entry of f must
/// decay at least as 1/w^2. The result is accurate to
/// max(abs_tol, rel_tol * max|entry|); otherwise ConvergenceError is thrown
/// with the best estimate. Panels are summed in order of position so repeated
/// runs are bit-identical.
QuadratureResult integrate_matrix(const MatrixIntegrand& f, const QuadratureSpec& spec);

/// Scalar convenience wrapper.
double integrate_real(const std::function<double(double)>& f, const QuadratureSpec& spec, double* error = nullptr);

/// Copy of `spec` with `extra` breakpoints merged in and the tail scale set
/// if the caller left it on auto.
QuadratureSpec with_features(QuadratureSpec spec, const std::vector<double>& extra, double scale);

/// LU condition estimate that also catches exactly zero pivots, for which
/// Eigen's rcond() reports 1.
inline double reciprocal_condition(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
    if (lu.rows() == 0) return 1.0;
    const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    const double ratio = piv.maxCoeff() > 0.0 ? piv.minCoeff() / piv.maxCoeff() : 0.0;
    return std::min(lu.rcond(), ratio);
}

namespace detail {
/// 15-point Kronrod rule on [a, b]; returns (K15, G7) integrals.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> gauss_kronrod15(const MatrixIntegrand& f, double a, double b);
} // namespace detail

} // namespace mt
