// selfconsistent.cpp: transfer-tensor assembly and the two D solvers

#include "mtransport/selfconsistent.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mtransport/errors.hpp"
#include "mtransport/greens.hpp"

namespace mt {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat unvec(const Vec& v, int n) { return Eigen::Map<const Mat>(v.data(), n, n); }

void fill_spectrum(CorrelationMatrix& cm) {
    Eigen::SelfAdjointEigenSolver<Mat> es(cm.D, Eigen::EigenvaluesOnly);
    cm.min_eigenvalue = es.eigenvalues().minCoeff();
    cm.max_eigenvalue = es.eigenvalues().maxCoeff();
}

} // namespace

Mat TransferTensor::apply(const Mat& X) const {
    const Vec x = Eigen::Map<const Vec>(X.data(), X.size());
    const Vec y = map * x;
    return unvec(y, n);
}

TransferTensor assemble_transfer(const Junction& j, const QuadratureSpec& spec, const TransferOptions& opts) {
    require_valid(j);
    const int n = j.n_sites();
    const int n2 = n * n;
    const GreensEvaluator ev(j);
    const bool monitored = j.gamma != 0.0 && j.O.cwiseAbs().maxCoeff() != 0.0;
    const double inv_pi = 1.0 / std::numbers::pi;

    auto integrand = [&](double w) -> Mat {
        const Mat G = ev.retarded(w);
        const double fl = opts.drive_scale * fermi(w, j.left.mu, j.left.T);
        const double fr = opts.drive_scale * fermi(w, j.right.mu, j.right.T);
        const Mat drive = (fl * ev.hybridization(Side::Left, w)) * ev.projector(Side::Left) +
                          (fr * ev.hybridization(Side::Right, w)) * ev.projector(Side::Right);
        Mat out(n2, monitored ? 1 + n2 : 1);
        const Mat src = inv_pi * (G * drive * G.adjoint());
        out.col(0) = Eigen::Map<const Vec>(src.data(), n2);
        if (monitored) {
            const Mat GO = G * j.O;
            const double pref = j.gamma * inv_pi;
            for (int jj = 0; jj < n; ++jj)
                for (int q = 0; q < n; ++q) {
                    const cplx c = pref * std::conj(GO(jj, q));
                    out.block(jj * n, 1 + q * n, n, n) = c * GO;
                }
        }
        return out;
    };

    const QuadratureSpec qs = junction_quadrature(j, spec);
    QuadratureResult res;
    try {
        res = integrate_matrix(integrand, qs);
    } catch (const ConvergenceError& e) {
        std::ostringstream os;
        if (e.worst_col == 0)
            os << "transfer assembly: drive term entry " << e.worst_row << " failed to converge; " << e.what();
        else {
            const auto b = e.worst_col - 1;
            os << "transfer assembly: basis element E(" << b % n << "," << b / n << ") failed to converge; "
               << e.what();
        }
        throw ConvergenceError(os.str(), e.best_estimate, e.error_bound, e.panels, e.worst_row, e.worst_col);
    }

    TransferTensor tt;
    tt.n = n;
    tt.source = unvec(res.value.col(0), n);
    tt.map = monitored ? Mat(res.value.rightCols(n2)) : Mat::Zero(n2, n2);
    tt.quadrature_error = res.error;
    tt.panels = res.panels;
    return tt;
}

CorrelationMatrix solve_correlation(const TransferTensor& tt) {
    const int n = tt.n;
    const int n2 = n * n;
    Mat A = -tt.map;
    A.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Mat> lu(A);
    const double rc = reciprocal_condition(lu);
    if (!(rc >= 1e-13)) {
        std::ostringstream os;
        os << "self-consistency map is not contractive (rcond of 1 - map = " << rc << ")";
        throw NonContractiveMapError(os.str());
    }
    const Vec d = lu.solve(Eigen::Map<const Vec>(tt.source.data(), n2));
    const Mat raw = unvec(d, n);
    CorrelationMatrix cm;
    cm.D = 0.5 * (raw + raw.adjoint());
    cm.hermitization_correction = max_abs(raw - cm.D);
    cm.residual = max_abs(cm.D - tt.source - tt.apply(cm.D));
    fill_spectrum(cm);
    return cm;
}

CorrelationMatrix solve_fixed_point(const TransferTensor& tt, const FixedPointOptions& opts) {
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw InvalidParameterError("fixed-point damping must lie in (0, 1]");
    if (opts.max_iter < 1) throw InvalidParameterError("fixed-point max_iter must be positive");
    Mat D = tt.source;
    double update = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const Mat next = (1.0 - opts.damping) * D + opts.damping * (tt.source + tt.apply(D));
        update = max_abs(next - D);
        D = next;
        if (update < opts.tolerance) {
            CorrelationMatrix cm;
            cm.D = 0.5 * (D + D.adjoint());
            cm.hermitization_correction = max_abs(D - cm.D);
            cm.residual = max_abs(cm.D - tt.source - tt.apply(cm.D));
            cm.iterations = it;
            fill_spectrum(cm);
            return cm;
        }
    }
    std::ostringstream os;
    os << "fixed-point iteration did not converge in " << opts.max_iter << " iterations (last update " << update
       << ")";
    throw IterationLimitError(os.str(), update, opts.max_iter);
}

} // namespace mt
