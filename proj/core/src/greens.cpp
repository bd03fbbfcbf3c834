// greens.cpp: Dyson inversion with monitor-induced lifetime

#include "mtransport/greens.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mtransport/errors.hpp"

namespace mt {

ReservoirSelfEnergy reservoir_self_energy(const Reservoir& res, double omega, int n_sites) {
    const Vec v = coupling_vector(res.hyb, n_sites);
    const Mat p = v * v.adjoint();
    const cplx sigma = retarded_kernel(res.hyb.shape, omega);
    const double g = -sigma.imag();
    ReservoirSelfEnergy out;
    out.retarded = sigma * p;
    out.gamma = g * p;
    out.keldysh = cplx(0.0, -2.0 * g * thermal_factor(omega, res.mu, res.T)) * p;
    return out;
}

GreensEvaluator::GreensEvaluator(const Junction& j) : j_(&j), n_(j.n_sites()) {
    o2_ = j.O * j.O;
    for (Side s : {Side::Left, Side::Right}) {
        const Vec v = coupling_vector(j.reservoir(s).hyb, n_);
        proj_[index(s)] = v * v.adjoint();
    }
}

cplx GreensEvaluator::kernel(Side s, double omega) const {
    return retarded_kernel(j_->reservoir(s).hyb.shape, omega);
}

double GreensEvaluator::hybridization(Side s, double omega) const {
    return hybridization_value(j_->reservoir(s).hyb.shape, omega);
}

Mat GreensEvaluator::retarded(double omega) const {
    Mat m = -j_->h;
    m.diagonal().array() += omega;
    m -= kernel(Side::Left, omega) * proj_[0];
    m -= kernel(Side::Right, omega) * proj_[1];
    m += cplx(0.0, j_->gamma) * o2_;
    Eigen::PartialPivLU<Mat> lu(m);
    const double rc = reciprocal_condition(lu);
    if (!(rc >= kSingularRcond)) {
        std::ostringstream os;
        os << "inverse Green's function is singular at omega = " << omega << " (rcond " << rc << ")";
        throw SingularMatrixError(os.str(), omega);
    }
    return lu.inverse();
}

DressedGreens dressed_greens(const Junction& j, double omega) {
    GreensEvaluator ev(j);
    DressedGreens g;
    g.retarded = ev.retarded(omega);
    g.advanced = g.retarded.adjoint();
    return g;
}

Mat spectral_function(const Junction& j, double omega) {
    const auto g = dressed_greens(j, omega);
    return cplx(0.0, 0.5 / std::numbers::pi) * (g.retarded - g.advanced);
}

double transmission(const Junction& j, double omega) {
    GreensEvaluator ev(j);
    const Mat G = ev.retarded(omega);
    const double gl = ev.hybridization(Side::Left, omega);
    const double gr = ev.hybridization(Side::Right, omega);
    const cplx t = 4.0 * gl * gr * (ev.projector(Side::Left) * G * ev.projector(Side::Right) * G.adjoint()).trace();
    if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real())))
        throw ConsistencyError("transmission has an imaginary part");
    return t.real();
}

QuadratureSpec junction_quadrature(const Junction& j, const QuadratureSpec& base) {
    const auto ff = frequency_features(j);
    return with_features(base, ff.breakpoints, ff.scale);
}

} // namespace mt
