// oracle.cpp: finite-lead discretisation and exact quadratic-Lindbladian steady state

#include "mtransport/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mtransport/errors.hpp"
#include "mtransport/numerics.hpp"

namespace mt {

namespace {

double resonance_width(const HybridizationShape& shape) {
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LorentzianFilter>) return s.delta;
            else if constexpr (std::is_same_v<S, FlatBand>) return s.gamma0;
            else return s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
        },
        shape);
}

} // namespace

DiscretizedJunction discretize(const Junction& j, int M, const DiscretizeOptions& opts) {
    require_valid(j);
    if (M < 2) throw InvalidParameterError("discretize: need at least two modes per lead");

    std::vector<double> resonances;
    {
        Eigen::SelfAdjointEigenSolver<Mat> es(j.h, Eigen::EigenvaluesOnly);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) resonances.push_back(es.eigenvalues()(k));
    }
    double width = 0.1;
    for (Side s : {Side::Left, Side::Right}) {
        const auto& shape = j.reservoir(s).hyb.shape;
        if (const auto* lf = std::get_if<LorentzianFilter>(&shape)) resonances.push_back(lf->eps_f);
        width = std::max(width, resonance_width(shape));
    }

    double lo, hi;
    if (opts.band) {
        lo = opts.band->first;
        hi = opts.band->second;
        if (!(hi > lo)) throw ConfigError("band", "lead band must satisfy min < max");
        for (double r : resonances)
            if (r < lo || r > hi) {
                std::ostringstream os;
                os << "lead band [" << lo << ", " << hi << "] does not cover the resonance at " << r;
                throw ConfigError("band", os.str());
            }
    } else {
        lo = *std::min_element(resonances.begin(), resonances.end()) - opts.margin_widths * width;
        hi = *std::max_element(resonances.begin(), resonances.end()) + opts.margin_widths * width;
        for (Side s : {Side::Left, Side::Right}) {
            const auto& r = j.reservoir(s);
            lo = std::min(lo, r.mu - 10.0 * r.T);
            hi = std::max(hi, r.mu + 10.0 * r.T);
        }
    }

    const int n = j.n_sites();
    const int dim = n + 2 * M;
    DiscretizedJunction dj;
    dj.n_sys = n;
    dj.band = {lo, hi};
    dj.spacing = (hi - lo) / M;
    dj.kappa = opts.kappa.value_or(2.0 * dj.spacing);
    if (!(dj.kappa >= 0.0)) throw InvalidParameterError("discretize: kappa must be non-negative");
    dj.gamma = j.gamma;
    dj.H = Mat::Zero(dim, dim);
    dj.H.topLeftCorner(n, n) = j.h;
    dj.O = Mat::Zero(dim, dim);
    dj.O.topLeftCorner(n, n) = j.O;
    dj.decay = Eigen::VectorXd::Zero(dim);
    dj.inflow = Eigen::VectorXd::Zero(dim);

    for (Side s : {Side::Left, Side::Right}) {
        const auto& res = j.reservoir(s);
        HybridizationShape sampled = res.hyb.shape;
        if (opts.compensate_broadening) {
            if (auto* lf = std::get_if<LorentzianFilter>(&sampled); lf && lf->delta > 0.5 * dj.kappa)
                lf->delta -= 0.5 * dj.kappa;
        }
        auto& lead = dj.leads[index(s)];
        lead.mu = res.mu;
        lead.T = res.T;
        lead.site_vector = coupling_vector(res.hyb, n);
        const int offset = n + index(s) * M;
        for (int k = 0; k < M; ++k) {
            const double e = lo + (k + 0.5) * dj.spacing;
            const double t = std::sqrt(hybridization_value(sampled, e) * dj.spacing / std::numbers::pi);
            const int a = offset + k;
            lead.index.push_back(a);
            lead.energy.push_back(e);
            lead.coupling.push_back(t);
            dj.H(a, a) = e;
            for (int i = 0; i < n; ++i) {
                dj.H(a, i) = t * std::conj(lead.site_vector(i));
                dj.H(i, a) = t * lead.site_vector(i);
            }
            dj.decay(a) = dj.kappa;
            dj.inflow(a) = dj.kappa * fermi(e, res.mu, res.T);
        }
    }
    return dj;
}

double reconstructed_hybridization(const DiscretizedJunction& dj, Side s, double omega) {
    const auto& lead = dj.lead(s);
    const double hw = 0.5 * dj.kappa;
    double g = 0.0;
    for (std::size_t k = 0; k < lead.energy.size(); ++k) {
        const double x = omega - lead.energy[k];
        g += lead.coupling[k] * lead.coupling[k] * hw / (x * x + hw * hw);
    }
    return g;
}

namespace {

Mat drift_matrix(const DiscretizedJunction& dj) {
    Mat A = cplx(0.0, 1.0) * dj.H + dj.gamma * (dj.O * dj.O);
    A.diagonal() += (0.5 * dj.decay).cast<cplx>();
    return A;
}

Mat inflow_matrix(const DiscretizedJunction& dj) {
    return dj.inflow.cast<cplx>().asDiagonal();
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

SteadyState finish(const DiscretizedJunction& dj, Mat C) {
    SteadyState ss;
    ss.C = 0.5 * (C + C.adjoint());
    const Mat A = drift_matrix(dj);
    const Mat R = A * ss.C + ss.C * A.adjoint() - 2.0 * dj.gamma * dj.O * ss.C * dj.O - inflow_matrix(dj);
    ss.residual = max_abs(R);
    Eigen::SelfAdjointEigenSolver<Mat> es(ss.C, Eigen::EigenvaluesOnly);
    ss.min_eigenvalue = es.eigenvalues().minCoeff();
    ss.max_eigenvalue = es.eigenvalues().maxCoeff();
    return ss;
}

SteadyState solve_dense(const DiscretizedJunction& dj) {
    const int N = dj.dim();
    const Mat A = drift_matrix(dj);
    const Mat I = Mat::Identity(N, N);
    Mat L = Mat::Zero(N * N, N * N);
    // vec(A C) = (1 (x) A) vec C, vec(C A^dag) = (conj(A) (x) 1) vec C,
    // vec(O C O) = (O^T (x) O) vec C.
    for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d) {
            auto blk = L.block(b * N, d * N, N, N);
            if (b == d) blk += A;
            blk += std::conj(A(b, d)) * I;
            if (dj.gamma != 0.0 && dj.O(d, b) != 0.0) blk -= 2.0 * dj.gamma * dj.O(d, b) * dj.O;
        }
    Eigen::PartialPivLU<Mat> lu(L);
    if (!(reciprocal_condition(lu) >= 1e-13))
        throw DegenerateDiscretizationError("stationary operator is singular (a mode is not damped)");
    const Mat Q = inflow_matrix(dj);
    const Vec c = lu.solve(Eigen::Map<const Vec>(Q.data(), N * N));
    return finish(dj, Eigen::Map<const Mat>(c.data(), N, N));
}

// Solves A X + X A^dag = Q given A = U T U^dag.
class LyapunovSolver {
public:
    explicit LyapunovSolver(const Mat& A) : schur_(A) {
        const auto& T = schur_.matrixT();
        const double scale = std::max(1.0, max_abs(T));
        double min_re = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < T.rows(); ++i) min_re = std::min(min_re, T(i, i).real());
        if (!(min_re > 1e-12 * scale)) {
            std::ostringstream os;
            os << "stationary operator is singular: slowest decay rate " << min_re
               << " (an undamped mode, e.g. a decoupled site or kappa = 0)";
            throw DegenerateDiscretizationError(os.str());
        }
    }

    Mat solve(const Mat& Q) const {
        const Mat& U = schur_.matrixU();
        const Mat& T = schur_.matrixT();
        const Eigen::Index N = T.rows();
        const Mat Qt = U.adjoint() * Q * U;
        Mat Y = Mat::Zero(N, N);
        for (Eigen::Index j = N - 1; j >= 0; --j) {
            Vec rhs = Qt.col(j);
            const Eigen::Index tail = N - 1 - j;
            if (tail > 0) rhs.noalias() -= Y.rightCols(tail) * T.row(j).tail(tail).adjoint();
            const cplx shift = std::conj(T(j, j));
            for (Eigen::Index i = N - 1; i >= 0; --i) {
                cplx s = rhs(i);
                for (Eigen::Index k = i + 1; k < N; ++k) s -= T(i, k) * Y(k, j);
                Y(i, j) = s / (T(i, i) + shift);
            }
        }
        return U * Y * U.adjoint();
    }

private:
    Eigen::ComplexSchur<Mat> schur_;
};

SteadyState solve_schur(const DiscretizedJunction& dj) {
    const int N = dj.dim();
    const int n = dj.n_sys;
    const LyapunovSolver lyap(drift_matrix(dj));
    const Mat Q = inflow_matrix(dj);
    const Mat C0 = lyap.solve(Q);
    const bool monitored = dj.gamma != 0.0 && max_abs(dj.O) != 0.0;
    if (!monitored) return finish(dj, C0);

    // C = C0 + 2 gamma L^{-1}[O C_ss O]; only the system block feeds back.
    const Mat Oss = dj.O.topLeftCorner(n, n);
    Mat feedback(n * n, n * n);
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
            Mat src = Mat::Zero(N, N);
            src.topLeftCorner(n, n) = 2.0 * dj.gamma * Oss.col(p) * Oss.row(q);
            const Mat resp = lyap.solve(src).topLeftCorner(n, n);
            feedback.col(p + n * q) = Eigen::Map<const Vec>(resp.data(), n * n);
        }
    Mat sys = -feedback;
    sys.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Mat> lu(sys);
    if (!(reciprocal_condition(lu) >= 1e-13)) throw DegenerateDiscretizationError("monitor feedback on the system is singular");
    const Mat C0ss = C0.topLeftCorner(n, n);
    const Vec css = lu.solve(Eigen::Map<const Vec>(C0ss.data(), n * n));
    Mat src = Q;
    src.topLeftCorner(n, n) += 2.0 * dj.gamma * Oss * Eigen::Map<const Mat>(css.data(), n, n) * Oss;
    return finish(dj, lyap.solve(src));
}

} // namespace

SteadyState steady_state(const DiscretizedJunction& dj, SteadyStateMethod method) {
    if (method == SteadyStateMethod::Auto) method = dj.dim() <= 30 ? SteadyStateMethod::Dense : SteadyStateMethod::Schur;
    SteadyState ss = method == SteadyStateMethod::Dense ? solve_dense(dj) : solve_schur(dj);
    if (ss.min_eigenvalue < -1e-8 || ss.max_eigenvalue > 1.0 + 1e-8) {
        std::ostringstream os;
        os << "oracle correlation spectrum [" << ss.min_eigenvalue << ", " << ss.max_eigenvalue
           << "] outside [0, 1]";
        throw ConsistencyError(os.str());
    }
    return ss;
}

OracleCurrents oracle_currents(const DiscretizedJunction& dj, const SteadyState& ss) {
    OracleCurrents out;
    const int n = dj.n_sys;
    const Mat& C = ss.C;
    double scale = 0.0;
    for (Side s : {Side::Left, Side::Right}) {
        const auto& lead = dj.lead(s);
        const int r = index(s);
        for (std::size_t k = 0; k < lead.index.size(); ++k) {
            const int a = lead.index[k];
            // J_k = i sum_i [t*_{ki} <d_i^dag c_k> - t_{ki} <c_k^dag d_i>] = -2 Im sum_i conj(H_ai) C_ai
            cplx x = 0.0;
            for (int i = 0; i < n; ++i) x += std::conj(dj.H(a, i)) * C(a, i);
            const double jt = -2.0 * x.imag();
            const double jb = dj.decay(a) * C(a, a).real() - dj.inflow(a);
            const double w = lead.energy[k] - lead.mu;
            out.J[r][0] += jt;
            out.J[r][1] += w * jt;
            out.J_bath[r][0] += jb;
            out.J_bath[r][1] += w * jb;
            out.bath_balance -= jb;
            scale = std::max(scale, std::abs(jt));
        }
    }
    for (int r = 0; r < 2; ++r)
        for (int z = 0; z < 2; ++z)
            out.channel_mismatch = std::max(out.channel_mismatch, std::abs(out.J[r][z] - out.J_bath[r][z]));
    if (out.channel_mismatch > kOracleChannelTol * std::max(1.0, scale * static_cast<double>(dj.dim()))) {
        std::ostringstream os;
        os << "oracle tunneling and bath currents disagree by " << out.channel_mismatch;
        throw ConsistencyError(os.str());
    }
    return out;
}

} // namespace mt
