// currents.cpp: elastic + inelastic current formula and derived quantities

#include "mtransport/currents.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "mtransport/errors.hpp"
#include "mtransport/greens.hpp"

namespace mt {

namespace {

constexpr Side kSides[2] = {Side::Left, Side::Right};

double pow_zeta(double x, int zeta) { return zeta == 0 ? 1.0 : x; }

void check_zeta(int zeta) {
    if (zeta != 0 && zeta != 1) throw InvalidParameterError("zeta must be 0 (particle) or 1 (heat)");
}

// Packs [elastic(r, zeta), inelastic(r, zeta)] for r in {L, R}, zeta in {0, 1}
// into an 8 x 1 integrand: index = 4 * kind + 2 * r + zeta.
QuadratureResult integrate_currents(const Junction& j, const Mat* D, const QuadratureSpec& spec) {
    const GreensEvaluator ev(j);
    const double two_pi = 2.0 / std::numbers::pi;
    const bool inel = D != nullptr && j.gamma != 0.0;
    const bool inel_heat = inel && !has_wide_band(j);
    Mat ODO;
    if (inel) ODO = j.O * (*D) * j.O;
    auto integrand = [&](double w) -> Mat {
        Mat out = Mat::Zero(8, 1);
        const Mat G = ev.retarded(w);
        const Mat Gd = G.adjoint();
        double g[2], f[2], mu[2];
        for (Side s : kSides) {
            const auto& res = j.reservoir(s);
            g[index(s)] = ev.hybridization(s, w);
            f[index(s)] = fermi(w, res.mu, res.T);
            mu[index(s)] = res.mu;
        }
        for (Side s : kSides) {
            const int r = index(s), rb = 1 - r;
            // tr[Gamma_r G Gamma_rbar G^dag]; the two orderings differ once monitoring breaks reciprocity.
            const double el_kernel =
                g[0] * g[1] == 0.0
                    ? 0.0
                    : g[0] * g[1] * (ev.projector(s) * G * ev.projector(other(s)) * Gd).trace().real();
            for (int zeta = 0; zeta < 2; ++zeta) {
                const double wz = pow_zeta(w - mu[r], zeta);
                out(2 * r + zeta) = two_pi * wz * (f[rb] - f[r]) * el_kernel;
            }
            if (inel && g[r] != 0.0) {
                const Mat X = ODO - f[r] * ev.monitor_squared();
                const double t = (ev.projector(s) * G * X * Gd).trace().real();
                for (int zeta = 0; zeta < (inel_heat ? 2 : 1); ++zeta)
                    out(4 + 2 * r + zeta) = j.gamma * two_pi * pow_zeta(w - mu[r], zeta) * g[r] * t;
            }
        }
        return out;
    };
    return integrate_matrix(integrand, junction_quadrature(j, spec));
}

} // namespace

double elastic_current(const Junction& j, Side r, int zeta, const QuadratureSpec& spec) {
    check_zeta(zeta);
    require_valid(j);
    const auto res = integrate_currents(j, nullptr, spec);
    return res.value(2 * index(r) + zeta, 0).real();
}

double inelastic_current(const Junction& j, const Mat& D, Side r, int zeta, const QuadratureSpec& spec) {
    check_zeta(zeta);
    require_valid(j);
    if (D.rows() != j.n_sites() || D.cols() != j.n_sites())
        throw InvalidParameterError("correlation matrix dimension does not match junction");
    if (j.gamma == 0.0) return 0.0;
    if (zeta == 1 && has_wide_band(j)) return std::numeric_limits<double>::quiet_NaN();
    const auto res = integrate_currents(j, &D, spec);
    return res.value(4 + 2 * index(r) + zeta, 0).real();
}

TransportResult transport(const Junction& j, const QuadratureSpec& spec) {
    require_valid(j);
    const auto tt = assemble_transfer(j, spec);
    TransportResult out;
    out.correlation = solve_correlation(tt);
    out.transfer_error = tt.quadrature_error;
    const auto& cm = out.correlation;
    if (cm.min_eigenvalue < -kEigenvalueSlack || cm.max_eigenvalue > 1.0 + kEigenvalueSlack) {
        std::ostringstream os;
        os << "correlation matrix spectrum [" << cm.min_eigenvalue << ", " << cm.max_eigenvalue
           << "] outside [0, 1]";
        throw ConsistencyError(os.str());
    }
    const auto res = integrate_currents(j, &cm.D, spec);
    out.current_error = res.error;
    const bool divergent_heat = j.gamma != 0.0 && has_wide_band(j);
    for (int r = 0; r < 2; ++r)
        for (int zeta = 0; zeta < 2; ++zeta) {
            out.elastic[r][zeta] = res.value(2 * r + zeta, 0).real();
            out.inelastic[r][zeta] = zeta == 1 && divergent_heat ? std::numeric_limits<double>::quiet_NaN()
                                                                 : res.value(4 + 2 * r + zeta, 0).real();
            out.total[r][zeta] = out.elastic[r][zeta] + out.inelastic[r][zeta];
        }
    // Conservation is exact for the exact D; numerically it holds to the
    // integration accuracy, so only gross violations are reported.
    const double leak = std::abs(out.total[0][0] + out.total[1][0]);
    const double allowed = std::max(10.0 * conservation_tolerance(out.total[0][0]),
                                    1e4 * (out.current_error + out.transfer_error));
    if (leak > allowed) {
        std::ostringstream os;
        os << "particle conservation violated: J0_L + J0_R = " << out.total[0][0] + out.total[1][0];
        throw ConsistencyError(os.str());
    }
    return out;
}

Junction with_symmetric_bias(const Junction& j, double mu, double dmu) {
    Junction b = j;
    b.left.mu = mu - 0.5 * dmu;
    b.right.mu = mu + 0.5 * dmu;
    return b;
}

double differential_conductance(const Junction& j, double mu, double step, const QuadratureSpec& spec) {
    if (!(step > 0.0)) throw InvalidParameterError("conductance step must be positive");
    // mu_L - mu_R = +h pushes particles into R.
    auto J = [&](double bias) { return transport(with_symmetric_bias(j, mu, -bias), spec).through_current(); };
    auto central = [&](double h) { return (J(h) - J(-h)) / (2.0 * h); };
    const double g1 = central(step);
    const double g2 = central(0.5 * step);
    return (4.0 * g2 - g1) / 3.0;
}

double PowerCurve::linear_max_power() const {
    return zero_bias_current * zero_bias_current / (4.0 * conductance);
}

double PowerCurve::linear_stopping_voltage() const { return zero_bias_current / conductance; }

PowerCurve power_curve(const Junction& j, const std::vector<double>& dmu_grid, const QuadratureSpec& spec,
                       double conductance_step) {
    PowerCurve pc;
    pc.mu = 0.5 * (j.left.mu + j.right.mu);
    pc.zero_bias_current = transport(with_symmetric_bias(j, pc.mu, 0.0), spec).through_current();
    pc.conductance = differential_conductance(j, pc.mu, conductance_step, spec);
    for (double dmu : dmu_grid) {
        PowerPoint p;
        p.dmu = dmu;
        p.current = dmu == 0.0 ? pc.zero_bias_current
                               : transport(with_symmetric_bias(j, pc.mu, dmu), spec).through_current();
        p.power = dmu * p.current;
        p.power_linear = dmu * pc.zero_bias_current - dmu * dmu * pc.conductance;
        pc.points.push_back(p);
    }
    return pc;
}

double stopping_voltage(const Junction& j, const QuadratureSpec& spec, double max_bias) {
    const double mu = 0.5 * (j.left.mu + j.right.mu);
    auto J = [&](double dmu) { return transport(with_symmetric_bias(j, mu, dmu), spec).through_current(); };
    const double j0 = J(0.0);
    if (std::abs(j0) <= 1e-12) throw PreconditionError("stopping voltage undefined: zero-bias current vanishes");
    const double dir = j0 > 0.0 ? 1.0 : -1.0;
    double lo = 0.0;
    double hi = 0.05, jhi = J(dir * hi);
    while (jhi * j0 > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > max_bias) {
            std::ostringstream os;
            os << "no sign change of the current for |dmu| <= " << max_bias;
            throw NoStoppingVoltageError(os.str());
        }
        jhi = J(dir * hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double jm = J(dir * mid);
        if (std::abs(jm) <= 1e-10 && hi - lo < 1e-9) return dir * mid;
        if (jm * j0 > 0.0) lo = mid;
        else hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    return dir * 0.5 * (lo + hi);
}

int CoolingMap::cooling_cells() const {
    int c = 0;
    for (Eigen::Index k = 0; k < heat_right.size(); ++k)
        if (heat_right.data()[k] < 0.0) ++c;
    return c;
}

std::vector<CoolingMap> cooling_map(const JunctionBuilder& builder, const std::vector<double>& eps_L,
                                    const std::vector<double>& eps_R, const std::vector<double>& gammas,
                                    const QuadratureSpec& spec, int workers) {
    std::vector<CoolingMap> maps;
    const int nl = static_cast<int>(eps_L.size()), nr = static_cast<int>(eps_R.size());
    for (double g : gammas) {
        CoolingMap m;
        m.gamma = g;
        m.eps_L = eps_L;
        m.eps_R = eps_R;
        m.heat_right = Eigen::MatrixXd::Constant(nl, nr, std::numeric_limits<double>::quiet_NaN());
        parallel_for(nl * nr, workers, [&](int k) {
            const int a = k / nr, b = k % nr;
            try {
                m.heat_right(a, b) = transport(builder(eps_L[a], eps_R[b], g), spec).J(Side::Right, 1);
            } catch (const NumericalError&) {
                // left as NaN; counted as non-cooling
            }
        });
        maps.push_back(std::move(m));
    }
    return maps;
}

double cop_from_currents(double heat_right, double heat_left) {
    const double denom = heat_right + heat_left;
    if (heat_right == 0.0) return 0.0;
    if (std::abs(denom) <= 1e-300 || std::abs(denom) <= 1e-14 * std::abs(heat_right))
        throw UndefinedCopError("coefficient of performance undefined: J1_R + J1_L vanishes");
    return std::abs(heat_right / denom);
}

double cop(const Junction& j, const QuadratureSpec& spec) {
    const auto t = transport(j, spec);
    return cop_from_currents(t.J(Side::Right, 1), t.J(Side::Left, 1));
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex mtx;
    std::vector<std::thread> pool;
    const int nthreads = std::min(workers, count);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int k = next.fetch_add(1);
                if (k >= count) return;
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(mtx);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace mt
