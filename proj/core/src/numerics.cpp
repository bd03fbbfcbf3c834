// numerics.cpp: globally adaptive G7/K15 quadrature with tan tail mapping

#include "mtransport/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "mtransport/errors.hpp"

namespace mt {

namespace {

// Kronrod abscissae (positive half, descending) and weights; Gauss points are
// the odd-indexed abscissae plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double max_abs(const Eigen::MatrixXcd& m) {
    double r = 0.0;
    for (Eigen::Index k = 0; k < m.size(); ++k) r = std::max(r, std::abs(m.data()[k]));
    return r;
}

struct Panel {
    double a, b;
    Eigen::MatrixXcd value;
    double error;
    bool frozen = false;
};

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameterError("quadrature tolerances must be positive");
    if (max_subdivisions < 10) throw InvalidParameterError("max_subdivisions must be at least 10");
    if (window && !(window->second > window->first))
        throw InvalidParameterError("quadrature window must satisfy min < max");
}

namespace detail {

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> gauss_kronrod15(const MatrixIntegrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Eigen::MatrixXcd fc = f(c);
    Eigen::MatrixXcd k = fc * kWgk[7];
    Eigen::MatrixXcd g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        Eigen::MatrixXcd s = f(c - dx);
        s += f(c + dx);
        k += kWgk[j] * s;
        if (j % 2 == 1) g += kWg[j / 2] * s;
    }
    return {k * h, g * h};
}

} // namespace detail

QuadratureSpec with_features(QuadratureSpec spec, const std::vector<double>& extra, double scale) {
    spec.breakpoints.insert(spec.breakpoints.end(), extra.begin(), extra.end());
    if (spec.tail_scale <= 0.0) spec.tail_scale = scale;
    return spec;
}

QuadratureResult integrate_matrix(const MatrixIntegrand& f, const QuadratureSpec& spec) {
    spec.validate();

    // Work in a variable x with w(x); either the window itself or
    // theta in (-pi/2, pi/2) with w = c tan(theta).
    const bool mapped = !spec.window.has_value();
    const double c = spec.tail_scale > 0.0 ? spec.tail_scale : 1.0;
    MatrixIntegrand g;
    double lo, hi;
    std::vector<double> knots;
    if (mapped) {
        lo = -0.5 * std::numbers::pi;
        hi = 0.5 * std::numbers::pi;
        g = [&f, c](double th) -> Eigen::MatrixXcd {
            const double cs = std::cos(th);
            return f(c * std::tan(th)) * (c / (cs * cs));
        };
        for (double bp : spec.breakpoints)
            if (std::isfinite(bp)) knots.push_back(std::atan(bp / c));
    } else {
        lo = spec.window->first;
        hi = spec.window->second;
        g = f;
        for (double bp : spec.breakpoints)
            if (bp > lo && bp < hi) knots.push_back(bp);
    }
    knots.push_back(lo);
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());
    const double span = hi - lo;
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [span](double x, double y) { return std::abs(x - y) <= 1e-13 * span; }),
                knots.end());
    knots.erase(std::remove_if(knots.begin(), knots.end(), [lo, hi](double x) { return x < lo || x > hi; }),
                knots.end());

    std::vector<Panel> panels;
    auto eval = [&](double a, double b) {
        auto [k, gs] = detail::gauss_kronrod15(g, a, b);
        const double err = max_abs(k - gs);
        const bool frozen = (b - a) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) ||
                            (b - a) <= 1e-15 * span;
        panels.push_back({a, b, std::move(k), err, frozen});
    };
    // Each knot interval starts as two panels.
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k], b = knots[k + 1];
        const double m = 0.5 * (a + b);
        eval(a, m);
        eval(m, b);
    }

    auto cmp = [&panels](int x, int y) {
        if (panels[x].error != panels[y].error) return panels[x].error < panels[y].error;
        return x > y;
    };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(panels.front().value.rows(), panels.front().value.cols());
    double total_err = 0.0;
    for (int k = 0; k < static_cast<int>(panels.size()); ++k) {
        total += panels[k].value;
        total_err += panels[k].error;
        heap.push(k);
    }
    std::vector<char> alive(panels.size(), 1);

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * max_abs(total)); };
    auto ordered_sum = [&] {
        std::vector<int> idx;
        for (int k = 0; k < static_cast<int>(panels.size()); ++k)
            if (alive[k]) idx.push_back(k);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return panels[x].a < panels[y].a; });
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(total.rows(), total.cols());
        double e = 0.0;
        for (int k : idx) {
            s += panels[k].value;
            e += panels[k].error;
        }
        return std::make_pair(std::move(s), e);
    };

    int live = static_cast<int>(panels.size());
    int recompute_counter = 0;
    while (total_err > tolerance()) {
        if (live >= spec.max_subdivisions || heap.empty() || panels[heap.top()].frozen) {
            auto [s, e] = ordered_sum();
            Eigen::Index r = 0, col = 0;
            // Report the entry whose worst panel dominates the error budget.
            {
                const int w = heap.empty() ? 0 : heap.top();
                auto [kk, gg] = detail::gauss_kronrod15(g, panels[w].a, panels[w].b);
                (kk - gg).cwiseAbs().maxCoeff(&r, &col);
            }
            std::ostringstream os;
            os << "quadrature did not converge: error " << e << " > tolerance " << tolerance() << " after " << live
               << " panels (worst entry " << r << "," << col << ")";
            throw ConvergenceError(os.str(), std::move(s), e, live, r, col);
        }
        const int w = heap.top();
        heap.pop();
        alive[w] = 0;
        --live;
        total -= panels[w].value;
        total_err -= panels[w].error;
        const double a = panels[w].a, b = panels[w].b, m = 0.5 * (a + b);
        eval(a, m);
        eval(m, b);
        for (int k = static_cast<int>(panels.size()) - 2; k < static_cast<int>(panels.size()); ++k) {
            alive.push_back(1);
            total += panels[k].value;
            total_err += panels[k].error;
            heap.push(k);
            ++live;
        }
        // Incremental sums drift; refresh them now and then.
        if (++recompute_counter % 64 == 0) {
            auto [s, e] = ordered_sum();
            total = std::move(s);
            total_err = e;
        }
    }
    auto [s, e] = ordered_sum();
    return {std::move(s), e, live};
}

double integrate_real(const std::function<double(double)>& f, const QuadratureSpec& spec, double* error) {
    auto res = integrate_matrix(
        [&f](double w) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = f(w);
            return m;
        },
        spec);
    if (error) *error = res.error;
    return res.value(0, 0).real();
}

} // namespace mt
