// test_numerics.cpp: Gauss-Kronrod rule and adaptive integration

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace mt;
using doctest::Approx;

namespace {

Mat scalar(double x) { return Mat::Constant(1, 1, x); }

} // namespace

TEST_CASE("Kronrod rule is exact for polynomials up to degree 22, Gauss part up to 13") {
    for (int deg = 0; deg <= 22; ++deg) {
        const auto [k, g] = detail::gauss_kronrod15([&](double x) { return scalar(std::pow(x, deg)); }, -0.3, 1.7);
        const double exact = (std::pow(1.7, deg + 1) - std::pow(-0.3, deg + 1)) / (deg + 1);
        CHECK(k(0, 0).real() == Approx(exact).epsilon(1e-13));
        if (deg <= 13) CHECK(g(0, 0).real() == Approx(exact).epsilon(1e-13));
    }
    // Degree 14 separates the two rules.
    const auto [k, g] = detail::gauss_kronrod15([](double x) { return scalar(std::pow(x, 14)); }, -1.0, 1.0);
    CHECK(std::abs(k(0, 0).real() - g(0, 0).real()) > 1e-6);
}

TEST_CASE("normalized Lorentzian integrates to one") {
    const double d = 0.3;
    auto r = integrate_matrix([&](double w) { return scalar(d / std::numbers::pi / (w * w + d * d)); }, {});
    CHECK(r.value(0, 0).real() == Approx(1.0).epsilon(1e-10));
    CHECK(r.error < 1e-9);
    CHECK(r.panels > 0);
}

TEST_CASE("odd integrand over a symmetric window vanishes") {
    QuadratureSpec q;
    q.window = std::make_pair(-2.0, 2.0);
    CHECK(std::abs(integrate_real([](double w) { return w * w * w * std::exp(-w * w); }, q)) < 1e-14);
}

TEST_CASE("step integrands converge with a breakpoint") {
    QuadratureSpec q;
    q.breakpoints = {0.25};
    const double r = integrate_real([](double w) { return (w < 0.25 ? 1.0 : 0.0) / (1.0 + w * w); }, q);
    CHECK(r == Approx(std::atan(0.25) + std::numbers::pi / 2).epsilon(1e-11));
}

TEST_CASE("matrix integrands are integrated entrywise") {
    auto f = [](double w) {
        Mat m(2, 2);
        m << 1.0 / (1.0 + w * w), cplx(0.0, 2.0) / (4.0 + w * w), 0.0, w / std::pow(1.0 + w * w, 2);
        return m;
    };
    const auto r = integrate_matrix(f, {});
    CHECK(r.value(0, 0).real() == Approx(std::numbers::pi));
    CHECK(r.value(0, 1).imag() == Approx(std::numbers::pi));
    CHECK(std::abs(r.value(1, 1)) < 1e-12);
}

TEST_CASE("linearity on random rational integrands") {
    testing::Rng rng(11);
    for (int k = 0; k < 10; ++k) {
        const double a = testing::uniform(rng, -2, 2), b = testing::uniform(rng, 0.1, 1);
        const double c = testing::uniform(rng, -2, 2), d = testing::uniform(rng, 0.1, 1);
        const double al = testing::uniform(rng, -3, 3), be = testing::uniform(rng, -3, 3);
        auto f = [&](double w) { return 1.0 / ((w - a) * (w - a) + b * b); };
        auto g = [&](double w) { return w / std::pow((w - c) * (w - c) + d * d, 1.5); };
        double ef = 0, eg = 0, eh = 0;
        const double If = integrate_real(f, {}, &ef), Ig = integrate_real(g, {}, &eg);
        const double Ih = integrate_real([&](double w) { return al * f(w) + be * g(w); }, {}, &eh);
        CHECK(std::abs(Ih - (al * If + be * Ig)) <= std::abs(al) * ef + std::abs(be) * eg + eh + 1e-13);
        CHECK(If == Approx(std::numbers::pi / b).epsilon(1e-10));
    }
}

TEST_CASE("tighter tolerance does not increase the error") {
    const double d = 0.05, e0 = 0.7;
    auto f = [&](double w) { return std::atan(w) * d / ((w - e0) * (w - e0) + d * d); };
    QuadratureSpec ref;
    ref.rel_tol = 1e-13;
    ref.abs_tol = 1e-15;
    ref.max_subdivisions = 20000;
    const double exact = integrate_real(f, ref);
    QuadratureSpec loose;
    loose.rel_tol = 1e-8;
    QuadratureSpec tight;
    tight.rel_tol = 1e-9;
    const double e_loose = std::abs(integrate_real(f, loose) - exact);
    const double e_tight = std::abs(integrate_real(f, tight) - exact);
    CHECK(e_tight <= e_loose + 1e-15);
    CHECK(e_loose <= 1e-8 * std::abs(exact));
}

TEST_CASE("breakpoint insertion stays within the error estimate") {
    auto f = [](double w) { return 1.0 / ((w - 0.4) * (w - 0.4) + 0.01); };
    double e1 = 0, e2 = 0;
    const double a = integrate_real(f, {}, &e1);
    QuadratureSpec q;
    q.breakpoints = {0.4, -1.0, 3.0};
    const double b = integrate_real(f, q, &e2);
    CHECK(std::abs(a - b) <= e1 + e2);
}

TEST_CASE("results are bit-identical across runs") {
    auto f = [](double w) { return std::exp(-std::abs(w)) / (1.0 + w * w); };
    CHECK(integrate_real(f, {}) == integrate_real(f, {}));
}

TEST_CASE("subdivision limit raises a convergence error with the best estimate") {
    QuadratureSpec q;
    q.max_subdivisions = 10;
    q.rel_tol = 1e-14;
    q.abs_tol = 1e-16;
    try {
        integrate_real([](double w) { return std::sin(40.0 * w) / (1.0 + w * w); }, q);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.is_numerical());
        CHECK(e.best_estimate.allFinite());
        CHECK(e.error_bound > 0.0);
    }
}

TEST_CASE("invalid specs are rejected") {
    QuadratureSpec q;
    q.rel_tol = 0.0;
    CHECK_THROWS_AS(q.validate(), InvalidParameterError);
    q = {};
    q.max_subdivisions = 5;
    CHECK_THROWS_AS(q.validate(), InvalidParameterError);
    q = {};
    q.window = std::make_pair(1.0, 0.0);
    CHECK_THROWS_AS(q.validate(), InvalidParameterError);
}
