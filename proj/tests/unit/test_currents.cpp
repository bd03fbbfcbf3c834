// test_currents.cpp: exact currents and derived transport quantities

#include <doctest.h>

#include <cmath>
#include <limits>

#include "common.hpp"

using namespace mt;
using namespace mt::testing;
using doctest::Approx;

TEST_CASE("zero bias has no elastic current") {
    Rng rng(71);
    for (int k = 0; k < 5; ++k) {
        Junction j = random_junction(rng, 1 + k, 1.0);
        j.right.mu = j.left.mu;
        j.right.T = j.left.T;
        for (Side s : {Side::Left, Side::Right})
            for (int z : {0, 1}) CHECK(elastic_current(j, s, z, quad(j)) == 0.0);
    }
}

TEST_CASE("Landauer conductance quantum") {
    const Junction j = flat_level(0.2, 0.3, 0.0).to_junction();
    CHECK(differential_conductance(j, 0.2, 1e-4, quad(j)) == Approx(1.0 / (2 * std::numbers::pi)).epsilon(1e-6));
    // mu_L above mu_R: particles flow into the right reservoir.
    const Junction biased = with_symmetric_bias(j, 0.2, -1e-3);
    CHECK(transport(biased, quad(biased)).through_current() ==
          Approx(1e-3 / (2 * std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("conductance vanishes far from all resonances") {
    scenarios::SingleLevelParams p;
    p.gamma = 0.0;
    const Junction j = scenarios::single_level_junction(p);
    CHECK(std::abs(differential_conductance(j, 60.0, 1e-4, quad(j))) < 1e-8);
}

TEST_CASE("Fig. 1 elastic and inelastic parts match the closed form") {
    scenarios::SingleLevelParams p;
    p.gamma = 1.0;
    p.mu_L = -0.1;
    p.mu_R = 0.1;
    const Junction j = scenarios::single_level_junction(p);
    const auto cf = single_level_current(scenarios::single_level_model(p), {});
    const auto tr = transport(j, quad(j));
    CHECK(tr.elastic[1][0] == Approx(cf.elastic).epsilon(1e-8));
    CHECK(tr.inelastic[1][0] == Approx(cf.inelastic).epsilon(1e-8));
    CHECK(elastic_current(j, Side::Right, 0, quad(j)) == Approx(cf.elastic).epsilon(1e-8));

    p.mu_L = p.mu_R = 0.0;
    const Junction z = scenarios::single_level_junction(p);
    const auto cz = single_level_current(scenarios::single_level_model(p), {});
    const auto tz = transport(z, quad(z));
    CHECK(std::abs(tz.inelastic[1][0]) > 1e-3);
    CHECK(tz.inelastic[1][0] == Approx(cz.inelastic).epsilon(1e-8));
    CHECK(inelastic_current(z, tz.correlation.D, Side::Right, 0, quad(z)) == Approx(cz.inelastic).epsilon(1e-8));
}

TEST_CASE("result bookkeeping and conservation") {
    Rng rng(73);
    for (int k = 0; k < 10; ++k) {
        const Junction j = random_junction(rng, 1 + k % 4, k % 3 ? uniform(rng, 0.0, 5.0) : 0.0);
        const auto tr = transport(j, quad(j));
        for (int r = 0; r < 2; ++r)
            for (int z = 0; z < 2; ++z) CHECK(tr.total[r][z] == tr.elastic[r][z] + tr.inelastic[r][z]);
        CHECK(std::abs(tr.J(Side::Left, 0) + tr.J(Side::Right, 0)) <=
              conservation_tolerance(tr.J(Side::Left, 0)));
        if (j.gamma == 0.0) {
            CHECK(tr.inelastic[0][0] == 0.0);
            CHECK(std::abs(tr.measurement_work(j)) <= 1e-9 * std::max(std::abs(tr.J(Side::Left, 1)), 1e-3));
            const auto ref = landauer(j);
            CHECK(close(tr.J(Side::Right, 0), ref.J[1][0], 1e-8, 1e-10));
        }
    }
}

TEST_CASE("cross-monitored pair has no elastic channel") {
    scenarios::PairParams p;
    p.gamma = 0.5;
    p.T_L = 2.0;
    const Junction j = scenarios::pair_junction(p);
    const auto tr = transport(j, quad(j));
    for (int r = 0; r < 2; ++r)
        for (int z = 0; z < 2; ++z) CHECK(std::abs(tr.elastic[r][z]) <= 1e-12);
    CHECK(tr.J(Side::Right, 1) == Approx(two_site_heat_current(scenarios::pair_model(p), {})).epsilon(1e-8));
}

TEST_CASE("equal levels heat both reservoirs alike") {
    scenarios::PairParams p;
    p.eps_L = p.eps_R = 4.0;
    p.gamma = 0.7;
    const Junction j = scenarios::pair_junction(p);
    const auto tr = transport(j, quad(j));
    CHECK(std::abs(tr.J(Side::Right, 0)) <= 1e-12);
    CHECK(tr.J(Side::Right, 1) == Approx(tr.J(Side::Left, 1)).epsilon(1e-9));
    // The monitor does work on the junction, split evenly between the reservoirs.
    CHECK(tr.J(Side::Right, 1) > 0.0);
    CHECK(tr.measurement_work(j) == Approx(-2.0 * tr.J(Side::Right, 1)).epsilon(1e-9));
}

TEST_CASE("flat bands carry no zero-bias current") {
    for (double g : {0.3, 2.0}) {
        const Junction j = flat_level(0.7, 0.25, g, 0.1, 0.3).to_junction();
        CHECK(std::abs(transport(j, quad(j)).through_current()) <= 1e-9);
    }
    // Asymmetric but proportional couplings.
    SingleLevelModel m = flat_level(-0.4, 0.25, 1.0);
    m.right = flat_reservoir(0.6, 0.0, 0.0);
    const Junction j = m.to_junction();
    CHECK(std::abs(transport(j, quad(j)).through_current()) <= 1e-9);
}

TEST_CASE("monitored wide-band heat current is reported as undefined") {
    const Junction j = flat_level(0.3, 0.2, 0.5).to_junction();
    const auto tr = transport(j, quad(j));
    CHECK(std::isnan(tr.J(Side::Right, 1)));
    CHECK(std::isfinite(tr.J(Side::Right, 0)));
    CHECK(std::isnan(inelastic_current(j, tr.correlation.D, Side::Left, 1, quad(j))));
    const Junction quiet = flat_level(0.3, 0.2, 0.0, 0.1, 0.2).to_junction();
    CHECK(std::isfinite(transport(quiet, quad(quiet)).J(Side::Right, 1)));
}

TEST_CASE("energy current adds the chemical-potential term") {
    TransportResult tr;
    tr.total[0] = {0.2, 0.5};
    tr.total[1] = {-0.2, -0.1};
    Junction j = flat_level(0.0, 0.1, 0.0).to_junction();
    j.left.mu = 1.0;
    j.right.mu = -1.0;
    CHECK(tr.energy_current(Side::Left, j) == Approx(0.7));
    CHECK(tr.energy_current(Side::Right, j) == Approx(0.1));
    CHECK(tr.measurement_work(j) == Approx(-0.8));
}

TEST_CASE("symmetric bias") {
    const Junction j = with_symmetric_bias(flat_level(0.0, 0.1, 0.0).to_junction(), 0.3, 0.4);
    CHECK(j.left.mu == Approx(0.1));
    CHECK(j.right.mu == Approx(0.5));
}

TEST_CASE("conductance response to monitoring") {
    auto G = [](double g, double mu) {
        scenarios::SingleLevelParams p;
        p.gamma = g;
        const Junction j = scenarios::single_level_junction(p);
        return differential_conductance(j, mu, 1e-4, quad(j));
    };
    CHECK(G(5.0, 0.0) < G(0.1, 0.0));
    CHECK(G(5.0, scenarios::kFilterEnergy) > G(0.1, scenarios::kFilterEnergy));
    CHECK(G(5.0, -scenarios::kFilterEnergy) > G(0.1, -scenarios::kFilterEnergy));
}

TEST_CASE("power curve") {
    scenarios::SingleLevelParams p;
    p.gamma = 1.0;
    const Junction j = scenarios::single_level_junction(p);
    const auto spec = quad(j);
    const double stop = stopping_voltage(j, spec);
    const auto pc = power_curve(j, {0.0, 0.5 * stop, stop}, spec);
    CHECK(pc.points[0].power == 0.0);
    CHECK(std::abs(pc.points[2].power) < 1e-9);
    CHECK(std::abs(pc.points[2].current) < 1e-10);
    CHECK(pc.points[1].power > 0.0);
    CHECK(pc.linear_stopping_voltage() == Approx(pc.zero_bias_current / pc.conductance));
    CHECK(pc.linear_max_power() == Approx(pc.zero_bias_current * pc.zero_bias_current / (4 * pc.conductance)));
    CHECK(stop < pc.linear_stopping_voltage());
    for (const auto& pt : pc.points)
        CHECK(pt.power_linear == Approx(pt.dmu * pc.zero_bias_current - pt.dmu * pt.dmu * pc.conductance));
}

TEST_CASE("stopping voltage") {
    scenarios::SingleLevelParams p;
    p.gamma = 0.0;
    const Junction j0 = scenarios::single_level_junction(p);
    CHECK_THROWS_AS(stopping_voltage(j0, quad(j0)), PreconditionError);

    p.gamma = 0.05;
    const Junction j = scenarios::single_level_junction(p);
    const auto spec = quad(j);
    const double j0_current = transport(j, spec).through_current();
    const double G = differential_conductance(j, 0.0, 1e-4, spec);
    CHECK(stopping_voltage(j, spec) == Approx(j0_current / G).epsilon(0.05));
}

TEST_CASE("coefficient of performance") {
    CHECK(cop_from_currents(-1.0, 3.0) == Approx(0.5));
    CHECK(cop_from_currents(0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(cop_from_currents(1.0, -1.0), UndefinedCopError);
}

TEST_CASE("cooling map grid and cell count") {
    const JunctionBuilder b = [](double el, double er, double g) {
        scenarios::PairParams p;
        p.eps_L = el;
        p.eps_R = er;
        p.gamma = g;
        return scenarios::pair_junction(p);
    };
    const std::vector<double> grid{-4.0, 3.0, 10.0};
    const auto maps = cooling_map(b, grid, grid, {0.1}, {}, 2);
    REQUIRE(maps.size() == 1);
    CHECK(maps[0].heat_right.rows() == 3);
    CHECK(maps[0].heat_right(2, 1) < 0.0);
    for (int k = 0; k < 3; ++k) CHECK(maps[0].heat_right(k, k) > 0.0);
    int cells = 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) cells += maps[0].heat_right(r, c) < 0.0;
    CHECK(maps[0].cooling_cells() == cells);
}

TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hits(37, 0);
    parallel_for(37, 3, [&](int k) { hits[k] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(5, 2, [](int k) { if (k == 3) throw InvalidParameterError("boom"); }),
                    InvalidParameterError);
}

TEST_CASE("invalid arguments") {
    const Junction j = flat_level(0.0, 0.1, 0.0).to_junction();
    CHECK_THROWS_AS(elastic_current(j, Side::Left, 2, quad(j)), InvalidParameterError);
    CHECK_THROWS_AS(differential_conductance(j, 0.0, 0.0, quad(j)), InvalidParameterError);
    CHECK_THROWS_AS(inelastic_current(j, Mat::Zero(2, 2), Side::Left, 0, quad(j)), InvalidParameterError);
}
