// bench_transport.cpp: timings of the hot paths: Green's functions, transfer assembly, currents, oracle

#include <benchmark/benchmark.h>

#include "mtransport/mtransport.hpp"

using namespace mt;

namespace {

Junction single_level(double gamma) {
    scenarios::SingleLevelParams p;
    p.gamma = gamma;
    p.eps_d = 0.5;
    return scenarios::single_level_junction(p);
}

Junction pair(double gamma) {
    scenarios::PairParams p;
    p.gamma = gamma;
    p.T_L = p.T_R = 1.0;
    return scenarios::pair_junction(p);
}

// Tight-binding chain of n sites with a density monitor on every site.
Junction chain(int n, double gamma) {
    Junction j = single_level(gamma);
    const Reservoir left = j.left, right = j.right;
    j.h = Mat::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) j.h(k, k + 1) = j.h(k + 1, k) = -0.5;
    j.O = Mat::Identity(n, n);
    j.left = left;
    j.right = right;
    j.right.hyb.coupling_sites = {{n - 1, {1.0, 0.0}}};
    return j;
}

void BM_DressedGreens(benchmark::State& state) {
    const Junction j = chain(static_cast<int>(state.range(0)), 1.0);
    double w = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dressed_greens(j, w));
        w = w > 1.0 ? -1.0 : w + 1e-3;
    }
}
BENCHMARK(BM_DressedGreens)->Arg(1)->Arg(2)->Arg(8)->Arg(32);

void BM_AssembleTransfer(benchmark::State& state) {
    const Junction j = chain(static_cast<int>(state.range(0)), 1.0);
    const QuadratureSpec q = junction_quadrature(j, {});
    for (auto _ : state) benchmark::DoNotOptimize(assemble_transfer(j, q));
}
BENCHMARK(BM_AssembleTransfer)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TransportSingleLevel(benchmark::State& state) {
    const Junction j = single_level(static_cast<double>(state.range(0)) / 10.0);
    const QuadratureSpec q = junction_quadrature(j, {});
    for (auto _ : state) benchmark::DoNotOptimize(transport(j, q));
}
BENCHMARK(BM_TransportSingleLevel)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TransportPair(benchmark::State& state) {
    const Junction j = pair(static_cast<double>(state.range(0)) / 10.0);
    const QuadratureSpec q = junction_quadrature(j, {});
    for (auto _ : state) benchmark::DoNotOptimize(transport(j, q));
}
BENCHMARK(BM_TransportPair)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_OracleSteadyState(benchmark::State& state) {
    const DiscretizedJunction dj = discretize(single_level(1.0), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(dj));
}
BENCHMARK(BM_OracleSteadyState)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
