#include <benchmark/benchmark.h>

#include <complex>

#include "polyclark/clark.hpp"
#include "polyclark/density.hpp"
#include "polyclark/gcd.hpp"
#include "polyclark/levelset.hpp"
#include "polyclark/matrixball.hpp"
#include "polyclark/roots.hpp"

using namespace polyclark;

namespace {

UniPoly bench_poly() {
    return UniPoly::from_roots({std::polar(1.0, 0.3), std::polar(1.0, 2.1),
                                std::polar(0.4, 1.0), std::polar(2.2, -0.7)});
}

void BM_roots_on_circle(benchmark::State& state) {
    UniPoly p = bench_poly();
    for (auto _ : state) benchmark::DoNotOptimize(roots_on_circle(p));
}
BENCHMARK(BM_roots_on_circle);

void BM_approx_gcd(benchmark::State& state) {
    UniPoly g = UniPoly::from_roots({std::polar(1.3, 0.4), std::polar(0.6, -1.2)});
    UniPoly a = UniPoly::from_roots({2.0, Complex(0.0, 1.5)}) * g;
    UniPoly b = UniPoly::from_roots({-1.8, Complex(0.3, -0.9)}) * g;
    for (auto _ : state) benchmark::DoNotOptimize(approx_gcd(a, b));
}
BENCHMARK(BM_approx_gcd);

void BM_fiber_measure(benchmark::State& state) {
    RationalInnerFn phi = rifs::favorite_rif11();
    Complex alpha = std::polar(1.0, 0.9);
    std::vector<Complex> rep{Complex(1.0, 0.0), std::polar(1.0, 1.234)};
    for (auto _ : state) benchmark::DoNotOptimize(fiber_clark_measure(phi, alpha, rep));
}
BENCHMARK(BM_fiber_measure);

void BM_assemble_polydisc(benchmark::State& state) {
    RationalInnerFn phi = rifs::favorite_rif11();
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_polydisc(phi, Complex(0.0, 1.0), grid, 7));
    state.SetItemsProcessed(state.iterations() * grid);
}
BENCHMARK(BM_assemble_polydisc)->Arg(64)->Arg(512);

void BM_trace_level_set(benchmark::State& state) {
    RationalInnerFn phi = rifs::favorite_rif11();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_level_set(phi, Complex(0.0, 1.0), n));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_trace_level_set)->Arg(512)->Arg(2048);

void BM_gram_residual(benchmark::State& state) {
    RationalInnerFn phi = rifs::favorite_rif11();
    SampledClarkMeasure mu = assemble_polydisc(phi, Complex(0.0, 1.0), 256, 7);
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gram_residual(mu, 1, N));
}
BENCHMARK(BM_gram_residual)->Arg(2)->Arg(6);

void BM_haar_unitary(benchmark::State& state) {
    SplitMix64 rng(99);
    for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(rng));
}
BENCHMARK(BM_haar_unitary);

void BM_assemble_matrix_ball(benchmark::State& state) {
    RationalInnerFn phi = rifs::i22();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_matrix_ball(phi, Complex(1.0, 0.0), n, 7));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_assemble_matrix_ball)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
