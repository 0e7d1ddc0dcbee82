// Microbenchmarks for the hot inner loops: raw block generation, variate
// transforms, lattice sampling, and the quadrature-backed operators. Run
// with --benchmark_filter=... to pick a subset.

#include <benchmark/benchmark.h>

#include <array>
#include <cstdint>
#include <vector>

#include "stablelat/frac_calc.hpp"
#include "stablelat/function_spec.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/lfsm.hpp"
#include "stablelat/measure_sim.hpp"
#include "stablelat/rng.hpp"
#include "stablelat/stable.hpp"

namespace sl = stablelat;

namespace {

void BM_PhiloxBlock(benchmark::State& state) {
    std::array<std::uint64_t, 4> counter{1, 2, 3, 4};
    const std::array<std::uint64_t, 2> key{42, 7};
    for (auto _ : state) {
        counter[0]++;
        benchmark::DoNotOptimize(sl::philox::block(counter, key));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_SasDraw(benchmark::State& state) {
    const double alpha = static_cast<double>(state.range(0)) / 10.0;
    const sl::NoiseDraw draw(sl::NoiseModel::exact_sas(alpha));
    sl::CounterRng rng({2026, 0});
    for (auto _ : state) {
        const auto w = rng.next_word_pair();
        benchmark::DoNotOptimize(draw(w[0], w[1]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SasDraw)->Arg(12)->Arg(15)->Arg(20);

void BM_ParetoDraw(benchmark::State& state) {
    const sl::NoiseDraw draw(sl::NoiseModel::symmetric_pareto(1.5));
    sl::CounterRng rng({2026, 0});
    for (auto _ : state) {
        const auto w = rng.next_word_pair();
        benchmark::DoNotOptimize(draw(w[0], w[1]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParetoDraw);

void BM_SampleIntegral(benchmark::State& state) {
    const auto spec = sl::FunctionSpec::gauss_bump({0.0}, 1.0);
    const auto coeffs = sl::discretize(spec, 1.0 / 16.0, 1.5);
    const auto noise = sl::NoiseModel::symmetric_pareto(1.5);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sl::sample_integral(coeffs, noise, n, {seed++, 0}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) *
                            static_cast<std::int64_t>(coeffs.entries().size()));
}
BENCHMARK(BM_SampleIntegral)->Arg(256)->Arg(4096);

void BM_Discretize(benchmark::State& state) {
    const auto spec = sl::FunctionSpec::gauss_bump({0.0}, 1.0);
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sl::discretize(spec, h, 1.5));
    }
}
BENCHMARK(BM_Discretize)->Arg(16)->Arg(64);

void BM_ConvolvePoint(benchmark::State& state) {
    const auto spec = sl::FunctionSpec::gauss_bump({0.0}, 1.0);
    const auto fn = sl::make_callable(spec);
    const sl::FracKernel kernel(0.4, 1.0, 0.0);
    double x = 0.0;
    for (auto _ : state) {
        x = x < 2.0 ? x + 1.0 / 64.0 : -2.0;
        benchmark::DoNotOptimize(sl::convolve_point(fn, kernel, x));
    }
}
BENCHMARK(BM_ConvolvePoint);

void BM_LfsmDiscretize(benchmark::State& state) {
    const sl::LfsmParams params(1.5, 0.7, 1.0, 0.0);
    const auto spec = sl::lfsm_time_kernel(params, 1.0);
    const double h = 1.0 / 32.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sl::discretize(spec, h, params.alpha, 1e-3, sl::Box::interval(-32.0, 2.0)));
    }
}
BENCHMARK(BM_LfsmDiscretize);

}  // namespace
