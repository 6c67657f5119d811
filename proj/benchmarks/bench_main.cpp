#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hslab/norms.hpp"
#include "hslab/rearrange.hpp"
#include "hslab/solver.hpp"
#include "hslab/spectral.hpp"

using namespace hslab;

namespace {

Field random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    Field u = make_field(g);
    for (double& v : u.values) v = ud(rng);
    return u;
}

void BM_sd_rearrangement_1d(benchmark::State& state) {
    const auto g = make_grid(1, static_cast<int>(state.range(0)), 10.0);
    const Field u = random_field(g, 1);
    for (auto _ : state) benchmark::DoNotOptimize(sd_rearrangement(u));
}

void BM_sd_rearrangement_2d(benchmark::State& state) {
    const auto g = make_grid(2, static_cast<int>(state.range(0)), 10.0);
    const Field u = random_field(g, 2);
    for (auto _ : state) benchmark::DoNotOptimize(sd_rearrangement(u));
}

void BM_fractional_power(benchmark::State& state) {
    const auto g = make_grid(1, static_cast<int>(state.range(0)), 10.0);
    SpectralPlan plan(g);
    const Field u = random_field(g, 3);
    for (auto _ : state) benchmark::DoNotOptimize(fractional_power(u, 0.5, plan));
}

void BM_riesz_potential(benchmark::State& state) {
    const auto g = make_grid(1, static_cast<int>(state.range(0)), 10.0);
    SpectralPlan plan(g);
    const Field u = random_field(g, 4);
    for (auto _ : state) benchmark::DoNotOptimize(riesz_potential(u, 0.5, plan));
}

void BM_gradient_flow_small(benchmark::State& state) {
    const auto cfg = make_exponents(1, 0.3, 3.0);
    const auto g = make_grid(1, static_cast<int>(state.range(0)), 30.0);
    SpectralPlan plan(g);
    const Field init = default_init(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(gradient_flow_minimize(init, cfg, plan));
}

}  // namespace

BENCHMARK(BM_sd_rearrangement_1d)->Arg(4096)->Arg(65536);
BENCHMARK(BM_sd_rearrangement_2d)->Arg(64)->Arg(256);
BENCHMARK(BM_fractional_power)->Arg(4096)->Arg(16384);
BENCHMARK(BM_riesz_potential)->Arg(4096)->Arg(16384);
BENCHMARK(BM_gradient_flow_small)->Arg(512)->Arg(1024);

BENCHMARK_MAIN();
