// Serial versus OpenMP timings for the sweep dispatcher and the CTMC kernels.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "msj/kernels.hpp"
#include "msj/oracle.hpp"
#include "msj/sweep.hpp"

namespace {

msj::kernels::BoxChain make_chain(int cap) {
    msj::kernels::BoxChain chain;
    chain.dims = {cap + 1, cap + 1};
    chain.arrival = {1.0, 0.5};
    chain.service = {1.0, 1.0};
    const auto allocate = msj::snf_count_allocation(msj::SystemConfig{6, {{1.0, 1.0, 1}, {0.5, 1.0, 3}}});
    for (int b = 0; b <= cap; ++b)
        for (int a = 0; a <= cap; ++a) {
            const int x[2] = {a, b};
            const auto z = allocate(x);
            chain.z.insert(chain.z.end(), z.begin(), z.end());
        }
    return chain;
}

std::vector<double> uniform_pi(std::size_t states) { return std::vector<double>(states, 1.0 / states); }

void BM_ResidualSerial(benchmark::State& state) {
    const auto chain = make_chain(static_cast<int>(state.range(0)));
    const auto pi = uniform_pi(chain.num_states());
    for (auto _ : state) benchmark::DoNotOptimize(msj::kernels::balance_residual_serial(chain, pi));
}

void BM_ResidualParallel(benchmark::State& state) {
    const auto chain = make_chain(static_cast<int>(state.range(0)));
    const auto pi = uniform_pi(chain.num_states());
    for (auto _ : state) benchmark::DoNotOptimize(msj::kernels::balance_residual_parallel(chain, pi));
}

msj::SweepSpec small_sweep(int workers) {
    msj::SweepSpec spec;
    spec.n_list = {64};
    spec.policies = {msj::PolicyKind::FCFS, msj::PolicyKind::SNF};
    spec.seeds = {1, 2};
    spec.jobs = 20'000;
    spec.workers = workers;
    return spec;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = small_sweep(1);
    for (auto _ : state) benchmark::DoNotOptimize(msj::run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = small_sweep(msj::kernels::max_threads());
    for (auto _ : state) benchmark::DoNotOptimize(msj::run_sweep(spec));
}

}  // namespace

BENCHMARK(BM_ResidualSerial)->Arg(200)->Arg(800);
BENCHMARK(BM_ResidualParallel)->Arg(200)->Arg(800);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
