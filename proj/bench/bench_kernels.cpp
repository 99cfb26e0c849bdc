// Serial reference vs OpenMP path for the pointwise kernels and a full flow.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "pjflow/kernels.hpp"
#include "pjflow/nonperiodic.hpp"

using namespace pjflow;

namespace {

std::vector<double> slopes(std::size_t n) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -8.0 + 16.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        c[i] = -2.0 * x * std::exp(-x * x);
    }
    return c;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_FlowMap(benchmark::State& state) {
    const auto c = slopes(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(c.size());
    const auto r = Exponent::from_r(2.5);
    for (auto _ : state) {
        kernels::flow_map(kernels::FlowQuantity::jacobian, c, 1.0, r, out, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Isometry(benchmark::State& state) {
    auto c = slopes(static_cast<std::size_t>(state.range(0)));
    for (auto& v : c) v = 1.0 + 0.5 * v;
    std::vector<double> out(c.size());
    for (auto _ : state) {
        kernels::isometry_line(c, 3.0, out, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FinslerIntegrand(benchmark::State& state) {
    const auto h = slopes(static_cast<std::size_t>(state.range(0)));
    std::vector<double> phi_x(h.size(), 1.25), out(h.size());
    for (auto _ : state) {
        kernels::finsler_integrand(phi_x, h, 1.5, out, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExactFlow(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u0 = GridFunction::sample(Domain::line(-8, 8), n, [](double x) { return std::exp(-x * x); });
    const auto params = FlowParams::uniform(Exponent::from_r(2.0), 1.0, 16);
    const int all = thread_limit();
    set_thread_limit(state.range(1) ? all : 1);
    for (auto _ : state) benchmark::DoNotOptimize(exact_flow(u0, params));
    set_thread_limit(all);
}

void args(benchmark::internal::Benchmark* b) {
    for (long n : {1L << 12, 1L << 16, 1L << 20}) {
        b->Args({n, 0});
        b->Args({n, 1});
    }
    b->ArgNames({"n", "parallel"});
}

}  // namespace

BENCHMARK(BM_FlowMap)->Apply(args);
BENCHMARK(BM_Isometry)->Apply(args);
BENCHMARK(BM_FinslerIntegrand)->Apply(args);
BENCHMARK(BM_ExactFlow)->Args({1 << 14, 0})->Args({1 << 14, 1})->ArgNames({"n", "parallel"});

BENCHMARK_MAIN();
