#include "parampstat/multimode.hpp"
#include "parampstat/oracle.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/single_mode.hpp"
#include "parampstat/sweep.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace parampstat;

namespace
{

ValidatedParams ridge(double xi)
{
    ParampParams p;
    p.xi_mag = xi;
    return validate_params(p);
}

void BM_Bogoliubov(benchmark::State &state)
{
    const auto p = ridge(0.5);
    double nu = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(bogoliubov_coefficients(p, nu));
        nu += 1e-3;
    }
}
BENCHMARK(BM_Bogoliubov);

void BM_SingleMode(benchmark::State &state)
{
    const char *shapes[] = {"rectangular", "lorentzian", "gaussian", "sinc"};
    const auto f = make_filter(shapes[state.range(0)], 0.8, 0.1);
    const auto p = ridge(0.9);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(moments_single(p, f));
    }
    state.SetLabel(shapes[state.range(0)]);
}
BENCHMARK(BM_SingleMode)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_LimitRates(benchmark::State &state)
{
    const auto p = ridge(0.99);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(limit_rates(p, 1.0 / (4.0 * std::numbers::pi)));
    }
}
BENCHMARK(BM_LimitRates)->Unit(benchmark::kMicrosecond);

void BM_WindowModeSum(benchmark::State &state)
{
    const auto p = ridge(0.5);
    MultimodeConfig cfg;
    cfg.generator = {GeneratorKind::Window, 1.0 / static_cast<double>(state.range(0))};
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(moments_multimode_finite(p, cfg));
    }
}
BENCHMARK(BM_WindowModeSum)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_WickOracle(benchmark::State &state)
{
    const auto p = ridge(0.5);
    const auto f = make_filter("gaussian", 0.5);
    const auto d = discretize(p, f, default_oracle_grid(p, f));
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(wick_moments(d, 3));
    }
}
BENCHMARK(BM_WickOracle)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State &state)
{
    SweepConfig cfg;
    for (int k = 1; k <= 20; ++k)
    {
        cfg.xi_grid.push_back(k / 21.0);
    }
    cfg.scheme = SingleModeScheme{make_filter("gaussian", 0.5)};
    cfg.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(run_sweep(cfg));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
