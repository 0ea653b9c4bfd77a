// Serial reference vs OpenMP kernels on the sweeps behind the Lyapunov and bifurcation plots.

#include <benchmark/benchmark.h>

#include "pwmap/periodic.hpp"
#include "pwmap/sweep.hpp"

using namespace pwmap;

namespace {

const BRule kRule = BRule::parse("b=a");
const SweepGrid kGrid{0.05, 1.0, 200};

void lyapunov_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(lyapunov_sweep_serial(kRule, kGrid, 0.3, 1000, 20000));
}

void lyapunov_omp(benchmark::State& st)
{
    const ExecPolicy pol{static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(lyapunov_sweep(kRule, kGrid, 0.3, 1000, 20000, pol));
}

void bifurcation_serial(benchmark::State& st)
{
    for (auto _ : st) benchmark::DoNotOptimize(bifurcation_sweep_serial(kRule, kGrid, 0.3, 10000, 500));
}

void bifurcation_omp(benchmark::State& st)
{
    const ExecPolicy pol{static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(bifurcation_sweep(kRule, kGrid, 0.3, 10000, 500, pol));
}

// cycle search over a parameter grid, the heaviest per-point kernel
void cycle_grid(benchmark::State& st)
{
    std::vector<MapParams> ps;
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) ps.emplace_back(i / 8.0, j / 8.0);
    const ExecPolicy pol{static_cast<int>(st.range(0))};
    for (auto _ : st) {
        benchmark::DoNotOptimize(parallel_map(ps.size(), [&](std::size_t i) {
            return find_cycles(ps[i], 5, 10000).cycles.size();
        }, pol));
    }
}

}  // namespace

BENCHMARK(lyapunov_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(lyapunov_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(bifurcation_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bifurcation_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(cycle_grid)->Arg(1)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
