#include "pwmap/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pwmap {

namespace {

LyapunovRow lyapunov_row(const BRule& rule, const SweepGrid& grid, std::size_t i, double x0,
                         std::size_t burn, std::size_t n)
{
    const double a = grid.at(i);
    const MapParams p(a, rule(a));
    return {p.a(), p.b(), lyapunov(p, x0, burn, n), !p.is_nondegenerate()};
}

BifurcationSample bifurcation_row(const BRule& rule, const SweepGrid& grid, std::size_t i,
                                  double x0, std::size_t burn, std::size_t keep)
{
    const double a = grid.at(i);
    return bifurcation_sample(MapParams(a, rule(a)), x0, burn, keep);
}

}  // namespace

int effective_threads(ExecPolicy policy) noexcept
{
#ifdef _OPENMP
    return policy.threads > 0 ? policy.threads : omp_get_max_threads();
#else
    (void)policy;
    return 1;
#endif
}

std::vector<LyapunovRow> lyapunov_sweep(const BRule& rule, const SweepGrid& grid, double x0,
                                        std::size_t burn, std::size_t n, ExecPolicy policy)
{
    validate_sweep(rule, grid);
    return parallel_map(
        grid.steps, [&](std::size_t i) { return lyapunov_row(rule, grid, i, x0, burn, n); },
        policy);
}

std::vector<LyapunovRow> lyapunov_sweep_serial(const BRule& rule, const SweepGrid& grid,
                                               double x0, std::size_t burn, std::size_t n)
{
    validate_sweep(rule, grid);
    std::vector<LyapunovRow> out;
    out.reserve(grid.steps);
    for (std::size_t i = 0; i < grid.steps; ++i) {
        out.push_back(lyapunov_row(rule, grid, i, x0, burn, n));
    }
    return out;
}

std::vector<BifurcationSample> bifurcation_sweep(const BRule& rule, const SweepGrid& grid,
                                                 double x0, std::size_t burn, std::size_t keep,
                                                 ExecPolicy policy)
{
    validate_sweep(rule, grid);
    return parallel_map(
        grid.steps, [&](std::size_t i) { return bifurcation_row(rule, grid, i, x0, burn, keep); },
        policy);
}

std::vector<BifurcationSample> bifurcation_sweep_serial(const BRule& rule, const SweepGrid& grid,
                                                        double x0, std::size_t burn,
                                                        std::size_t keep)
{
    validate_sweep(rule, grid);
    std::vector<BifurcationSample> out;
    out.reserve(grid.steps);
    for (std::size_t i = 0; i < grid.steps; ++i) {
        out.push_back(bifurcation_row(rule, grid, i, x0, burn, keep));
    }
    return out;
}

}  // namespace pwmap
