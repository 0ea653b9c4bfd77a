#pragma once

// Parameter-sweep kernels. Every grid point is independent, so the OpenMP versions fill a
// pre-sized result vector by index; output order and values never depend on the thread
// count. The *_serial functions are the plain-loop reference the parallel kernels are
// tested against.

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include "pwmap/chaos.hpp"

namespace pwmap {

struct ExecPolicy {
    int threads = 0;  // 0 = OpenMP default
};

// Threads actually used for a policy.
[[nodiscard]] int effective_threads(ExecPolicy policy) noexcept;

// out[i] = fn(i) for i in [0, count), evaluated in parallel. The first exception thrown by
// any fn(i) is rethrown after the loop.
template <class Fn>
[[nodiscard]] auto parallel_map(std::size_t count, Fn&& fn, ExecPolicy policy = {})
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
    using T = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<T> out(count);
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(count);
    [[maybe_unused]] const int threads = effective_threads(policy);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(pwmap_parallel_map_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

[[nodiscard]] std::vector<LyapunovRow> lyapunov_sweep(const BRule& rule, const SweepGrid& grid,
                                                      double x0, std::size_t burn, std::size_t n,
                                                      ExecPolicy policy = {});
[[nodiscard]] std::vector<LyapunovRow> lyapunov_sweep_serial(const BRule& rule,
                                                             const SweepGrid& grid, double x0,
                                                             std::size_t burn, std::size_t n);

[[nodiscard]] std::vector<BifurcationSample> bifurcation_sweep(const BRule& rule,
                                                               const SweepGrid& grid, double x0,
                                                               std::size_t burn, std::size_t keep,
                                                               ExecPolicy policy = {});
[[nodiscard]] std::vector<BifurcationSample> bifurcation_sweep_serial(const BRule& rule,
                                                                      const SweepGrid& grid,
                                                                      double x0, std::size_t burn,
                                                                      std::size_t keep);

}  // namespace pwmap
