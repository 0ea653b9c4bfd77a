#pragma once

// Invariant suites run by `pwmap verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "pwmap/io.hpp"
#include "pwmap/sweep.hpp"

namespace pwmap {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool report_only = false;  // informational; never fails the suite
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const noexcept;
};

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    ExecPolicy exec{};
};

[[nodiscard]] const std::vector<std::string>& suite_names();  // without "all"

// Throws PreconditionError for an unknown suite name.
[[nodiscard]] std::vector<SuiteReport> run_suites(const std::string& suite,
                                                  const VerifyOptions& opts);

[[nodiscard]] SuiteReport verify_map(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_conjugacy(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_invariant_set(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_periodic(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_odd_periods(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_lyapunov(const VerifyOptions& opts);
[[nodiscard]] SuiteReport verify_oracle_vs_theorem(const VerifyOptions& opts);

[[nodiscard]] Json to_json(const std::vector<SuiteReport>& reports);
[[nodiscard]] std::string to_text(const std::vector<SuiteReport>& reports);

// Parameter points with a in (0, 1], a <= b <= 4a/(4 - a^2): `count_a` values of a, each
// paired with `count_t` values of b spread over the admissible range, both ends included.
[[nodiscard]] std::vector<MapParams> lemma_region_points(std::size_t count_a, std::size_t count_t);

}  // namespace pwmap
