#pragma once

// Lyapunov exponents, one-parameter families b = g(a) and bifurcation data.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwmap/map_core.hpp"

namespace pwmap {

inline constexpr std::size_t kDefaultBurn = 10'000;
inline constexpr std::size_t kDefaultLyapunovIterations = 100'000;
inline constexpr std::size_t kDefaultKeep = 500;
inline constexpr double kDefaultSweepX0 = 0.3;
inline constexpr double kDefaultBandGap = 0.01;

struct LyapunovEstimate {
    double lambda = 0.0;        // nats per iteration
    std::size_t n_used = 0;
    std::size_t n_skipped = 0;  // iterates exactly at 1/2, where f' does not exist
    double x0 = 0.0;
};

// Average of ln|f'(x_i)| over the n iterates following `burn` transient steps.
// Requires x0 in (0, 1), x0 != 1/2 and n >= 1000.
[[nodiscard]] LyapunovEstimate lyapunov(const MapParams& p, double x0,
                                        std::size_t burn = kDefaultBurn,
                                        std::size_t n = kDefaultLyapunovIterations);

// b as a function of a.
class BRule {
public:
    enum class Kind {
        Equal,          // b = a
        Half,           // b = a/2
        TwoThirds,      // b = 2a/3
        ThreeQuarters,  // b = 3a/4
        FourFifths,     // b = 4a/5
        FiveSixths,     // b = 5a/6
        Rational1,      // b = a/(4 - a^2)
        Rational5,      // b = 5a/(4 - a^2)
        Critical,       // b = 4a/(4 - a^2)
        Const,          // b = v
        Ratio,          // b = r a
    };

    explicit BRule(Kind kind, double value = 0.0) : kind_(kind), value_(value) {}

    // Accepts the canonical names produced by name(), e.g. "b=a", "b=2a/3",
    // "b=a/(4-a^2)", "b=0.25" (constant) and "b=0.7a" (ratio).
    static BRule parse(std::string_view text);

    [[nodiscard]] double operator()(double a) const noexcept;
    [[nodiscard]] std::string name() const;
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    Kind kind_;
    double value_;
};

// Equally spaced a-values, both ends included.
struct SweepGrid {
    double a_min = 0.0;
    double a_max = 1.0;
    std::size_t steps = 1;

    [[nodiscard]] double at(std::size_t i) const noexcept;
};

// Throws PreconditionError unless 0 < a_min <= a_max <= 1 and steps >= 1, and
// RuleRangeError if g(a) falls outside [0, 1] at any grid point.
void validate_sweep(const BRule& rule, const SweepGrid& grid);

struct LyapunovRow {
    double a;
    double b;
    LyapunovEstimate estimate;
    bool degenerate;  // ab = 0; non-negativity still holds but lambda may be 0
};

struct BifurcationSample {
    double a;
    double b;
    std::vector<double> retained;
};

// Iterates from x0 for `burn` steps and records the next `keep` iterates. keep >= 100.
[[nodiscard]] BifurcationSample bifurcation_sample(const MapParams& p, double x0,
                                                   std::size_t burn, std::size_t keep);

// Number of maximal runs in the sorted values separated by gaps larger than `gap`.
[[nodiscard]] std::size_t band_count(std::span<const double> retained, double gap);

}  // namespace pwmap
