#pragma once

// Fixed points, periodic orbits and their stability.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwmap/map_core.hpp"

namespace pwmap {

enum class Stability { Attracting, Repelling, Indifferent, UndefinedDerivative };

[[nodiscard]] const char* to_string(Stability s) noexcept;

struct CycleRecord {
    std::vector<double> points;       // points[i + 1] = f(points[i]); smallest point first
    std::size_t prime_period = 0;
    std::optional<double> multiplier; // product of f' along the cycle; empty if a point is 1/2
    Stability classification = Stability::UndefinedDerivative;
};

inline constexpr double kCycleTolerance = 1e-9;

struct FixedPointSet {
    std::vector<double> isolated;
    std::optional<Interval> continuum;

    [[nodiscard]] bool contains(double x) const noexcept;
};

// ab != 0: {0, 1}. a = 0: [0, 1/2] and {1}. b = 0: {0} and (1/2, 1]. a = b = 0: [0, 1].
[[nodiscard]] FixedPointSet fixed_points(const MapParams& p);

// Multiplier and stability class from the product of branch derivatives.
[[nodiscard]] CycleRecord classify_cycle(const MapParams& p, CycleRecord c);

// ---------------------------------------------------------------------------------------
// Period two.

// Raw closed-form candidate x2 = (ab + 2b - sqrt(ab(ab + 4))) / (2ab) and its image
// f(x2) = 1/2 + (-2a + sqrt(ab(ab + 4))) / (2ab), before any range check. Requires ab != 0.
struct TwoCycleCandidate {
    double x2;
    double fx2;
};
[[nodiscard]] TwoCycleCandidate two_cycle_candidate(const MapParams& p);

// The 2-cycle {x2, f(x2)} if 0 < x2 <= 1/2 and 1/2 < f(x2) < 1, otherwise nullopt.
// Throws DegenerateParameters if ab = 0.
[[nodiscard]] std::optional<CycleRecord> two_cycle_closed_form(const MapParams& p);

// The analytic existence predicates, evaluated literally.
struct TwoCycleConditions {
    bool interval_form;  // a in (0, 1), b < a / (1 - a)
    bool lower_point;    // a / (a + 1) < b <= 4a / (4 - a^2)
    bool upper_point;    // b / (b + 1) < a < 4b / (4 - b^2)

    [[nodiscard]] bool point_form() const noexcept { return lower_point && upper_point; }
};
[[nodiscard]] TwoCycleConditions two_cycle_conditions(const MapParams& p) noexcept;

struct TwoCycleOracleResult {
    bool exists = false;
    bool conclusive = true;
    std::vector<double> roots;  // accepted roots of f(f(x)) = x off Fix(f)
};

// Brute-force decision: scans g(x) = f(f(x)) - x at `grid` cells over [0, 1] using f itself,
// splitting cells at discontinuities of f o f and bisecting every sign change.
// Independent of the closed form. Requires ab != 0 and grid >= 1000.
[[nodiscard]] TwoCycleOracleResult two_cycle_region_oracle(const MapParams& p,
                                                           std::size_t grid);

// ---------------------------------------------------------------------------------------
// General periods.

inline constexpr std::size_t kMaxSearchPeriod = 12;

struct CycleSearchResult {
    std::vector<CycleRecord> cycles;  // ordered by period, then by smallest point
    bool resolution_warning = false;  // two distinct roots closer than 10 / grid
};

// Sorted discontinuities of f^period: every x with f^k(x) = 1/2 for some k < period.
[[nodiscard]] std::vector<double> continuity_breakpoints(const MapParams& p,
                                                         std::size_t period);

// All cycles with prime period in `periods`. Each period p is searched by scanning
// f^p(x) - x for sign changes on every continuity interval of f^p (composition along the
// interval's itinerary, so endpoint limits are exact) and bisecting each bracket.
// Requires ab != 0, periods in [1, 12] and grid >= 10^4.
[[nodiscard]] CycleSearchResult find_cycles_with_periods(const MapParams& p,
                                                         const std::vector<std::size_t>& periods,
                                                         std::size_t grid);

[[nodiscard]] CycleSearchResult find_cycles(const MapParams& p, std::size_t max_period,
                                            std::size_t grid);

// Cycles of odd prime period 3, 5, ..., max_odd. For ab = 0 the map has no cycles of
// period > 1 and the result is empty without searching.
[[nodiscard]] std::vector<CycleRecord> odd_period_scan(const MapParams& p, std::size_t max_odd,
                                                       std::size_t grid);

// ---------------------------------------------------------------------------------------
// Transition structure inside A.

// a in (0, 1], a <= b <= 4a / (4 - a^2).
[[nodiscard]] bool lemma_region(const MapParams& p) noexcept;

struct LemmaSets {
    Interval A1, A2, A3, A4;
    Interval K1;  // (1/2 - b/4, 1/2] minus (A1 u A2)
    Interval K2;  // (1/2, 1/2 + a/4] minus (A3 u A4)
};

// Endpoints from the closed-form products. Throws PreconditionError outside lemma_region.
[[nodiscard]] LemmaSets lemma_sets(const MapParams& p);

struct InclusionCheck {
    std::string claim;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::vector<std::pair<double, double>> counterexamples;  // (x, f(x)), first few only

    [[nodiscard]] bool holds() const noexcept { return violations == 0; }
};

struct TransitionReport {
    LemmaSets sets;
    std::vector<InclusionCheck> checks;

    [[nodiscard]] bool all_hold() const noexcept;
};

// Samples the midpoints of `samples` equal cells of each set and checks
//   f(A1) in A2 u A3, f(A2) in A4, f(A3) in A1, f(A4) in A2 u A3,
// plus the side alternation f(K1) misses K1 and f(K2) misses K2.
[[nodiscard]] TransitionReport transition_check(const MapParams& p, std::size_t samples);

}  // namespace pwmap
