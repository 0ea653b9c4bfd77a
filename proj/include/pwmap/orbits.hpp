#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pwmap/map_core.hpp"

namespace pwmap {

inline constexpr std::size_t kDefaultEntryCap = 1'000'000;

// A = (1/2 - b/4, 1/2 + a/4], mapped onto itself by f when ab != 0.
struct InvariantInterval {
    double lo;  // excluded
    double hi;  // included

    [[nodiscard]] bool contains(double x) const noexcept { return x > lo && x <= hi; }
    [[nodiscard]] Interval as_interval() const noexcept { return {lo, hi, false, true}; }
};

// Throws DegenerateParameters if a = 0 or b = 0.
[[nodiscard]] InvariantInterval invariant_interval(const MapParams& p);

enum class OrbitTermination { MaxIterations, FixedPointReached, EnteredA };

struct OrbitPolicy {
    bool stop_at_fixed_point = false;  // stop once f(x_k) == x_k exactly
    bool stop_on_entry = false;        // stop at the first iterate inside A (ab != 0 only)
};

struct OrbitRecord {
    double x0 = 0.0;
    std::vector<double> iterates;               // iterates[0] == x0
    std::optional<std::size_t> entered_A_at;    // first k with iterates[k] in A
    OrbitTermination terminated = OrbitTermination::MaxIterations;
};

// Forward orbit x0, f(x0), ..., f^n(x0), truncated early according to the policy.
[[nodiscard]] OrbitRecord orbit(const MapParams& p, double x0, std::size_t n,
                                OrbitPolicy policy = {});

// Least n with f^n(x0) in A, or nullopt once cap iterations have been spent.
// Throws DegenerateParameters if ab = 0.
[[nodiscard]] std::optional<std::size_t> entry_time(const MapParams& p, double x0,
                                                    std::size_t cap = kDefaultEntryCap);

// a = 0 regime: the right-branch preimage of x under f_{0,b},
//     x' = (sqrt(b x + ((1 - b)/2)^2) + (b - 1)/2) / b.
// Accepts x in (1/2 - b/4, 1] so that it can be applied repeatedly; throws DomainError
// outside that range, for b outside (0, 1], or if the radicand is negative.
[[nodiscard]] double preimage_step(double b, double x);

// x, preimage_step(x), preimage_step(preimage_step(x)), ... (n + 1 values).
[[nodiscard]] std::vector<double> backward_orbit(double b, double x0, std::size_t n);

struct LeftIdentityAbsorption {
    std::size_t steps;  // first n with f^n(x0) <= 1/2
    double terminal;    // f^n(x0), fixed from then on
};
// a = 0, b != 0: orbit of x0 until it lands on the fixed half [0, 1/2].
// nullopt if that does not happen within cap steps.
[[nodiscard]] std::optional<LeftIdentityAbsorption> absorb_left_identity(
    const MapParams& p, double x0, std::size_t cap = kDefaultEntryCap);

// ---------------------------------------------------------------------------------------
// Two-species evolution operator on the simplex S^1.

struct SimplexState {
    double x;
    double y;

    // Throws SimplexViolation unless x, y >= 0 and |x + y - 1| <= 1e-12.
    static SimplexState make(double x, double y);
    static SimplexState from_x(double x) { return make(x, 1.0 - x); }
};

// Heredity coefficients P_{ij,k} of a two-type quadratic stochastic operator.
struct QsoCoefficients {
    double p11_1, p12_1, p22_1;  // P_{ij,1}; P_{ij,2} = 1 - P_{ij,1}
};

// x'_k = sum_{i,j} P_{ij,k} x_i x_j, both components evaluated independently.
[[nodiscard]] std::pair<double, double> qso_step(const QsoCoefficients& c, double x, double y);

// Volterra operator V_a, a in [-1, 1]: x' = x (1 + a y), y' = 1 - x'.
[[nodiscard]] std::vector<SimplexState> simplex_orbit(double a, SimplexState z0, std::size_t n);

// Piecewise operator: V_a on x <= 1/2 and V_{-b} on x > 1/2, which reduces to f_{a,b}.
[[nodiscard]] std::vector<SimplexState> simplex_piecewise_orbit(const MapParams& p,
                                                                SimplexState z0, std::size_t n);

struct SimplexCoefficients {
    double p12_1;
    double p12_2;
};
// State-dependent P_{12,1}(z), P_{12,2}(z) of the piecewise operator.
[[nodiscard]] SimplexCoefficients simplex_coefficients(const MapParams& p, SimplexState z);

inline constexpr double kSimplexDriftLimit = 1e-9;

// Iterates the piecewise operator as a full two-type QSO, both components computed
// independently from the stored state (x_n, 1 - x_n), and returns max_n |x'_n + y'_n - 1|. Throws SimplexViolation when the drift
// exceeds kSimplexDriftLimit.
[[nodiscard]] double measure_simplex_drift(const MapParams& p, SimplexState z0, std::size_t n);

}  // namespace pwmap
