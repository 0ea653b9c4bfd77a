#pragma once

// The two-parameter piecewise map on [0, 1]:
//
//     f(x) = x (1 + a - a x)   for 0 <= x <= 1/2
//     f(x) = x (1 - b + b x)   for 1/2 < x <= 1
//
// with a, b in [0, 1]. f has a single jump at x = 1/2 whenever (a, b) != (0, 0).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pwmap {

inline constexpr double kHalf = 0.5;

class MapParams {
public:
    // Throws DomainError unless both values lie in [0, 1].
    MapParams(double a, double b);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }

    [[nodiscard]] bool is_identity() const noexcept { return a_ == 0.0 && b_ == 0.0; }
    [[nodiscard]] bool is_left_identity() const noexcept { return a_ == 0.0 && b_ != 0.0; }
    [[nodiscard]] bool is_nondegenerate() const noexcept { return a_ != 0.0 && b_ != 0.0; }

    // Parameters of the conjugate map under h(x) = 1 - x.
    [[nodiscard]] MapParams swapped() const noexcept { return MapParams(b_, a_, Unchecked{}); }

    friend bool operator==(const MapParams&, const MapParams&) = default;

private:
    struct Unchecked {};
    MapParams(double a, double b, Unchecked) noexcept : a_(a), b_(b) {}

    double a_;
    double b_;
};

enum class Branch { Left, Right };

[[nodiscard]] constexpr Branch branch_of(double x) noexcept
{
    return x <= kHalf ? Branch::Left : Branch::Right;
}

struct BranchPoint {
    double x;
    Branch branch;

    [[nodiscard]] static BranchPoint at(double x) noexcept { return {x, branch_of(x)}; }
};

// Interval with explicit endpoint inclusivity. An empty interval is allowed (lo > hi, or
// lo == hi with an open end).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    [[nodiscard]] bool contains(double x) const noexcept
    {
        const bool above = lo_closed ? x >= lo : x > lo;
        const bool below = hi_closed ? x <= hi : x < hi;
        return above && below;
    }
    [[nodiscard]] bool empty() const noexcept
    {
        return lo > hi || (lo == hi && !(lo_closed && hi_closed));
    }
    [[nodiscard]] double width() const noexcept { return empty() ? 0.0 : hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Branch polynomial evaluated without looking at which side of 1/2 x lies on.
[[nodiscard]] double eval_branch(const MapParams& p, Branch branch, double x) noexcept;

// f(x). Throws DomainError if x lies outside [0, 1] by more than 1e-12 and
// NumericIntegrityError if the result leaves [0, 1] by more than 4 ulps.
[[nodiscard]] double eval_f(const MapParams& p, double x);

// f'(x) on either open branch; std::nullopt at x = 1/2 where f is discontinuous.
[[nodiscard]] std::optional<double> eval_f_deriv(const MapParams& p, double x);

[[nodiscard]] double eval_branch_deriv(const MapParams& p, Branch branch, double x) noexcept;

struct OneSidedDerivatives {
    double left;   // limit of 1 + a - 2 a x as x -> 1/2-
    double right;  // limit of 1 - b + 2 b x as x -> 1/2+
};
[[nodiscard]] OneSidedDerivatives derivative_limits_at_half(const MapParams& p) noexcept;

// f^n(x0).
[[nodiscard]] double iterate_n(const MapParams& p, double x0, std::size_t n);

struct ConjugacyCheck {
    double lhs;          // h(f_{a,b}(x))
    double rhs;          // f_{b,a}(h(x))
    bool at_boundary;    // x == 1/2, where branch inclusivity flips under h
};
[[nodiscard]] ConjugacyCheck conjugate_map_check(const MapParams& p, double x);

// Every x in [0, 1] with f(x) = y, solved per branch from the branch quadratic.
// At most one preimage per branch; results are ordered left branch first.
[[nodiscard]] std::vector<double> branch_preimages(const MapParams& p, double y);

// Inverse of one branch; nullopt if y is not in that branch's image.
[[nodiscard]] std::optional<double> left_preimage(const MapParams& p, double y);
[[nodiscard]] std::optional<double> right_preimage(const MapParams& p, double y);

// Within max_ulps representable doubles of target.
[[nodiscard]] bool within_ulps(double value, double target, int max_ulps) noexcept;

}  // namespace pwmap
