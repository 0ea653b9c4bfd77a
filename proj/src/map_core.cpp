#include "pwmap/map_core.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pwmap/errors.hpp"

namespace pwmap {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr int kRangeUlps = 4;

// Monotone integer key for ordered ulp distances across the sign boundary.
std::int64_t ordered_bits(double v) noexcept
{
    const auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
}

double checked_input(double x)
{
    if (!(x >= -kDomainSlack && x <= 1.0 + kDomainSlack)) {
        throw DomainError("x = " + std::to_string(x) + " lies outside [0, 1]");
    }
    return std::fmin(std::fmax(x, 0.0), 1.0);
}

}  // namespace

MapParams::MapParams(double a, double b) : a_(a), b_(b)
{
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
        throw DomainError("map parameters must satisfy 0 <= a, b <= 1 (got a = " +
                          std::to_string(a) + ", b = " + std::to_string(b) + ")");
    }
}

bool within_ulps(double value, double target, int max_ulps) noexcept
{
    if (std::isnan(value) || std::isnan(target)) return false;
    const std::int64_t d = ordered_bits(value) - ordered_bits(target);
    return (d < 0 ? -d : d) <= max_ulps;
}

double eval_branch(const MapParams& p, Branch branch, double x) noexcept
{
    if (branch == Branch::Left) return x * (1.0 + p.a() - p.a() * x);
    return x * (1.0 - p.b() + p.b() * x);
}

double eval_f(const MapParams& p, double x)
{
    x = checked_input(x);
    const double r = eval_branch(p, branch_of(x), x);
    if (r >= 0.0 && r <= 1.0) return r;
    if (r > 1.0 && within_ulps(r, 1.0, kRangeUlps)) return 1.0;
    if (r < 0.0 && within_ulps(r, 0.0, kRangeUlps)) return 0.0;
    throw NumericIntegrityError("f(" + std::to_string(x) + ") = " + std::to_string(r) +
                                " left [0, 1]");
}

double eval_branch_deriv(const MapParams& p, Branch branch, double x) noexcept
{
    if (branch == Branch::Left) return 1.0 + p.a() - 2.0 * p.a() * x;
    return 1.0 - p.b() + 2.0 * p.b() * x;
}

std::optional<double> eval_f_deriv(const MapParams& p, double x)
{
    x = checked_input(x);
    if (x == kHalf) return std::nullopt;
    return eval_branch_deriv(p, branch_of(x), x);
}

OneSidedDerivatives derivative_limits_at_half(const MapParams& p) noexcept
{
    return {eval_branch_deriv(p, Branch::Left, kHalf), eval_branch_deriv(p, Branch::Right, kHalf)};
}

double iterate_n(const MapParams& p, double x0, std::size_t n)
{
    double x = checked_input(x0);
    for (std::size_t i = 0; i < n; ++i) x = eval_f(p, x);
    return x;
}

ConjugacyCheck conjugate_map_check(const MapParams& p, double x)
{
    x = checked_input(x);
    const double lhs = 1.0 - eval_f(p, x);
    const double rhs = eval_f(p.swapped(), 1.0 - x);
    return {lhs, rhs, x == kHalf};
}

std::optional<double> left_preimage(const MapParams& p, double y)
{
    const double top = eval_branch(p, Branch::Left, kHalf);
    if (!(y >= 0.0 && y <= top)) return std::nullopt;
    const double a = p.a();
    // Root of a x^2 - (1 + a) x + y = 0 in [0, 1/2], written to avoid cancellation.
    const double disc = (1.0 + a) * (1.0 + a) - 4.0 * a * y;
    const double x = 2.0 * y / ((1.0 + a) + std::sqrt(std::fmax(disc, 0.0)));
    return std::fmin(x, kHalf);
}

std::optional<double> right_preimage(const MapParams& p, double y)
{
    const double bottom = eval_branch(p, Branch::Right, kHalf);
    if (!(y > bottom && y <= 1.0)) return std::nullopt;
    const double b = p.b();
    // Root of b x^2 + (1 - b) x - y = 0 in (1/2, 1].
    const double disc = (1.0 - b) * (1.0 - b) + 4.0 * b * y;
    double x = 2.0 * y / ((1.0 - b) + std::sqrt(disc));
    if (x <= kHalf) x = std::nextafter(kHalf, 1.0);
    return std::fmin(x, 1.0);
}

std::vector<double> branch_preimages(const MapParams& p, double y)
{
    std::vector<double> out;
    if (auto l = left_preimage(p, y)) out.push_back(*l);
    if (auto r = right_preimage(p, y)) out.push_back(*r);
    return out;
}

}  // namespace pwmap
