#include "pwmap/orbits.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "pwmap/errors.hpp"

namespace pwmap {

InvariantInterval invariant_interval(const MapParams& p)
{
    if (!p.is_nondegenerate()) {
        throw DegenerateParameters("invariant interval A requires a != 0 and b != 0");
    }
    return {kHalf - p.b() / 4.0, kHalf + p.a() / 4.0};
}

OrbitRecord orbit(const MapParams& p, double x0, std::size_t n, OrbitPolicy policy)
{
    OrbitRecord rec;
    rec.x0 = x0;
    rec.iterates.reserve(n + 1);

    std::optional<InvariantInterval> A;
    if (p.is_nondegenerate()) A = invariant_interval(p);

    double x = iterate_n(p, x0, 0);  // domain check
    rec.iterates.push_back(x);
    for (std::size_t k = 0;; ++k) {
        if (A && !rec.entered_A_at && A->contains(x)) {
            rec.entered_A_at = k;
            if (policy.stop_on_entry) {
                rec.terminated = OrbitTermination::EnteredA;
                return rec;
            }
        }
        if (k == n) break;
        const double next = eval_f(p, x);
        if (policy.stop_at_fixed_point && next == x) {
            rec.terminated = OrbitTermination::FixedPointReached;
            return rec;
        }
        x = next;
        rec.iterates.push_back(x);
    }
    rec.terminated = OrbitTermination::MaxIterations;
    return rec;
}

std::optional<std::size_t> entry_time(const MapParams& p, double x0, std::size_t cap)
{
    const InvariantInterval A = invariant_interval(p);
    double x = iterate_n(p, x0, 0);
    for (std::size_t k = 0; k <= cap; ++k) {
        if (A.contains(x)) return k;
        x = eval_f(p, x);
    }
    return std::nullopt;
}

double preimage_step(double b, double x)
{
    if (!(b > 0.0 && b <= 1.0)) {
        throw DomainError("preimage_step requires b in (0, 1], got " + std::to_string(b));
    }
    if (!(x > kHalf - b / 4.0 && x <= 1.0)) {
        throw DomainError("preimage_step requires x in (1/2 - b/4, 1], got " + std::to_string(x));
    }
    const double half_gap = (1.0 - b) / 2.0;
    const double radicand = b * x + half_gap * half_gap;
    if (radicand < 0.0) throw DomainError("preimage_step: negative radicand");
    return (std::sqrt(radicand) + (b - 1.0) / 2.0) / b;
}

std::vector<double> backward_orbit(double b, double x0, std::size_t n)
{
    std::vector<double> out{x0};
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back(preimage_step(b, out.back()));
    return out;
}

std::optional<LeftIdentityAbsorption> absorb_left_identity(const MapParams& p, double x0,
                                                           std::size_t cap)
{
    if (!p.is_left_identity()) {
        throw PreconditionError("absorb_left_identity requires a = 0 and b != 0");
    }
    double x = iterate_n(p, x0, 0);
    for (std::size_t k = 0; k <= cap; ++k) {
        if (x <= kHalf) return LeftIdentityAbsorption{k, x};
        x = eval_f(p, x);
    }
    return std::nullopt;
}

SimplexState SimplexState::make(double x, double y)
{
    if (!(x >= 0.0 && y >= 0.0) || std::fabs(x + y - 1.0) > 1e-12) {
        throw SimplexViolation("(" + std::to_string(x) + ", " + std::to_string(y) +
                               ") is not on the simplex");
    }
    return SimplexState{x, y};
}

std::pair<double, double> qso_step(const QsoCoefficients& c, double x, double y)
{
    const double xn = c.p11_1 * x * x + 2.0 * c.p12_1 * x * y + c.p22_1 * y * y;
    const double yn = (1.0 - c.p11_1) * x * x + 2.0 * (1.0 - c.p12_1) * x * y +
                      (1.0 - c.p22_1) * y * y;
    return {xn, yn};
}

std::vector<SimplexState> simplex_orbit(double a, SimplexState z0, std::size_t n)
{
    if (!(a >= -1.0 && a <= 1.0)) {
        throw DomainError("V_a requires a in [-1, 1], got " + std::to_string(a));
    }
    z0 = SimplexState::make(z0.x, z0.y);
    std::vector<SimplexState> out{z0};
    out.reserve(n + 1);
    double x = z0.x;
    for (std::size_t i = 0; i < n; ++i) {
        x = x * (1.0 + a * (1.0 - x));
        out.push_back({x, 1.0 - x});
    }
    return out;
}

std::vector<SimplexState> simplex_piecewise_orbit(const MapParams& p, SimplexState z0,
                                                  std::size_t n)
{
    z0 = SimplexState::make(z0.x, z0.y);
    std::vector<SimplexState> out{z0};
    out.reserve(n + 1);
    double x = z0.x;
    for (std::size_t i = 0; i < n; ++i) {
        x = eval_f(p, x);
        out.push_back({x, 1.0 - x});
    }
    return out;
}

SimplexCoefficients simplex_coefficients(const MapParams& p, SimplexState z)
{
    if (z.x <= kHalf) return {(1.0 + p.a()) / 2.0, (1.0 - p.a()) / 2.0};
    return {(1.0 - p.b()) / 2.0, (1.0 + p.b()) / 2.0};
}

double measure_simplex_drift(const MapParams& p, SimplexState z0, std::size_t n)
{
    // x + y squares under the two-type step, so an independently carried pair doubles its
    // rounding error every step. Each step therefore starts from the stored state (x, 1 - x)
    // and the drift of that single step is recorded.
    z0 = SimplexState::make(z0.x, z0.y);
    double x = z0.x;
    double worst = std::fabs(z0.x + z0.y - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = 1.0 - x;
        const SimplexCoefficients c = simplex_coefficients(p, {x, y});
        const auto [nx, ny] = qso_step({1.0, c.p12_1, 0.0}, x, y);
        worst = std::fmax(worst, std::fabs(nx + ny - 1.0));
        if (worst > kSimplexDriftLimit) {
            throw SimplexViolation("simplex drift " + std::to_string(worst) + " after " +
                                   std::to_string(i + 1) + " steps");
        }
        x = nx;
    }
    return worst;
}

}  // namespace pwmap
