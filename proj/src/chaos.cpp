#include "pwmap/chaos.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "pwmap/errors.hpp"

namespace pwmap {

namespace {

struct NamedRule {
    const char* name;
    BRule::Kind kind;
};

constexpr NamedRule kNamedRules[] = {
    {"b=a", BRule::Kind::Equal},
    {"b=a/2", BRule::Kind::Half},
    {"b=2a/3", BRule::Kind::TwoThirds},
    {"b=3a/4", BRule::Kind::ThreeQuarters},
    {"b=4a/5", BRule::Kind::FourFifths},
    {"b=5a/6", BRule::Kind::FiveSixths},
    {"b=a/(4-a^2)", BRule::Kind::Rational1},
    {"b=5a/(4-a^2)", BRule::Kind::Rational5},
    {"b=4a/(4-a^2)", BRule::Kind::Critical},
};

bool parse_number(std::string_view s, double& out)
{
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

std::string shortest(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

LyapunovEstimate lyapunov(const MapParams& p, double x0, std::size_t burn, std::size_t n)
{
    if (!(x0 > 0.0 && x0 < 1.0) || x0 == kHalf) {
        throw DomainError("lyapunov requires x0 in (0, 1) \\ {1/2}, got " + std::to_string(x0));
    }
    if (n < 1000) throw PreconditionError("lyapunov requires n >= 1000");

    double x = x0;
    for (std::size_t i = 0; i < burn; ++i) x = eval_f(p, x);

    LyapunovEstimate est;
    est.x0 = x0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x == kHalf) {
            ++est.n_skipped;
        } else {
            sum += std::log(std::fabs(eval_branch_deriv(p, branch_of(x), x)));
            ++est.n_used;
        }
        x = eval_f(p, x);
    }
    est.lambda = est.n_used > 0 ? sum / static_cast<double>(est.n_used) : 0.0;
    return est;
}

BRule BRule::parse(std::string_view text)
{
    for (const auto& r : kNamedRules) {
        if (text == r.name) return BRule(r.kind);
    }
    if (text.starts_with("b=")) {
        std::string_view body = text.substr(2);
        double v = 0.0;
        if (body.ends_with("a") && parse_number(body.substr(0, body.size() - 1), v)) {
            return BRule(Kind::Ratio, v);
        }
        if (body.ends_with("*a") && parse_number(body.substr(0, body.size() - 2), v)) {
            return BRule(Kind::Ratio, v);
        }
        if (parse_number(body, v)) return BRule(Kind::Const, v);
    }
    throw PreconditionError("unknown b-rule '" + std::string(text) + "'");
}

double BRule::operator()(double a) const noexcept
{
    switch (kind_) {
    case Kind::Equal: return a;
    case Kind::Half: return a / 2.0;
    case Kind::TwoThirds: return 2.0 * a / 3.0;
    case Kind::ThreeQuarters: return 3.0 * a / 4.0;
    case Kind::FourFifths: return 4.0 * a / 5.0;
    case Kind::FiveSixths: return 5.0 * a / 6.0;
    case Kind::Rational1: return a / (4.0 - a * a);
    case Kind::Rational5: return 5.0 * a / (4.0 - a * a);
    case Kind::Critical: return 4.0 * a / (4.0 - a * a);
    case Kind::Const: return value_;
    case Kind::Ratio: return value_ * a;
    }
    return a;
}

std::string BRule::name() const
{
    for (const auto& r : kNamedRules) {
        if (r.kind == kind_) return r.name;
    }
    if (kind_ == Kind::Const) return "b=" + shortest(value_);
    return "b=" + shortest(value_) + "a";
}

double SweepGrid::at(std::size_t i) const noexcept
{
    if (steps <= 1 || i == 0) return a_min;
    if (i + 1 == steps) return a_max;
    return a_min + (a_max - a_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void validate_sweep(const BRule& rule, const SweepGrid& grid)
{
    if (!(grid.a_min > 0.0 && grid.a_min <= grid.a_max && grid.a_max <= 1.0)) {
        throw PreconditionError("sweep range must satisfy 0 < a_min <= a_max <= 1");
    }
    if (grid.steps < 1) throw PreconditionError("sweep needs at least one step");
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double a = grid.at(i);
        const double b = rule(a);
        if (!(b >= 0.0 && b <= 1.0)) {
            throw RuleRangeError("rule " + rule.name() + " gives b = " + shortest(b) +
                                 " at a = " + shortest(a) + ", outside [0, 1]");
        }
    }
}

BifurcationSample bifurcation_sample(const MapParams& p, double x0, std::size_t burn,
                                     std::size_t keep)
{
    if (keep < 100) throw PreconditionError("bifurcation sample requires keep >= 100");
    double x = x0;
    for (std::size_t i = 0; i < burn; ++i) x = eval_f(p, x);
    BifurcationSample s{p.a(), p.b(), {}};
    s.retained.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        x = eval_f(p, x);
        s.retained.push_back(x);
    }
    return s;
}

std::size_t band_count(std::span<const double> retained, double gap)
{
    if (retained.empty()) throw PreconditionError("band_count needs retained values");
    if (!(gap > 0.0)) throw PreconditionError("band_count needs gap > 0");
    std::vector<double> v(retained.begin(), retained.end());
    std::sort(v.begin(), v.end());
    std::size_t bands = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] - v[i - 1] > gap) ++bands;
    }
    return bands;
}

}  // namespace pwmap
