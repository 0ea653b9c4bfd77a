#include "pwmap/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwmap/errors.hpp"
#include "pwmap/orbits.hpp"

namespace pwmap {

namespace {

constexpr double kFixExclusion = 1e-6;
constexpr std::size_t kMaxCounterexamples = 5;

void require_nondegenerate(const MapParams& p, const char* what)
{
    if (!p.is_nondegenerate()) {
        throw DegenerateParameters(std::string(what) + " requires a != 0 and b != 0");
    }
}

template <class G>
double bisect(G&& g, double lo, double hi)
{
    double glo = g(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// f^n restricted to a fixed branch sequence; continuous on the closure of the interval the
// sequence was taken from.
struct Itinerary {
    std::vector<Branch> branches;

    double apply(const MapParams& p, double x) const noexcept
    {
        for (Branch br : branches) x = eval_branch(p, br, x);
        return x;
    }
};

Itinerary itinerary_of(const MapParams& p, double x, std::size_t n)
{
    Itinerary it;
    it.branches.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        it.branches.push_back(branch_of(x));
        x = eval_f(p, x);
    }
    return it;
}

// Builds the cycle through root along the itinerary and checks it against f itself.
std::optional<CycleRecord> cycle_from_root(const MapParams& p, const Itinerary& it, double root)
{
    const std::size_t period = it.branches.size();
    std::vector<double> pts{root};
    for (std::size_t k = 0; k + 1 < period; ++k) {
        pts.push_back(eval_branch(p, it.branches[k], pts.back()));
    }
    for (double v : pts) {
        if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
    }
    for (std::size_t k = 0; k < period; ++k) {
        if (std::fabs(eval_f(p, pts[k]) - pts[(k + 1) % period]) > kCycleTolerance) {
            return std::nullopt;
        }
    }
    for (std::size_t d = 1; d < period; ++d) {
        if (period % d == 0 && std::fabs(pts[d] - pts[0]) <= kCycleTolerance) return std::nullopt;
    }
    std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
    CycleRecord c;
    c.points = std::move(pts);
    c.prime_period = period;
    return classify_cycle(p, std::move(c));
}

void search_period(const MapParams& p, std::size_t period, std::size_t grid,
                   CycleSearchResult& out)
{
    std::vector<double> cuts = continuity_breakpoints(p, period);
    cuts.insert(cuts.begin(), 0.0);
    cuts.push_back(1.0);

    std::vector<double> roots;
    std::vector<CycleRecord> found;
    const double step = 1.0 / static_cast<double>(grid);

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double l = cuts[i];
        const double r = cuts[i + 1];
        if (!(r > l)) continue;
        const Itinerary it = itinerary_of(p, 0.5 * (l + r), period);
        auto g = [&](double x) { return it.apply(p, x) - x; };

        std::vector<double> xs{l};
        const auto first = static_cast<std::size_t>(std::floor(l * static_cast<double>(grid))) + 1;
        for (std::size_t j = first; static_cast<double>(j) * step < r; ++j) {
            if (static_cast<double>(j) * step > l) xs.push_back(static_cast<double>(j) * step);
        }
        xs.push_back(r);

        std::vector<double> gs(xs.size());
        std::transform(xs.begin(), xs.end(), gs.begin(), g);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (gs[k] == 0.0) {
                roots.push_back(xs[k]);
            } else if (k + 1 < xs.size() && gs[k + 1] != 0.0 && (gs[k] < 0.0) != (gs[k + 1] < 0.0)) {
                roots.push_back(bisect(g, xs[k], xs[k + 1]));
            }
        }

        for (double root : roots) {
            auto c = cycle_from_root(p, it, root);
            if (!c) continue;
            const bool dup = std::any_of(found.begin(), found.end(), [&](const CycleRecord& o) {
                return std::fabs(o.points.front() - c->points.front()) <= kCycleTolerance;
            });
            if (!dup) found.push_back(std::move(*c));
        }
        roots.clear();
    }

    // Resolution check over every point of every distinct cycle of this period.
    std::vector<double> all;
    for (const auto& c : found) all.insert(all.end(), c.points.begin(), c.points.end());
    std::sort(all.begin(), all.end());
    for (std::size_t k = 1; k < all.size(); ++k) {
        const double gap = all[k] - all[k - 1];
        if (gap > kCycleTolerance && gap < 10.0 * step) out.resolution_warning = true;
    }

    std::sort(found.begin(), found.end(), [](const CycleRecord& x, const CycleRecord& y) {
        return x.points.front() < y.points.front();
    });
    for (auto& c : found) out.cycles.push_back(std::move(c));
}

Interval open_closed(double lo, double hi) { return {lo, hi, false, true}; }

}  // namespace

const char* to_string(Stability s) noexcept
{
    switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::Indifferent: return "indifferent";
    case Stability::UndefinedDerivative: return "undefined-derivative";
    }
    return "?";
}

bool FixedPointSet::contains(double x) const noexcept
{
    if (continuum && continuum->contains(x)) return true;
    return std::find(isolated.begin(), isolated.end(), x) != isolated.end();
}

FixedPointSet fixed_points(const MapParams& p)
{
    if (p.is_identity()) return {{}, Interval{0.0, 1.0, true, true}};
    if (p.is_left_identity()) return {{1.0}, Interval{0.0, kHalf, true, true}};
    if (p.b() == 0.0) return {{0.0}, Interval{kHalf, 1.0, false, true}};
    return {{0.0, 1.0}, std::nullopt};
}

CycleRecord classify_cycle(const MapParams& p, CycleRecord c)
{
    double m = 1.0;
    bool undefined = false;
    for (double x : c.points) {
        const auto d = eval_f_deriv(p, x);
        if (!d) {
            undefined = true;
            break;
        }
        m *= *d;
    }
    if (undefined) {
        c.multiplier.reset();
        c.classification = Stability::UndefinedDerivative;
        return c;
    }
    c.multiplier = m;
    const double mag = std::fabs(m);
    c.classification = mag > 1.0   ? Stability::Repelling
                       : mag < 1.0 ? Stability::Attracting
                                   : Stability::Indifferent;
    return c;
}

TwoCycleCandidate two_cycle_candidate(const MapParams& p)
{
    require_nondegenerate(p, "two_cycle_candidate");
    const double a = p.a();
    const double b = p.b();
    const double ab = a * b;
    const double root = std::sqrt(ab * (ab + 4.0));
    return {(ab + 2.0 * b - root) / (2.0 * ab), kHalf + (-2.0 * a + root) / (2.0 * ab)};
}

std::optional<CycleRecord> two_cycle_closed_form(const MapParams& p)
{
    const auto [x2, fx2] = two_cycle_candidate(p);
    if (!(x2 > 0.0 && x2 <= kHalf && fx2 > kHalf && fx2 < 1.0)) return std::nullopt;
    CycleRecord c;
    c.points = {x2, fx2};
    c.prime_period = 2;
    return classify_cycle(p, std::move(c));
}

TwoCycleConditions two_cycle_conditions(const MapParams& p) noexcept
{
    const double a = p.a();
    const double b = p.b();
    TwoCycleConditions c{};
    c.interval_form = a > 0.0 && a < 1.0 && b < a / (1.0 - a);
    c.lower_point = a / (a + 1.0) < b && b <= 4.0 * a / (4.0 - a * a);
    c.upper_point = b / (b + 1.0) < a && a < 4.0 * b / (4.0 - b * b);
    return c;
}

TwoCycleOracleResult two_cycle_region_oracle(const MapParams& p, std::size_t grid)
{
    require_nondegenerate(p, "two_cycle_region_oracle");
    if (grid < 1000) throw PreconditionError("two_cycle_region_oracle requires grid >= 1000");

    TwoCycleOracleResult res;
    auto g = [&](double x) { return eval_f(p, eval_f(p, x)) - x; };
    // Which branch x and f(x) use; f o f is continuous wherever this is constant.
    auto code = [&](double x) {
        return (x <= kHalf ? 1 : 0) | (eval_f(p, x) <= kHalf ? 2 : 0);
    };

    std::vector<double> candidates;
    auto scan_piece = [&](double l, double r) {
        const double gl = g(l);
        const double gr = g(r);
        if (gl == 0.0) {
            candidates.push_back(l);
        } else if ((gl < 0.0) != (gr < 0.0) && gr != 0.0) {
            const double x = bisect(g, l, r);
            if (x < kFixExclusion || x > 1.0 - kFixExclusion) {
                res.conclusive = false;  // crossing too close to a fixed point to separate
            } else {
                candidates.push_back(x);
            }
        }
    };
    auto split_at_jump = [&](double l, double r) {
        const int cl = code(l);
        double lo = l;
        double hi = r;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (code(mid) == cl ? lo : hi) = mid;
        }
        if (code(hi) != code(r)) res.conclusive = false;  // several jumps in one subcell
        scan_piece(l, lo);
        scan_piece(hi, r);
    };

    const double h = 1.0 / static_cast<double>(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double l = static_cast<double>(i) * h;
        const double r = i + 1 == grid ? 1.0 : static_cast<double>(i + 1) * h;
        if (code(l) == code(r)) {
            scan_piece(l, r);
            continue;
        }
        constexpr int kRefine = 100;
        const double sh = (r - l) / kRefine;
        for (int k = 0; k < kRefine; ++k) {
            const double sl = l + k * sh;
            const double sr = k + 1 == kRefine ? r : l + (k + 1) * sh;
            if (code(sl) == code(sr)) {
                scan_piece(sl, sr);
            } else {
                split_at_jump(sl, sr);
            }
        }
    }
    if (g(1.0) == 0.0) candidates.push_back(1.0);

    for (double x : candidates) {
        if (x < kFixExclusion || x > 1.0 - kFixExclusion) continue;
        if (std::fabs(eval_f(p, x) - x) <= kFixExclusion) continue;
        if (std::fabs(g(x)) > kCycleTolerance) continue;
        res.roots.push_back(x);
    }
    std::sort(res.roots.begin(), res.roots.end());
    res.roots.erase(std::unique(res.roots.begin(), res.roots.end(),
                                [](double u, double v) { return v - u <= kCycleTolerance; }),
                    res.roots.end());
    res.exists = !res.roots.empty();
    return res;
}

std::vector<double> continuity_breakpoints(const MapParams& p, std::size_t period)
{
    std::vector<double> all;
    std::vector<double> level{kHalf};
    for (std::size_t depth = 0; depth < period && !level.empty(); ++depth) {
        all.insert(all.end(), level.begin(), level.end());
        std::vector<double> next;
        for (double y : level) {
            for (double x : branch_preimages(p, y)) {
                // 0 and 1 are fixed and never map onto 1/2.
                if (x > 0.0 && x < 1.0) next.push_back(x);
            }
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

CycleSearchResult find_cycles_with_periods(const MapParams& p,
                                           const std::vector<std::size_t>& periods,
                                           std::size_t grid)
{
    require_nondegenerate(p, "find_cycles");
    if (grid < 10'000) throw PreconditionError("find_cycles requires grid >= 10^4");
    CycleSearchResult out;
    for (std::size_t period : periods) {
        if (period < 1 || period > kMaxSearchPeriod) {
            throw PreconditionError("find_cycles supports periods 1.." +
                                    std::to_string(kMaxSearchPeriod));
        }
        search_period(p, period, grid, out);
    }
    return out;
}

CycleSearchResult find_cycles(const MapParams& p, std::size_t max_period, std::size_t grid)
{
    std::vector<std::size_t> periods;
    for (std::size_t k = 1; k <= max_period; ++k) periods.push_back(k);
    return find_cycles_with_periods(p, periods, grid);
}

std::vector<CycleRecord> odd_period_scan(const MapParams& p, std::size_t max_odd,
                                         std::size_t grid)
{
    if (!p.is_nondegenerate()) return {};
    std::vector<std::size_t> periods;
    for (std::size_t k = 3; k <= max_odd; k += 2) periods.push_back(k);
    return find_cycles_with_periods(p, periods, grid).cycles;
}

bool lemma_region(const MapParams& p) noexcept
{
    const double a = p.a();
    const double b = p.b();
    return a > 0.0 && a <= 1.0 && a <= b && b <= 4.0 * a / (4.0 - a * a);
}

LemmaSets lemma_sets(const MapParams& p)
{
    if (!lemma_region(p)) {
        throw PreconditionError("lemma sets require a in (0, 1] and a <= b <= 4a/(4 - a^2)");
    }
    const double a = p.a();
    const double b = p.b();
    const double lo = 0.5 - b / 4.0;
    const double hi = 0.5 + a / 4.0;

    const double a3_hi = (0.5 + a / 4.0) * (1.0 - b / 2.0 + a * b / 4.0);
    const double a1_hi = a3_hi * (1.0 - b / 2.0 + b * ((a - b) / 4.0 + a * a * b / 16.0));
    const double a2_lo = (0.5 - b / 4.0) * (1.0 + a / 2.0 + a * b / 4.0);
    const double a4_lo = a2_lo * (1.0 + a / 2.0 - a * ((a - b) / 4.0 - a * b * b / 16.0));

    LemmaSets s;
    s.A1 = open_closed(lo, a1_hi);
    s.A2 = open_closed(a2_lo, kHalf);
    s.A3 = open_closed(kHalf, a3_hi);
    s.A4 = open_closed(a4_lo, hi);
    s.K1 = open_closed(a1_hi, a2_lo);
    s.K2 = open_closed(a3_hi, a4_lo);
    return s;
}

bool TransitionReport::all_hold() const noexcept
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const InclusionCheck& c) { return c.holds(); });
}

TransitionReport transition_check(const MapParams& p, std::size_t samples)
{
    TransitionReport rep;
    rep.sets = lemma_sets(p);
    const LemmaSets& s = rep.sets;

    auto run = [&](std::string claim, const Interval& from, auto&& accept) {
        InclusionCheck chk;
        chk.claim = std::move(claim);
        if (!from.empty() && samples > 0) {
            const double w = from.hi - from.lo;
            for (std::size_t k = 0; k < samples; ++k) {
                const double x = from.lo + w * (static_cast<double>(k) + 0.5) /
                                               static_cast<double>(samples);
                const double fx = eval_f(p, x);
                ++chk.samples;
                if (!accept(fx)) {
                    ++chk.violations;
                    if (chk.counterexamples.size() < kMaxCounterexamples) {
                        chk.counterexamples.emplace_back(x, fx);
                    }
                }
            }
        }
        rep.checks.push_back(std::move(chk));
    };
    auto in_any = [](std::initializer_list<const Interval*> targets) {
        return [targets = std::vector<const Interval*>(targets)](double y) {
            return std::any_of(targets.begin(), targets.end(),
                               [y](const Interval* t) { return t->contains(y); });
        };
    };

    run("f(A1) in A2 u A3", s.A1, in_any({&s.A2, &s.A3}));
    run("f(A2) in A4", s.A2, in_any({&s.A4}));
    run("f(A3) in A1", s.A3, in_any({&s.A1}));
    run("f(A4) in A2 u A3", s.A4, in_any({&s.A2, &s.A3}));
    run("f(K1) misses K1", s.K1, [&](double y) { return !s.K1.contains(y); });
    run("f(K2) misses K2", s.K2, [&](double y) { return !s.K2.contains(y); });
    return rep;
}

}  // namespace pwmap
