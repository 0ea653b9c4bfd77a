// Acceptance criteria 1-12. `acceptance` runs all of them; `acceptance K` runs criterion K
// only and exits non-zero if it fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pwmap/chaos.hpp"
#include "pwmap/io.hpp"
#include "pwmap/orbits.hpp"
#include "pwmap/periodic.hpp"
#include "pwmap/sweep.hpp"
#include "pwmap/verify.hpp"

using namespace pwmap;

namespace {

// tolerances
constexpr double kInvariantTol = 1e-12;
constexpr double kCycleMatchTol = 1e-6;
constexpr double kTwoCycleTol = 1e-10;
constexpr double kLyapunovFloor = -1e-6;
constexpr double kLyapunovSlack = 1e-9;
constexpr double kConjugacyTol = 1e-14;
constexpr double kSimplexLimitTol = 1e-6;
constexpr double kSimplexMatchTol = 1e-12;
constexpr double kPreimageTol = 1e-10;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed;
    std::string detail;
};

std::vector<double> open_grid(double lo, double hi, int count)
{
    std::vector<double> v;
    for (int k = 1; k <= count; ++k) v.push_back(lo + (hi - lo) * k / count);
    return v;
}

Outcome fixed_point_sets()
{
    int bad = 0;
    for (double a : open_grid(0.1, 1.0, 5)) {
        for (double b : open_grid(0.1, 1.0, 5)) {
            const auto fp = fixed_points(MapParams(a, b));
            if (fp.continuum || fp.isolated != std::vector<double>{0.0, 1.0}) ++bad;
        }
    }
    for (double b : {0.25, 0.5, 0.75}) {
        const auto fp = fixed_points(MapParams(0.0, b));
        const bool ok = fp.continuum && *fp.continuum == Interval{0.0, 0.5, true, true} &&
                        fp.isolated == std::vector<double>{1.0};
        if (!ok) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " of 28 parameter points wrong"};
}

Outcome invariant_set()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t escapes = 0;
    std::size_t never = 0;
    std::size_t worst = 0;
    for (double a : open_grid(0.1, 1.0, 5)) {
        for (double b : open_grid(0.1, 1.0, 5)) {
            const MapParams p(a, b);
            const auto A = invariant_interval(p);
            for (int i = 0; i < 10000; ++i) {
                double x = A.lo + (A.hi - A.lo) * u(rng);
                if (x == A.lo) x = A.hi;
                const double fx = eval_f(p, x);
                if (!(fx > A.lo - kInvariantTol && fx <= A.hi + kInvariantTol)) ++escapes;
            }
            for (int i = 0; i < 1000; ++i) {
                double x = u(rng);
                if (x == 0.0) x = 0.5;
                const auto t = entry_time(p, x, 1'000'000);
                if (!t) ++never;
                else worst = std::max(worst, *t);
            }
        }
    }
    return {escapes == 0 && never == 0,
            std::to_string(escapes) + " escapes from A, " + std::to_string(never) +
                " orbits never entered, longest entry " + std::to_string(worst)};
}

Outcome three_cycle()
{
    const std::array<double, 3> expected{0.47556611, 0.60026760, 0.36032119};
    const auto res = find_cycles(MapParams(0.5, 1.0), 3, 10000);
    for (const auto& c : res.cycles) {
        if (c.prime_period != 3) continue;
        double err = 0.0;
        for (double e : expected) {
            double best = 1.0;
            for (double x : c.points) best = std::min(best, std::fabs(x - e));
            err = std::max(err, best);
        }
        if (err < kCycleMatchTol) {
            const double m = c.multiplier.value_or(0.0);
            std::ostringstream os;
            os << "max point error " << err << ", multiplier " << m;
            return {m > 1.0, os.str()};
        }
    }
    return {false, "no matching 3-cycle"};
}

Outcome two_cycle()
{
    const MapParams p(0.8, 0.8);
    const auto c = two_cycle_closed_form(p);
    if (!c) return {false, "closed form reports no cycle at (0.8, 0.8)"};
    const double resid = std::fabs(iterate_n(p, c->points[0], 2) - c->points[0]);
    const bool closed_ok = resid < kTwoCycleTol && c->classification == Stability::Repelling;

    std::size_t conclusive = 0;
    std::size_t disagree = 0;
    std::size_t interval_form_disagree = 0;
    for (double a : open_grid(0.0, 1.0, 50)) {
        for (double b : open_grid(0.0, 1.0, 50)) {
            const MapParams q(a, b);
            const auto o = two_cycle_region_oracle(q, 10000);
            if (!o.conclusive) continue;
            ++conclusive;
            if (two_cycle_closed_form(q).has_value() != o.exists) ++disagree;
            if (two_cycle_conditions(q).interval_form != o.exists) ++interval_form_disagree;
        }
    }
    VerifyOptions opts;
    const auto report = run_suites("oracle-vs-theorem", opts);
    const bool report_ok = !report.empty() && !report[0].checks.empty();

    std::ostringstream os;
    os << "residual " << resid << ", " << to_string(c->classification) << "; " << conclusive
       << " conclusive grid points, " << disagree << " disagreements; interval-form condition disagrees at "
       << interval_form_disagree;
    return {closed_ok && disagree == 0 && report_ok, os.str()};
}

Outcome repelling_everywhere()
{
    std::vector<MapParams> ps;
    for (double a : open_grid(0.0, 1.0, 10))
        for (double b : open_grid(0.0, 1.0, 10)) ps.emplace_back(a, b);
    const auto found = parallel_map(ps.size(), [&](std::size_t i) {
        return find_cycles(ps[i], 7, 10000).cycles;
    });
    std::size_t total = 0;
    std::size_t bad = 0;
    for (const auto& cs : found) {
        for (const auto& c : cs) {
            ++total;
            if (!c.multiplier || !(std::fabs(*c.multiplier) > 1.0)) ++bad;
        }
    }
    return {bad == 0 && total > 0,
            std::to_string(total) + " cycles, " + std::to_string(bad) + " not repelling"};
}

Outcome odd_periods()
{
    const auto ps = lemma_region_points(5, 4);
    const auto found = parallel_map(ps.size(), [&](std::size_t i) {
        return odd_period_scan(ps[i], 7, 100000);
    });
    std::size_t with_odd = 0;
    std::ostringstream os;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (found[i].empty()) continue;
        ++with_odd;
        os << "; (" << ps[i].a() << ", " << ps[i].b() << ") has period " << found[i][0].prime_period
           << " from " << found[i][0].points[0];
    }
    return {ps.size() == 20 && with_odd == 0,
            std::to_string(with_odd) + " of " + std::to_string(ps.size()) + " points have odd cycles" + os.str()};
}

Outcome lyapunov_bounds()
{
    struct Job {
        MapParams p;
        double x0;
    };
    std::vector<Job> jobs;
    for (double a : open_grid(0.0, 1.0, 20))
        for (double b : open_grid(0.0, 1.0, 20))
            for (double x0 : {0.1, 0.3, 0.45, 0.7, 0.9}) jobs.push_back({MapParams(a, b), x0});
    const auto est = parallel_map(jobs.size(), [&](std::size_t i) {
        return lyapunov(jobs[i].p, jobs[i].x0).lambda;
    });
    double lowest = 1.0;
    double worst_excess = -1.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const double cap = std::log(1.0 + std::max(jobs[i].p.a(), jobs[i].p.b()));
        lowest = std::min(lowest, est[i]);
        worst_excess = std::max(worst_excess, est[i] - cap);
    }
    std::ostringstream os;
    os << "min lambda " << lowest << ", max lambda - ln(1 + max(a, b)) " << worst_excess;
    return {lowest >= kLyapunovFloor && worst_excess <= kLyapunovSlack, os.str()};
}

Outcome bands()
{
    std::ostringstream os;
    bool ok = true;
    for (const char* rule : {"b=a", "b=a/2"}) {
        const BRule g = BRule::parse(rule);
        const std::size_t want = g.kind() == BRule::Kind::Equal ? 3 : 4;
        os << rule << ":";
        for (double a : {0.3, 0.5, 0.8}) {
            const auto s = bifurcation_sample(MapParams(a, g(a)), kDefaultSweepX0, 10000, 500);
            const std::size_t n = band_count(s.retained, 0.01);
            ok = ok && n == want;
            os << " a=" << a << "->" << n;
        }
        os << " (want " << want << "); ";
    }
    return {ok, os.str()};
}

Outcome conjugacy()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const MapParams p(u(rng), u(rng));
        for (int i = 0; i <= 100000; ++i) {
            const double x = i / 100000.0;
            const auto c = conjugate_map_check(p, x);
            if (c.at_boundary) continue;
            worst = std::max(worst, std::fabs(c.lhs - c.rhs));
        }
    }
    std::ostringstream os;
    os << "max deviation " << worst;
    return {worst < kConjugacyTol, os.str()};
}

Outcome simplex()
{
    const auto up = simplex_orbit(0.5, SimplexState::from_x(0.3), 10000);
    const auto down = simplex_orbit(-0.5, SimplexState::from_x(0.3), 10000);
    const bool limits = std::fabs(up.back().x - 1.0) < kSimplexLimitTol &&
                        std::fabs(up.back().y) < kSimplexLimitTol &&
                        std::fabs(down.back().x) < kSimplexLimitTol &&
                        std::fabs(down.back().y - 1.0) < kSimplexLimitTol;

    double worst = 0.0;
    for (const auto& [a, b] : {std::pair{0.2, 0.8}, {0.5, 0.5}, {1.0, 1.0}, {0.7, 0.3}}) {
        const MapParams p(a, b);
        const auto zs = simplex_piecewise_orbit(p, SimplexState::from_x(0.3), 1000);
        for (std::size_t k = 1; k < zs.size(); ++k) {
            worst = std::max(worst, std::fabs(zs[k].x - eval_f(p, zs[k - 1].x)));
        }
    }
    std::ostringstream os;
    os << "V_0.5 -> (" << up.back().x << ", " << up.back().y << "), V_-0.5 -> (" << down.back().x
       << ", " << down.back().y << "); piecewise vs 1D max step error " << worst;
    return {limits && worst <= kSimplexMatchTol, os.str()};
}

Outcome backward_recurrence()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (double b : {0.25, 0.5, 0.75, 1.0}) {
        const MapParams p(0.0, b);
        const double lo = 0.5 - b / 4.0;
        for (int i = 0; i < 1000; ++i) {
            double x = lo + (1.0 - lo) * u(rng);
            if (x == lo) x = 1.0;
            worst = std::max(worst, std::fabs(eval_f(p, preimage_step(b, x)) - x));
        }
    }
    std::ostringstream os;
    os << "max |f(x') - x| " << worst;
    return {worst < kPreimageTol, os.str()};
}

std::string capture(const std::string& cmd)
{
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 1 << 16> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    ::pclose(pipe);
    return out;
}

Outcome determinism()
{
    const std::string base = std::string(PWMAP_EXE) + " bifurcation --rule b=a --steps 400 --burn 10000 --keep 500";
    std::vector<std::string> payloads;
    for (int t : {1, 8, 1, 8}) payloads.push_back(csv_payload(capture(base + " --threads " + std::to_string(t))));
    bool same = payloads[0].size() > 400 * 500;
    for (const auto& p : payloads) same = same && p == payloads[0];
    return {same, std::to_string(payloads[0].size()) + " payload bytes, 4 runs " +
                      (same ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"fixed points", fixed_point_sets},
        {"invariant set and absorption", invariant_set},
        {"3-cycle at (1/2, 1)", three_cycle},
        {"2-cycle closed form and oracle agreement", two_cycle},
        {"every cycle repelling", repelling_everywhere},
        {"no odd periods in the transition region", odd_periods},
        {"Lyapunov bounds", lyapunov_bounds},
        {"bifurcation bands", bands},
        {"conjugacy", conjugacy},
        {"simplex dichotomy and reduction", simplex},
        {"backward recurrence", backward_recurrence},
        {"thread-count determinism", determinism},
    };

    std::size_t first = 1;
    std::size_t last = criteria.size();
    if (argc > 1) {
        first = last = std::strtoul(argv[1], nullptr, 10);
        if (first < 1 || first > criteria.size()) {
            std::cerr << "criterion must be 1.." << criteria.size() << '\n';
            return 2;
        }
    }

    bool all = true;
    for (std::size_t k = first; k <= last; ++k) {
        const auto& [name, fn] = criteria[k - 1];
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.passed;
        std::cout << "criterion " << k << " " << (o.passed ? "PASS" : "FAIL") << "  " << name
                  << "  (" << o.detail << ")\n";
    }
    return all ? 0 : 1;
}
