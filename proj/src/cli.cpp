#include "pwmap/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pwmap/chaos.hpp"
#include "pwmap/errors.hpp"
#include "pwmap/io.hpp"
#include "pwmap/orbits.hpp"
#include "pwmap/periodic.hpp"
#include "pwmap/sweep.hpp"
#include "pwmap/verify.hpp"

namespace pwmap {

namespace {

std::string env_name(const std::string& flag)
{
    std::string s = "PWMAP_";
    for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

template <class T>
CLI::Option* knob(CLI::App* sub, const std::string& flag, T& var, const std::string& help)
{
    return sub->add_option("--" + flag, var, help)->envname(env_name(flag))->capture_default_str();
}

Json interval_json(const Interval& iv)
{
    return {{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Json cycle_json(const CycleRecord& c)
{
    Json j = Json::object();
    j["points"] = c.points;
    j["prime_period"] = c.prime_period;
    j["multiplier"] = c.multiplier ? Json(*c.multiplier) : Json(nullptr);
    j["classification"] = to_string(c.classification);
    return j;
}

const char* to_string(OrbitTermination t)
{
    switch (t) {
    case OrbitTermination::MaxIterations: return "max-iterations";
    case OrbitTermination::FixedPointReached: return "fixed-point";
    case OrbitTermination::EnteredA: return "entered-A";
    }
    return "?";
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : "undefined"; }

// Writes one command's result in the configured format.
class Emitter {
public:
    Emitter(const RunConfig& cfg, std::ostream& os) : cfg_(cfg), os_(os) {}

    bool json() const { return cfg_.format == OutputFormat::Json; }

    void table(const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::pair<std::string, std::string>>& results = {})
    {
        if (json()) {
            Json data = Json::object();
            for (const auto& [k, v] : results) data[k] = v;
            Json arr = Json::array();
            for (const auto& r : rows) {
                Json o = Json::object();
                for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
                arr.push_back(std::move(o));
            }
            data["rows"] = std::move(arr);
            os_ << envelope(cfg_, std::move(data)).dump(2) << '\n';
            return;
        }
        CsvWriter w(os_);
        w.config(cfg_);
        for (const auto& [k, v] : results) w.meta("result." + k, v);
        w.header(header);
        for (const auto& r : rows) w.row(r);
    }

    void cycles(const std::vector<CycleRecord>& cs, Json extra = Json::object())
    {
        if (json()) {
            Json arr = Json::array();
            for (const auto& c : cs) arr.push_back(cycle_json(c));
            extra["cycles"] = std::move(arr);
            os_ << envelope(cfg_, std::move(extra)).dump(2) << '\n';
            return;
        }
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            for (std::size_t i = 0; i < cs[k].points.size(); ++i) {
                rows.push_back({std::to_string(k), std::to_string(cs[k].prime_period), std::to_string(i),
                                format_real(cs[k].points[i]), opt_real(cs[k].multiplier),
                                to_string(cs[k].classification)});
            }
        }
        std::vector<std::pair<std::string, std::string>> results;
        for (const auto& [k, v] : extra.items()) results.emplace_back(k, v.dump());
        table({"cycle", "period", "index", "x", "multiplier", "classification"}, rows, results);
    }

    void document(Json data) { os_ << envelope(cfg_, std::move(data)).dump(2) << '\n'; }

private:
    const RunConfig& cfg_;
    std::ostream& os_;
};

MapParams params(const RunConfig& c) { return MapParams(c.a, c.b); }

int cmd_eval(const RunConfig& c, Emitter& e)
{
    const MapParams p = params(c);
    const auto conj = conjugate_map_check(p, c.x0);
    e.table({"x", "f", "deriv", "conj_lhs", "conj_rhs", "conj_boundary"},
            {{format_real(c.x0), format_real(eval_f(p, c.x0)), opt_real(eval_f_deriv(p, c.x0)),
              format_real(conj.lhs), format_real(conj.rhs), conj.at_boundary ? "1" : "0"}});
    return kExitOk;
}

int cmd_orbit(const RunConfig& c, Emitter& e)
{
    const MapParams p = params(c);
    OrbitPolicy pol;
    pol.stop_at_fixed_point = c.stop_at_fixed;
    const OrbitRecord rec = orbit(p, c.x0, c.n, pol);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < rec.iterates.size(); ++k) {
        rows.push_back({std::to_string(k), format_real(rec.iterates[k])});
    }
    e.table({"n", "x"}, rows,
            {{"entered_A_at", rec.entered_A_at ? std::to_string(*rec.entered_A_at) : "none"},
             {"terminated", to_string(rec.terminated)}});
    return kExitOk;
}

int cmd_entry_time(const RunConfig& c, Emitter& e)
{
    const auto t = entry_time(params(c), c.x0, c.cap);
    e.table({"x0", "entry_time"}, {{format_real(c.x0), t ? std::to_string(*t) : "none"}});
    return kExitOk;
}

int cmd_invariant_interval(const RunConfig& c, Emitter& e)
{
    const auto A = invariant_interval(params(c));
    e.table({"lo", "hi"}, {{format_real(A.lo), format_real(A.hi)}});
    return kExitOk;
}

int cmd_preimage(const RunConfig& c, Emitter& e)
{
    const auto xs = backward_orbit(c.b, c.x0, c.n);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < xs.size(); ++k) rows.push_back({std::to_string(k), format_real(xs[k])});
    e.table({"n", "x"}, rows);
    return kExitOk;
}

int cmd_simplex(const RunConfig& c, Emitter& e)
{
    const SimplexState z0 = SimplexState::from_x(c.x0);
    std::vector<std::vector<std::string>> rows;
    if (c.piecewise) {
        const MapParams p = params(c);
        const auto zs = simplex_piecewise_orbit(p, z0, c.n);
        for (std::size_t k = 0; k < zs.size(); ++k) {
            const auto co = simplex_coefficients(p, zs[k]);
            rows.push_back({std::to_string(k), format_real(zs[k].x), format_real(zs[k].y),
                            format_real(co.p12_1), format_real(co.p12_2)});
        }
    } else {
        const auto zs = simplex_orbit(c.a, z0, c.n);
        for (std::size_t k = 0; k < zs.size(); ++k) {
            rows.push_back({std::to_string(k), format_real(zs[k].x), format_real(zs[k].y),
                            format_real((1.0 + c.a) / 2.0), format_real((1.0 - c.a) / 2.0)});
        }
    }
    e.table({"n", "x", "y", "p12_1", "p12_2"}, rows);
    return kExitOk;
}

int cmd_fixed_points(const RunConfig& c, Emitter& e)
{
    const auto fp = fixed_points(params(c));
    if (e.json()) {
        Json d = Json::object();
        d["isolated"] = fp.isolated;
        d["continuum"] = fp.continuum ? interval_json(*fp.continuum) : Json(nullptr);
        e.document(std::move(d));
        return kExitOk;
    }
    std::vector<std::vector<std::string>> rows;
    for (double x : fp.isolated) rows.push_back({"point", format_real(x), format_real(x), "1", "1"});
    if (fp.continuum) {
        const auto& iv = *fp.continuum;
        rows.push_back({"interval", format_real(iv.lo), format_real(iv.hi), iv.lo_closed ? "1" : "0",
                        iv.hi_closed ? "1" : "0"});
    }
    e.table({"kind", "lo", "hi", "lo_closed", "hi_closed"}, rows);
    return kExitOk;
}

int cmd_two_cycle(const RunConfig& c, Emitter& e)
{
    const MapParams p = params(c);
    const auto cyc = two_cycle_closed_form(p);
    const auto cond = two_cycle_conditions(p);
    Json extra = Json::object();
    extra["condition_interval_form"] = cond.interval_form;
    extra["condition_lower_point"] = cond.lower_point;
    extra["condition_upper_point"] = cond.upper_point;
    std::vector<CycleRecord> cs;
    if (cyc) cs.push_back(*cyc);
    e.cycles(cs, std::move(extra));
    return kExitOk;
}

int cmd_two_cycle_oracle(const RunConfig& c, Emitter& e)
{
    const auto o = two_cycle_region_oracle(params(c), c.grid);
    std::vector<std::vector<std::string>> rows;
    for (double r : o.roots) rows.push_back({format_real(r)});
    e.table({"root"}, rows,
            {{"exists", o.exists ? "1" : "0"}, {"conclusive", o.conclusive ? "1" : "0"}});
    return kExitOk;
}

int cmd_cycles(const RunConfig& c, Emitter& e)
{
    const auto res = find_cycles(params(c), c.max_period, c.grid);
    Json extra = Json::object();
    extra["resolution_warning"] = res.resolution_warning;
    e.cycles(res.cycles, std::move(extra));
    return kExitOk;
}

int cmd_odd_scan(const RunConfig& c, Emitter& e)
{
    e.cycles(odd_period_scan(params(c), c.max_odd, c.grid));
    return kExitOk;
}

int cmd_lemma_sets(const RunConfig& c, Emitter& e)
{
    const auto s = lemma_sets(params(c));
    const std::pair<const char*, const Interval*> named[] = {
        {"A1", &s.A1}, {"A2", &s.A2}, {"A3", &s.A3}, {"A4", &s.A4}, {"K1", &s.K1}, {"K2", &s.K2}};
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, iv] : named) {
        rows.push_back({name, format_real(iv->lo), format_real(iv->hi), iv->lo_closed ? "1" : "0",
                        iv->hi_closed ? "1" : "0"});
    }
    e.table({"set", "lo", "hi", "lo_closed", "hi_closed"}, rows);
    return kExitOk;
}

int cmd_transitions(const RunConfig& c, Emitter& e)
{
    const auto rep = transition_check(params(c), c.samples);
    std::vector<std::vector<std::string>> rows;
    for (const auto& chk : rep.checks) {
        std::string ce;
        for (const auto& [x, fx] : chk.counterexamples) {
            if (!ce.empty()) ce += ' ';
            ce += format_real(x) + "->" + format_real(fx);
        }
        rows.push_back({chk.claim, chk.holds() ? "1" : "0", std::to_string(chk.samples),
                        std::to_string(chk.violations), ce});
    }
    e.table({"claim", "holds", "samples", "violations", "counterexamples"}, rows,
            {{"all_hold", rep.all_hold() ? "1" : "0"}});
    return kExitOk;
}

int cmd_lyapunov(const RunConfig& c, Emitter& e)
{
    std::vector<LyapunovRow> rows;
    if (c.rule.empty()) {
        const MapParams p = params(c);
        rows.push_back({p.a(), p.b(), lyapunov(p, c.x0, c.burn, c.n), !p.is_nondegenerate()});
    } else {
        rows = lyapunov_sweep(BRule::parse(c.rule), {c.a_min, c.a_max, c.steps}, c.x0, c.burn, c.n,
                              ExecPolicy{c.threads});
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        cells.push_back({format_real(r.a), format_real(r.b), format_real(r.estimate.lambda),
                         std::to_string(r.estimate.n_used), std::to_string(r.estimate.n_skipped),
                         r.degenerate ? "1" : "0"});
    }
    e.table({"a", "b", "lambda", "n_used", "n_skipped", "degenerate"}, cells);
    return kExitOk;
}

int cmd_bifurcation(const RunConfig& c, Emitter& e)
{
    const auto rule = BRule::parse(c.rule.empty() ? "b=a" : c.rule);
    const auto samples = bifurcation_sweep(rule, {c.a_min, c.a_max, c.steps}, c.x0, c.burn, c.keep,
                                           ExecPolicy{c.threads});
    std::vector<std::vector<std::string>> rows;
    rows.reserve(samples.size() * c.keep);
    for (const auto& s : samples) {
        const std::string a = format_real(s.a);
        const std::string b = format_real(s.b);
        for (double x : s.retained) rows.push_back({a, b, format_real(x)});
    }
    e.table({"a", "b", "x"}, rows);
    return kExitOk;
}

int cmd_bands(const RunConfig& c, Emitter& e)
{
    const auto rule = BRule::parse(c.rule.empty() ? "b=a" : c.rule);
    const auto samples = bifurcation_sweep(rule, {c.a_min, c.a_max, c.steps}, c.x0, c.burn, c.keep,
                                           ExecPolicy{c.threads});
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : samples) {
        rows.push_back({format_real(s.a), format_real(s.b), std::to_string(band_count(s.retained, c.gap))});
    }
    e.table({"a", "b", "bands"}, rows);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& os, std::ostream& console)
{
    VerifyOptions opts;
    opts.seed = c.seed;
    opts.exec.threads = c.threads;
    const auto reports = run_suites(c.suite, opts);
    const Json j = to_json(reports);
    if (c.format == OutputFormat::Json) {
        os << envelope(c, j).dump(2) << '\n';
        if (&os != &console) console << to_text(reports);
    } else {
        os << to_text(reports);
        if (&os != &console) console << to_text(reports);
    }
    return j["passed"].get<bool>() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dynamics of the piecewise map f_{a,b} and the two-species evolution operator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunConfig cfg;
    std::string format = "csv";

    struct Command {
        const char* name;
        const char* help;
        std::vector<std::string> knobs;
        std::function<int(const RunConfig&, Emitter&)> run;
    };
    const std::vector<Command> commands{
        {"eval", "f(x), f'(x) and the conjugacy identity at one point", {"a", "b", "x0"}, cmd_eval},
        {"orbit", "forward orbit as n,x rows", {"a", "b", "x0", "n", "stop-at-fixed"}, cmd_orbit},
        {"entry-time", "first iterate inside A", {"a", "b", "x0", "cap"}, cmd_entry_time},
        {"invariant-interval", "endpoints of A = (1/2 - b/4, 1/2 + a/4]", {"a", "b"}, cmd_invariant_interval},
        {"preimage", "backward orbit of x0 under f_{0,b}", {"b", "x0", "n"}, cmd_preimage},
        {"simplex", "orbit of V_a (or of the piecewise operator with --piecewise) from (x0, 1 - x0)",
         {"a", "b", "x0", "n", "piecewise"}, cmd_simplex},
        {"fixed-points", "Fix(f)", {"a", "b"}, cmd_fixed_points},
        {"two-cycle", "closed-form 2-cycle", {"a", "b"}, cmd_two_cycle},
        {"two-cycle-oracle", "brute-force 2-cycle existence", {"a", "b", "grid"}, cmd_two_cycle_oracle},
        {"cycles", "all cycles up to --max-period", {"a", "b", "max-period", "grid"}, cmd_cycles},
        {"odd-scan", "cycles of odd period 3..--max-odd", {"a", "b", "max-odd", "grid"}, cmd_odd_scan},
        {"lemma-sets", "the sets A1..A4, K1, K2", {"a", "b"}, cmd_lemma_sets},
        {"transitions", "sampled check of the A1..A4 transitions", {"a", "b", "samples"}, cmd_transitions},
        {"lyapunov", "Lyapunov exponent at (a, b), or along --rule",
         {"a", "b", "x0", "n", "burn", "rule", "a-min", "a-max", "steps", "threads"}, cmd_lyapunov},
        {"bifurcation", "bifurcation diagram rows a,b,x along --rule",
         {"rule", "a-min", "a-max", "steps", "x0", "burn", "keep", "threads"}, cmd_bifurcation},
        {"bands", "band count of the limit set along --rule",
         {"rule", "a-min", "a-max", "steps", "x0", "burn", "keep", "gap", "threads"}, cmd_bands},
    };

    std::map<std::string, CLI::App*> subs;
    auto add_knob = [&](CLI::App* sub, const std::string& k) {
        if (k == "a") knob(sub, k, cfg.a, "parameter a");
        else if (k == "b") knob(sub, k, cfg.b, "parameter b");
        else if (k == "x0") knob(sub, k, cfg.x0, "initial point");
        else if (k == "n") knob(sub, k, cfg.n, "iterations");
        else if (k == "burn") knob(sub, k, cfg.burn, "transient iterations discarded");
        else if (k == "keep") knob(sub, k, cfg.keep, "iterates retained per parameter value");
        else if (k == "grid") knob(sub, k, cfg.grid, "scan resolution");
        else if (k == "cap") knob(sub, k, cfg.cap, "iteration cap");
        else if (k == "steps") knob(sub, k, cfg.steps, "number of a-values");
        else if (k == "a-min") knob(sub, k, cfg.a_min, "first a-value");
        else if (k == "a-max") knob(sub, k, cfg.a_max, "last a-value");
        else if (k == "rule") knob(sub, k, cfg.rule, "b as a function of a, e.g. b=a, b=a/2, b=a/(4-a^2)");
        else if (k == "max-period") knob(sub, k, cfg.max_period, "largest period searched (<= 12)");
        else if (k == "max-odd") knob(sub, k, cfg.max_odd, "largest odd period searched");
        else if (k == "gap") knob(sub, k, cfg.gap, "gap separating bands");
        else if (k == "samples") knob(sub, k, cfg.samples, "samples per set");
        else if (k == "threads") knob(sub, k, cfg.threads, "worker threads, 0 = auto");
        else if (k == "piecewise") sub->add_flag("--piecewise", cfg.piecewise, "use V_{a,b}")->envname(env_name(k));
        else if (k == "stop-at-fixed")
            sub->add_flag("--stop-at-fixed", cfg.stop_at_fixed, "stop at an exact fixed point")->envname(env_name(k));
    };
    auto add_output = [&](CLI::App* sub) {
        knob(sub, "format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        knob(sub, "out", cfg.out, "output file (default stdout)");
    };

    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        for (const auto& k : c.knobs) add_knob(sub, k);
        add_output(sub);
        subs[c.name] = sub;
    }
    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    std::vector<std::string> suites{"all"};
    for (const auto& s : suite_names()) suites.push_back(s);
    knob(verify, "suite", cfg.suite, "suite to run")->check(CLI::IsMember(suites));
    knob(verify, "seed", cfg.seed, "seed for sampled checks");
    add_knob(verify, "threads");
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        cfg.format = parse_format(format);
        CLI::App* chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        if (cfg.command == "lyapunov" && chosen->get_option("--n")->count() == 0) {
            cfg.n = kDefaultLyapunovIterations;
        }

        std::ofstream file;
        std::ostream* os = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary);
            if (!file) {
                err << "cannot open " << cfg.out << '\n';
                return kExitUsage;
            }
            os = &file;
        }

        if (cfg.command == "verify") return cmd_verify(cfg, *os, out);
        Emitter emit(cfg, *os);
        for (const auto& c : commands) {
            if (cfg.command == c.name) return c.run(cfg, emit);
        }
        return kExitUsage;
    } catch (const RuleRangeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuleRange;
    } catch (const NumericIntegrityError& e) {
        err << "numeric integrity error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const SimplexViolation& e) {
        err << "simplex violation: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::invalid_argument& e) {  // DegenerateParameters, PreconditionError
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace pwmap
