#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pwmap/cli.hpp"
#include "pwmap/io.hpp"

using namespace pwmap;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "pwmap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

CsvDocument csv(const Run& r)
{
    std::istringstream is(r.out);
    return read_csv(is);
}

}  // namespace

TEST_CASE("orbit rows")
{
    auto r = run({"orbit", "--a", "0.2", "--b", "0.8", "--x0", "0.9", "--n", "50"});
    REQUIRE(r.code == kExitOk);
    CHECK(csv(r).rows.size() == 51);

    r = run({"orbit", "--a", "0.5", "--b", "1", "--x0", "0.47556611", "--n", "6"});
    const auto d = csv(r);
    CHECK(d.real(3, "x") == doctest::Approx(d.real(0, "x")).epsilon(1e-6));
    CHECK(d.real(6, "x") == doctest::Approx(d.real(0, "x")).epsilon(1e-5));

    r = run({"orbit", "--a", "0", "--b", "0.5", "--x0", "0.8", "--n", "100"});
    const auto t = csv(r);
    const double tail = t.real(100, "x");
    CHECK(tail <= 0.5);
    CHECK(t.real(90, "x") == tail);
}

TEST_CASE("cycle commands")
{
    auto r = run({"two-cycle", "--a", "0.8", "--b", "0.8", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    REQUIRE(j["data"]["cycles"].size() == 1);
    CHECK(j["data"]["cycles"][0]["classification"] == "repelling");

    r = run({"fixed-points", "--a", "0.3", "--b", "0.7"});
    auto d = csv(r);
    REQUIRE(d.rows.size() == 2);
    CHECK(d.real(0, "lo") == 0.0);
    CHECK(d.real(1, "lo") == 1.0);

    r = run({"cycles", "--a", "0.5", "--b", "1", "--max-period", "3"});
    d = csv(r);
    bool three = false;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        if (d.rows[i][d.column("period")] == "3" &&
            std::abs(d.real(i, "x") - 0.47556611) < 1e-6) three = true;
    }
    CHECK(three);
}

TEST_CASE("lyapunov and bifurcation")
{
    auto r = run({"lyapunov", "--a", "0.5", "--b", "0.5", "--x0", "0.3"});
    REQUIRE(r.code == kExitOk);
    auto d = csv(r);
    REQUIRE(d.rows.size() == 1);
    CHECK(d.real(0, "lambda") >= 0.0);
    CHECK(d.meta.at("n") == "100000");

    r = run({"bifurcation", "--rule", "b=a", "--steps", "40", "--burn", "1000", "--keep", "100"});
    REQUIRE(r.code == kExitOk);
    CHECK(csv(r).rows.size() == 4000);

    r = run({"bands", "--rule", "b=a", "--a-min", "0.8", "--a-max", "0.8", "--steps", "1"});
    CHECK(csv(r).rows[0][2] == "3");
}

TEST_CASE("exit codes")
{
    CHECK(run({"eval", "--a", "2"}).code == kExitUsage);
    CHECK(run({"eval", "--x0", "1.5"}).code == kExitUsage);
    CHECK(run({"nonsense"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"cycles", "--a", "0", "--b", "0.5"}).code == kExitUsage);
    CHECK(run({"lemma-sets", "--a", "0.5", "--b", "0.9"}).code == kExitUsage);
    CHECK(run({"lyapunov", "--rule", "b=5a/(4-a^2)", "--a-min", "0.1", "--steps", "10"}).code ==
          kExitRuleRange);
    CHECK(run({"eval", "--help"}).code == kExitOk);
}

TEST_CASE("verify")
{
    auto r = run({"verify", "--suite", "conjugacy"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("[PASS] conjugacy") != std::string::npos);
    r = run({"verify", "--suite", "oracle-vs-theorem", "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)["data"]["passed"] == true);
    CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
}

TEST_CASE("environment variables set flags")
{
    ::setenv("PWMAP_A", "0.2", 1);
    ::setenv("PWMAP_B", "0.8", 1);
    ::setenv("PWMAP_X0", "0.25", 1);
    const auto r = run({"eval"});
    ::unsetenv("PWMAP_A");
    ::unsetenv("PWMAP_B");
    ::unsetenv("PWMAP_X0");
    CHECK(csv(r).real(0, "f") == doctest::Approx(0.2875));
    // the command line wins over the environment
    ::setenv("PWMAP_A", "0.9", 1);
    const auto s = run({"eval", "--a", "0.2", "--b", "0.8", "--x0", "0.25"});
    ::unsetenv("PWMAP_A");
    CHECK(csv(s).real(0, "f") == doctest::Approx(0.2875));
}

TEST_CASE("--out writes a file and the executable runs standalone")
{
    const auto path = std::filesystem::temp_directory_path() / "pwmap_test_out.csv";
    const std::string cmd = std::string(PWMAP_EXE) +
                            " invariant-interval --a 0.2 --b 0.8 --out " + path.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(path);
    const auto d = read_csv(in);
    CHECK(d.real(0, "lo") == doctest::Approx(0.3));
    CHECK(d.real(0, "hi") == doctest::Approx(0.55));
    std::filesystem::remove(path);

    const std::string bad = std::string(PWMAP_EXE) + " eval --a 7 2>/dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == kExitUsage);
}
