#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "pwmap/io.hpp"

using namespace pwmap;

TEST_CASE("format_real round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 0.47556611, 1e-300, std::nextafter(0.5, 1.0)}) {
        CHECK(std::stod(format_real(v)) == v);
    }
}

TEST_CASE("config pairs round-trip")
{
    RunConfig c;
    c.command = "bifurcation";
    c.a = 0.123456789;
    c.rule = "b=a/(4-a^2)";
    c.threads = 8;
    c.format = OutputFormat::Json;
    c.piecewise = true;
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : c.to_pairs()) kv[k] = v;
    CHECK(RunConfig::from_pairs(kv) == c);
    CHECK(config_from_json(config_json(c)) == c);
}

TEST_CASE("csv write and read")
{
    RunConfig c;
    c.command = "orbit";
    c.x0 = 0.9;
    std::ostringstream os;
    CsvWriter w(os);
    w.config(c);
    w.header({"n", "x"});
    w.row({"0", format_real(0.9)});
    w.row({"1", format_real(0.8352)});

    std::istringstream is(os.str());
    const auto doc = read_csv(is);
    CHECK(doc.meta.at("tool") == "pwmap");
    CHECK(doc.meta.at("command") == "orbit");
    CHECK(RunConfig::from_pairs(doc.meta) == c);
    CHECK(doc.rows.size() == 2);
    CHECK(doc.real(1, "x") == 0.8352);
    CHECK_THROWS((void)doc.column("y"));

    CHECK(csv_payload(os.str()) == "n,x\n0,0.90000000000000002\n1,0.83520000000000005\n");
}

TEST_CASE("json envelope")
{
    RunConfig c;
    c.command = "eval";
    const Json j = envelope(c, Json{{"f", 0.5}});
    CHECK(j["meta"]["tool"] == "pwmap");
    CHECK(j["meta"]["config"]["command"] == "eval");
    CHECK(j["data"]["f"] == 0.5);
}

TEST_CASE("format parsing")
{
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK_THROWS((void)parse_format("xml"));
}
