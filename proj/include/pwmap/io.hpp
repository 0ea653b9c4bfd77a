#pragma once

// Run configuration and the CSV / JSON formats written by the command-line tool.
//
// CSV layout:
//   # key=value        metadata, one line per entry (tool, version, every config knob)
//   col1,col2,...      header
//   v1,v2,...          data rows; reals use 17 significant digits
//
// JSON layout: {"meta": {"tool", "version", "config": {...}, ...}, "data": ...}

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pwmap {

inline constexpr const char* kToolName = "pwmap";
inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string command;
    double a = 0.5;
    double b = 0.5;
    double x0 = 0.3;
    std::uint64_t n = 100;
    std::uint64_t burn = 10'000;
    std::uint64_t keep = 500;
    std::uint64_t grid = 10'000;
    std::uint64_t cap = 1'000'000;
    std::uint64_t steps = 400;
    double a_min = 0.05;
    double a_max = 1.0;
    std::string rule;  // empty: single (a, b) point
    std::uint64_t max_period = 3;
    std::uint64_t max_odd = 7;
    double gap = 0.01;
    std::uint64_t samples = 10'000;
    std::string suite = "all";
    std::uint64_t seed = 20240601;
    int threads = 0;
    OutputFormat format = OutputFormat::Csv;
    std::string out;  // empty: stdout
    bool piecewise = false;
    bool stop_at_fixed = false;

    // Every knob as key=value text, in a fixed order; reals printed round-trip exact.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> to_pairs() const;
    // Inverse of to_pairs; unknown keys are ignored, missing keys keep their defaults.
    static RunConfig from_pairs(const std::map<std::string, std::string>& kv);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] const char* to_string(OutputFormat f) noexcept;
[[nodiscard]] OutputFormat parse_format(const std::string& s);

// "%.17g".
[[nodiscard]] std::string format_real(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void meta(const std::string& key, const std::string& value);
    void config(const RunConfig& cfg);  // tool, version and every config knob
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& os_;
};

struct CsvDocument {
    std::map<std::string, std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;  // throws if absent
    [[nodiscard]] double real(std::size_t row, const std::string& name) const;
};

[[nodiscard]] CsvDocument read_csv(std::istream& is);

// Data lines only (metadata stripped), for byte comparison of payloads.
[[nodiscard]] std::string csv_payload(const std::string& text);

using Json = nlohmann::ordered_json;

[[nodiscard]] Json config_json(const RunConfig& cfg);
[[nodiscard]] RunConfig config_from_json(const Json& j);
[[nodiscard]] Json envelope(const RunConfig& cfg, Json data);

}  // namespace pwmap
