#include "pwmap/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pwmap {

namespace {

double to_real(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

std::uint64_t to_count(const std::string& s)
{
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a count: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string join_commas(const std::vector<std::string>& cells)
{
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

}  // namespace

const char* to_string(OutputFormat f) noexcept
{
    return f == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_format(const std::string& s)
{
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_pairs() const
{
    return {
        {"command", command},
        {"a", format_real(a)},
        {"b", format_real(b)},
        {"x0", format_real(x0)},
        {"n", std::to_string(n)},
        {"burn", std::to_string(burn)},
        {"keep", std::to_string(keep)},
        {"grid", std::to_string(grid)},
        {"cap", std::to_string(cap)},
        {"steps", std::to_string(steps)},
        {"a_min", format_real(a_min)},
        {"a_max", format_real(a_max)},
        {"rule", rule},
        {"max_period", std::to_string(max_period)},
        {"max_odd", std::to_string(max_odd)},
        {"gap", format_real(gap)},
        {"samples", std::to_string(samples)},
        {"suite", suite},
        {"seed", std::to_string(seed)},
        {"threads", std::to_string(threads)},
        {"format", to_string(format)},
        {"out", out},
        {"piecewise", piecewise ? "1" : "0"},
        {"stop_at_fixed", stop_at_fixed ? "1" : "0"},
    };
}

RunConfig RunConfig::from_pairs(const std::map<std::string, std::string>& kv)
{
    RunConfig c;
    auto get = [&](const char* key, auto&& apply) {
        if (auto it = kv.find(key); it != kv.end()) apply(it->second);
    };
    get("command", [&](const std::string& v) { c.command = v; });
    get("a", [&](const std::string& v) { c.a = to_real(v); });
    get("b", [&](const std::string& v) { c.b = to_real(v); });
    get("x0", [&](const std::string& v) { c.x0 = to_real(v); });
    get("n", [&](const std::string& v) { c.n = to_count(v); });
    get("burn", [&](const std::string& v) { c.burn = to_count(v); });
    get("keep", [&](const std::string& v) { c.keep = to_count(v); });
    get("grid", [&](const std::string& v) { c.grid = to_count(v); });
    get("cap", [&](const std::string& v) { c.cap = to_count(v); });
    get("steps", [&](const std::string& v) { c.steps = to_count(v); });
    get("a_min", [&](const std::string& v) { c.a_min = to_real(v); });
    get("a_max", [&](const std::string& v) { c.a_max = to_real(v); });
    get("rule", [&](const std::string& v) { c.rule = v; });
    get("max_period", [&](const std::string& v) { c.max_period = to_count(v); });
    get("max_odd", [&](const std::string& v) { c.max_odd = to_count(v); });
    get("gap", [&](const std::string& v) { c.gap = to_real(v); });
    get("samples", [&](const std::string& v) { c.samples = to_count(v); });
    get("suite", [&](const std::string& v) { c.suite = v; });
    get("seed", [&](const std::string& v) { c.seed = to_count(v); });
    get("threads", [&](const std::string& v) { c.threads = std::stoi(v); });
    get("format", [&](const std::string& v) { c.format = parse_format(v); });
    get("out", [&](const std::string& v) { c.out = v; });
    get("piecewise", [&](const std::string& v) { c.piecewise = v == "1"; });
    get("stop_at_fixed", [&](const std::string& v) { c.stop_at_fixed = v == "1"; });
    return c;
}

void CsvWriter::meta(const std::string& key, const std::string& value)
{
    os_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::config(const RunConfig& cfg)
{
    meta("tool", kToolName);
    meta("version", kToolVersion);
    for (const auto& [k, v] : cfg.to_pairs()) meta(k, v);
}

void CsvWriter::header(const std::vector<std::string>& columns) { os_ << join_commas(columns) << '\n'; }

void CsvWriter::row(const std::vector<std::string>& cells) { os_ << join_commas(cells) << '\n'; }

std::size_t CsvDocument::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no column '" + name + "'");
}

double CsvDocument::real(std::size_t row, const std::string& name) const
{
    return to_real(rows.at(row).at(column(name)));
}

CsvDocument read_csv(std::istream& is)
{
    CsvDocument doc;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.starts_with("# ")) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            doc.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (!have_header) {
            doc.header = split_commas(line);
            have_header = true;
            continue;
        }
        auto cells = split_commas(line);
        if (cells.size() != doc.header.size()) {
            throw std::runtime_error("csv row has " + std::to_string(cells.size()) +
                                     " cells, header has " + std::to_string(doc.header.size()));
        }
        doc.rows.push_back(std::move(cells));
    }
    return doc;
}

std::string csv_payload(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (line.starts_with("#")) continue;
        out += line;
        out += '\n';
    }
    return out;
}

Json config_json(const RunConfig& cfg)
{
    Json j = Json::object();
    for (const auto& [k, v] : cfg.to_pairs()) j[k] = v;
    return j;
}

RunConfig config_from_json(const Json& j)
{
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : j.items()) kv[k] = v.get<std::string>();
    return RunConfig::from_pairs(kv);
}

Json envelope(const RunConfig& cfg, Json data)
{
    Json meta = Json::object();
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["config"] = config_json(cfg);
    Json doc = Json::object();
    doc["meta"] = std::move(meta);
    doc["data"] = std::move(data);
    return doc;
}

}  // namespace pwmap
