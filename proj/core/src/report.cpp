#include "s3lab/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace s3lab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds{
        "surface-report", "tube-volume",    "focal-radius", "verify-chain", "link-distance",
        "link-number",    "gehring-search", "convexity-check", "band-width", "verify-all"};
    return cmds;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path, std::string command) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    RunConfig cfg(std::move(command));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     " is not 'key = value': '" + t + "'");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' is not a number: '" + it->second +
                                    "'");
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    if (v != std::floor(v))
        throw std::invalid_argument("config key '" + key + "' is not an integer");
    return static_cast<int>(v);
}

std::uint64_t RunConfig::get_seed() const {
    auto it = values_.find("seed");
    if (it == values_.end()) return 42;
    return std::stoull(it->second);
}

void RunConfig::validate() const {
    if (known_commands().count(command_) == 0)
        throw std::invalid_argument("unknown command '" + command_ + "'");
    if (has("radius")) {
        const double r = get_double("radius", 0.0);
        if (!(r > 0.0 && r < M_PI / 2.0))
            throw std::invalid_argument("radius must lie in (0, pi/2), got " +
                                        get("radius", ""));
    }
    if (has("resolution")) {
        const int n = get_int("resolution", 0);
        if (n < 8 || n > 4096)
            throw std::invalid_argument("resolution must lie in [8, 4096]");
    }
    if (has("nt") && get_int("nt", 32) < 4)
        throw std::invalid_argument("nt must be >= 4");
    if (has("pairs") && get_int("pairs", 0) < 1)
        throw std::invalid_argument("pairs must be positive");
    if (has("level") && !(get_double("level", 0.0) > 0.0))
        throw std::invalid_argument("level must be positive");
    if (has("format")) {
        const std::string f = get("format", "json");
        if (f != "json" && f != "csv")
            throw std::invalid_argument("format must be json or csv, got '" + f + "'");
    }
    if (command_ == "convexity-check" && has("radius")) {
        // convexity wants r > pi/2; the generic (0, pi/2) range does not apply
    }
}

bool Report::all_pass() const {
    for (const ResultRow& r : results)
        if (r.verdict == "fail") return false;
    return true;
}

ResultRow& Report::add(std::string name, double value, double tolerance, std::string verdict) {
    results.push_back(ResultRow{std::move(name), value, tolerance, std::move(verdict)});
    return results.back();
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    nlohmann::ordered_json jc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) jc[k] = v;
    j["config"] = std::move(jc);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ResultRow& r : results) {
        nlohmann::ordered_json row;
        row["name"] = r.name;
        row["value"] = r.value;
        row["tolerance"] = r.tolerance;
        row["verdict"] = r.verdict;
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    j["duration_ms"] = duration_ms;
    j["version"] = version;
    return j.dump(2) + "\n";
}

Report Report::from_json(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    Report rep;
    rep.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) rep.config[k] = v.get<std::string>();
    for (const auto& row : j.at("results")) {
        rep.results.push_back(ResultRow{row.at("name").get<std::string>(),
                                        row.at("value").get<double>(),
                                        row.at("tolerance").get<double>(),
                                        row.at("verdict").get<std::string>()});
    }
    rep.duration_ms = j.at("duration_ms").get<double>();
    rep.version = j.at("version").get<std::string>();
    return rep;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "name,value,tolerance,verdict\n";
    out.precision(17);
    for (const ResultRow& r : results)
        out << r.name << ',' << r.value << ',' << r.tolerance << ',' << r.verdict << '\n';
    return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace s3lab
