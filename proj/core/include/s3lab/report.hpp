// Run configuration and report types shared by the command line tool and the
// verification suite. Reports serialize deterministically: identical config
// and seed give byte-identical output apart from the duration field.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace s3lab {

inline constexpr const char* kVersion = "0.1.0";

/// One named scalar result with its tolerance annotation and verdict.
/// Verdicts: "pass" / "fail" for assertions, "info" for plain values,
/// "skipped" for relations that do not apply, "vacuous" for reports run
/// beyond their preconditions.
struct ResultRow {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    std::string verdict = "info";
};

/// Flat key = value configuration; file values can be overridden by flags.
class RunConfig {
  public:
    RunConfig() = default;
    explicit RunConfig(std::string command) : command_(std::move(command)) {}

    static RunConfig from_file(const std::string& path, std::string command);

    const std::string& command() const { return command_; }
    const std::map<std::string, std::string>& values() const { return values_; }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_seed() const;

    /// Range checks for the target command; throws std::invalid_argument.
    void validate() const;

  private:
    std::string command_;
    std::map<std::string, std::string> values_;
};

struct Report {
    std::string command;
    std::map<std::string, std::string> config;
    std::vector<ResultRow> results;
    double duration_ms = 0.0;
    std::string version = kVersion;

    bool all_pass() const;
    ResultRow& add(std::string name, double value, double tolerance, std::string verdict);

    /// Deterministic JSON: {command, config, results, duration_ms, version}.
    std::string to_json() const;
    static Report from_json(const std::string& text);

    /// CSV: one row per result, columns name,value,tolerance,verdict.
    std::string to_csv() const;
};

/// Writes via a temp file in the same directory plus rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace s3lab
