#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jcengine/params.hpp"

namespace jcengine::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidConfig = 2;

/// Bad configuration: unknown key, malformed value, violated invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

struct Tolerances {
    double operator_check = 1e-10;
    double drift = 1e-9;
};

struct RunConfig {
    CycleParams params;
    int quanta_bound = 4;
    long long cycles = 10;
    std::string initial = "product:0,g,0";
    std::optional<std::string> out;  // stdout when empty
    OutputFormat format = OutputFormat::csv;
    Tolerances tolerances;
    std::uint64_t seed = 0;
    /// Test fixture for the verify command. "closed_form" drops one term of
    /// the composed S closed form so the two-path check must fail.
    std::string fault;

    /// Throws ConfigError.
    void validate() const;
};

/// Sets one key. Keys match the flag names with '-' or '_' (omega1, eps_a,
/// quanta_bound, tol_operator, ...). Throws ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// "key = value" lines; '#' starts a comment; blank lines ignored.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// The initial-state text with "random" (no seed) resolved against config.seed.
std::string resolved_initial(const RunConfig& config);

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<double, std::string>;

struct Column {
    std::string name;
    std::string unit;

    bool operator==(const Column&) const = default;
};

struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    bool operator==(const Table&) const = default;
};

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// '#'-prefixed metadata lines, a "name [unit]" header, then comma-separated rows.
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);
Table read_csv(std::istream& is);
Table read_json(std::istream& is);

/// Writes to config.out, or to `fallback` when no path is set. Throws IoError.
void emit(const Table& table, const RunConfig& config, std::ostream& fallback);

// ---------------------------------------------------------------------------
// Commands

struct CommandResult {
    Table table;
    int exit_code = kExitOk;
    std::string message;  // names the first failure, empty on success
};

CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_simulate(const RunConfig& config);
CommandResult cmd_table1(const RunConfig& config);

}  // namespace jcengine::cli
