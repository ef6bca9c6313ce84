#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jcengine/cli.hpp"
#include "jcengine/cycle_simulator.hpp"

namespace jcengine::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("invalid value '" + value + "' for " + key);
    return out;
}

}  // namespace

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& value) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    auto real = [&] { return parse_number<double>(key, value); };

    CycleParams& p = c.params;
    if (key == "omega1") p.omega1 = real();
    else if (key == "omega3") p.omega3 = real();
    else if (key == "mu") p.mu = real();
    else if (key == "delta") p.delta = real();
    else if (key == "kappa12") p.kappa12 = real();
    else if (key == "kappa23") p.kappa23 = real();
    else if (key == "tau1") p.tau1 = real();
    else if (key == "tau3") p.tau3 = real();
    else if (key == "eps_a") p.eps_a = real();
    else if (key == "eps_b") p.eps_b = real();
    else if (key == "tau_a") p.tau_a = real();
    else if (key == "tau_b") p.tau_b = real();
    else if (key == "pulse_mode") {
        try {
            p.pulse_mode = parse_pulse_mode(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    else if (key == "quanta_bound") c.quanta_bound = parse_number<int>(key, value);
    else if (key == "cycles") c.cycles = parse_number<long long>(key, value);
    else if (key == "initial") c.initial = value;
    else if (key == "out") c.out = value;
    else if (key == "format") c.format = parse_output_format(value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "tol_operator") c.tolerances.operator_check = real();
    else if (key == "tol_drift") c.tolerances.drift = real();
    else if (key == "fault") c.fault = value;
    else throw ConfigError("unknown configuration key '" + raw_key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key");
        try {
            apply_setting(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

std::string resolved_initial(const RunConfig& config) {
    return config.initial == "random" ? "random:" + std::to_string(config.seed) : config.initial;
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (quanta_bound < 1) throw ConfigError("quanta_bound must be at least 1");
    if (cycles < 0) throw ConfigError("cycles must be nonnegative");
    if (!(tolerances.operator_check > 0) || !(tolerances.drift > 0)) throw ConfigError("tolerances must be positive");
    if (!fault.empty() && fault != "closed_form") throw ConfigError("unknown fault '" + fault + "' (expected closed_form)");
    try {
        const InitialState spec = parse_initial_state(resolved_initial(*this));
        if (required_quanta(spec) > quanta_bound)
            throw ConfigError("initial state '" + initial + "' needs more than " + std::to_string(quanta_bound) + " quanta");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace jcengine::cli
