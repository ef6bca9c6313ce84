// jcengine: verify | spectrum | simulate | table1
//
// Settings come from defaults, then --config, then individual flags.
// Exit status: 0 success, 1 failed check, 2 invalid configuration or I/O error.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jcengine/cli.hpp"
#include "jcengine/errors.hpp"

namespace cli = jcengine::cli;

int main(int argc, char** argv) {
    CLI::App app{"Three-level engine between two oscillators: closed-form checks, spectra, multi-cycle runs."};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "key = value configuration file");

    // Every override is kept as text and routed through the same parser as
    // the config file, so both accept identical spellings.
    std::map<std::string, std::optional<std::string>> overrides;
    const std::pair<const char*, const char*> flags[] = {
        {"quanta-bound", "largest total quanta number retained"},
        {"cycles", "number of cycles to simulate"},
        {"initial", "initial state: product:m,l,k | superposition:amp@m,l,k;... | transfer:n,+|-,k | random[:seed]"},
        {"out", "output path (stdout when omitted)"},
        {"format", "csv or json"},
        {"seed", "seed for random initial states and verification draws"},
        {"omega1", "cold oscillator frequency"},
        {"omega3", "warm oscillator frequency"},
        {"mu", "engine level parameter mu"},
        {"delta", "engine level parameter delta"},
        {"kappa12", "cold coupling"},
        {"kappa23", "warm coupling"},
        {"tau1", "cold contact duration"},
        {"tau3", "warm contact duration"},
        {"eps-a", "pulse a field strength"},
        {"eps-b", "pulse b field strength"},
        {"tau-a", "pulse a duration (default: quarter period)"},
        {"tau-b", "pulse b duration (default: quarter period)"},
        {"pulse-mode", "strong_limit or finite"},
        {"tol-operator", "tolerance for operator checks"},
        {"tol-drift", "tolerance for trajectory drift"},
        {"fault", "inject a fault into verify (closed_form)"},
    };
    for (const auto& [name, help] : flags) app.add_option(std::string("--") + name, overrides[name], help);

    std::string command;
    for (const char* name : {"verify", "spectrum", "simulate", "table1"}) {
        app.add_subcommand(name)->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitInvalidConfig;
    }

    cli::RunConfig config;
    try {
        if (config_path) config = cli::load_config(*config_path);
        for (const auto& [name, value] : overrides)
            if (value) cli::apply_setting(config, name, *value);
        config.validate();
    } catch (const cli::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return cli::kExitInvalidConfig;
    } catch (const cli::IoError& e) {
        std::cerr << e.what() << '\n';
        return cli::kExitInvalidConfig;
    }

    try {
        cli::CommandResult result;
        if (command == "verify") result = cli::cmd_verify(config);
        else if (command == "spectrum") result = cli::cmd_spectrum(config);
        else if (command == "simulate") result = cli::cmd_simulate(config);
        else result = cli::cmd_table1(config);

        cli::emit(result.table, config, std::cout);
        if (!result.message.empty()) std::cerr << result.message << '\n';
        return result.exit_code;
    } catch (const cli::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return cli::kExitInvalidConfig;
    } catch (const cli::IoError& e) {
        std::cerr << e.what() << '\n';
        return cli::kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return cli::kExitInvalidConfig;
    } catch (const jcengine::ConsistencyError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return cli::kExitCheckFailed;
    } catch (const jcengine::InvarianceError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return cli::kExitCheckFailed;
    }
}
