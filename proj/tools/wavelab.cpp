// wavelab: batch scenario runner.
//
//   wavelab run <config.json> [--output-dir DIR]
//   wavelab validate <config.json>
//
// Exit status: 0 success, 2 usage or configuration error, 3 numerical halt.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "wavelab/errors.hpp"
#include "wavelab/scenario.hpp"

namespace sc = wavelab::scenario;

int main(int argc, char** argv) {
    CLI::App app{"wavelab: Camassa-Holm and shallow-water scenario runner"};
    app.require_subcommand(1);

    std::string run_config;
    std::string output_dir;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario and write its artifacts");
    run_cmd->add_option("config", run_config, "Scenario JSON file")->required();
    run_cmd->add_option("--output-dir", output_dir, "Override the output directory from the config");

    std::string validate_config;
    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario without running it");
    validate_cmd->add_option("config", validate_config, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sc::exit_usage;
    }

    try {
        if (*validate_cmd) {
            const auto cfg = sc::load_config(validate_config);
            fmt::print("{}: valid {} scenario (n = {}, L = {})\n", validate_config, sc::to_string(cfg.kind), cfg.n,
                       cfg.length);
            return sc::exit_success;
        }

        auto cfg = sc::load_config(run_config);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        const auto report = sc::run(cfg);
        std::cout << report.to_json().dump(2) << '\n';
        if (report.exit_code != sc::exit_success) std::cerr << "wavelab: " << report.diagnostic << '\n';
        return report.exit_code;
    } catch (const wavelab::ConfigError& e) {
        std::cerr << "wavelab: config error: " << e.what() << '\n';
        return sc::exit_usage;
    } catch (const wavelab::PeakonCollisionError& e) {
        std::cerr << "wavelab: " << e.what() << '\n';
        return sc::exit_numerical_halt;
    } catch (const wavelab::WaveBreakingError& e) {
        std::cerr << "wavelab: " << e.what() << '\n';
        return sc::exit_numerical_halt;
    } catch (const wavelab::NonFiniteError& e) {
        std::cerr << "wavelab: " << e.what() << '\n';
        return sc::exit_numerical_halt;
    } catch (const wavelab::NotDiffeomorphismError& e) {
        std::cerr << "wavelab: " << e.what() << '\n';
        return sc::exit_numerical_halt;
    } catch (const std::exception& e) {
        std::cerr << "wavelab: error: " << e.what() << '\n';
        return 1;
    }
}
