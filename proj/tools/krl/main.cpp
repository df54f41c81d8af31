#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krl/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Principal eigenpairs of monotone homogeneous operators on cones"};
    app.require_subcommand(1);

    std::string config;
    auto* solve = app.add_subcommand("solve", "run continuation and write the trace and eigenpair");
    solve->add_option("config", config, "config file")->required();

    auto* verify = app.add_subcommand("verify", "run the property checks and write the report");
    verify->add_option("config", config, "config file")->required();

    std::string key;
    std::vector<std::string> values;
    auto* sweep = app.add_subcommand("sweep", "solve once per value of one config field");
    sweep->add_option("config", config, "config file")->required();
    sweep->add_option("--key", key, "field to vary, e.g. p or operator.mu")->required();
    sweep->add_option("--values", values, "comma-separated values")->delimiter(',')->expected(0, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : krl::cli::kExitConfig;
    }

    if (*solve) return krl::cli::run_solve(config, std::cout, std::cerr);
    if (*verify) return krl::cli::run_verify(config, std::cout, std::cerr);
    return krl::cli::run_sweep(config, key, values, std::cout, std::cerr);
}
