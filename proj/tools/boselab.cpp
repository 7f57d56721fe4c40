#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "boselab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"boselab: mean-field and fluctuation dynamics experiments"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file");
    run_cmd->add_option("config", config_path, "Path to key=value config")->required();
    auto* validate_cmd =
        app.add_subcommand("validate", "Validate a config without running");
    validate_cmd->add_option("config", config_path, "Path to key=value config")
        ->required();
    app.add_subcommand("list-experiments", "List available experiment names");

    CLI11_PARSE(app, argc, argv);

    if (const char* threads = std::getenv("BOSELAB_THREADS"))
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));

    if (app.got_subcommand("list-experiments")) {
        for (const auto& name : boselab::experiment_names()) std::cout << name << '\n';
        return 0;
    }

    boselab::Config cfg;
    try {
        cfg = boselab::Config::parse_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return boselab::experiment_config_error;
    }

    std::string message;
    if (app.got_subcommand("validate")) {
        const int rc = boselab::validate_experiment(cfg, message);
        if (rc != 0)
            std::cerr << "invalid: " << message << '\n';
        else
            std::cout << "ok\n";
        return rc;
    }

    const int rc = boselab::run_experiment(cfg, message);
    if (rc != 0) std::cerr << "error (" << rc << "): " << message << '\n';
    return rc;
}
