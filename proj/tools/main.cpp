#include <iostream>

#include <CLI11.hpp>

#include "qmaxwell/runner.hpp"

int main(int argc, char** argv) {
    using qmaxwell::runner::Request;
    CLI::App app{"Variational quantum simulation of the 1D Maxwell equations"};
    app.require_subcommand(1);
    app.fallthrough();

    Request request;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string mode;
    app.add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", request.overrides, "Override a config key (section.key=value)")
        ->take_all()
        ->allow_extra_args(false);
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* mode_opt = app.add_option("--mode", mode, "Evaluation mode: exact or shots:M");

    auto* solve = app.add_subcommand("solve", "Fit (or load) theta0 and run the variational evolution");
    solve->add_flag("--reference", request.with_reference,
                    "Also run the classical reference and report the trace error");
    app.add_subcommand("reference", "Classical forward-Euler reference trajectory");
    auto* compare = app.add_subcommand("compare", "Time-average trace error between two trajectory files");
    compare->add_option("files", request.inputs, "Two trajectory CSV files")->expected(2)->required();
    app.add_subcommand("init-fit", "Fit initial ansatz parameters to the Gaussian pulse");
    app.add_subcommand("ansatz", "Describe the configured ansatz circuit");
    app.add_subcommand("decompose", "Pauli decomposition of the Maxwell generator");
    app.add_subcommand("cost", "Circuit counts and query-cost estimate");
    app.add_subcommand("sweep", "Error versus layers, L = 1..ansatz.max_layers");

    CLI11_PARSE(app, argc, argv);

    request.subcommand = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) request.config_path = config_path;
    if (*seed_opt) request.seed = seed;
    if (*out_opt) request.out_dir = out_dir;
    if (*mode_opt) request.mode = mode;

    try {
        return qmaxwell::runner::run(request, std::cerr);
    } catch (const qmaxwell::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
