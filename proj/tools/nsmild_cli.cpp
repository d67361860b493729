#include "nsmild/commands.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace nsmild::cli;

    CLI::App app{"Spectral mild-solution toolkit for the incompressible Navier-Stokes equations on the torus"};
    app.require_subcommand(1);

    CommandOptions options;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", options.config_path, "JSON experiment file")->required();
        sub->add_option("--out", options.out_dir, "Output directory (overrides run.out_dir)");
        sub->add_option("--seed", seed, "Seed (overrides run.seed)");
        sub->add_flag("--quiet", options.quiet, "Suppress the summary on standard output");
    };

    CLI::App* run = app.add_subcommand("run", "March or Picard-solve and write diagnostics and snapshots");
    CLI::App* verify = app.add_subcommand("verify", "Run the operator identity and claim checks");
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate bilinear and assumption (F) constants");
    CLI::App* oracle = app.add_subcommand("oracle", "Compare the solver against the Taylor-Green vortex");
    for (CLI::App* sub : {run, verify, estimate, oracle})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    for (CLI::App* sub : {run, verify, estimate, oracle})
        if (sub->count("--seed") > 0)
            options.seed = seed;

    try {
        if (*run)
            return cmd_run(options);
        if (*verify)
            return cmd_verify(options);
        if (*estimate)
            return cmd_estimate(options);
        return cmd_oracle(options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}
