//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/gaugeflow.cpp
//! \brief Command-line batch runner.
//---------------------------------------------------------------------------//
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gaugeflow/app/config.hpp"
#include "gaugeflow/app/runner.hpp"
#include "gaugeflow/errors.hpp"

int main(int argc, char** argv)
{
    using namespace gaugeflow;

    CLI::App cli{"Degenerate parabolic gradient-regularity laboratory"};
    std::string subcommand;
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    int threads = 1;

    cli.add_option("--subcommand,subcommand", subcommand, "verify | solve | analyze | report")
        ->required();
    cli.add_option("--config", config_path, "experiment config (JSON)");
    cli.add_option("--out", out, "output directory (overrides the config)");
    cli.add_option("--seed", seed, "random seed (overrides the config)");
    cli.add_option("--threads", threads, "worker threads for the epsilon sweep")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(cli, argc, argv);

    try
    {
        if (subcommand != "verify" && subcommand != "solve" && subcommand != "analyze"
            && subcommand != "report")
        {
            std::cerr << "unknown subcommand '" << subcommand
                      << "' (expected verify, solve, analyze or report)\n";
            return 2;
        }

        app::RunOptions options;
        options.threads = threads;
        if (subcommand == "report")
        {
            options.out = out.value_or("out");
            return app::run_report(options, std::cout);
        }

        app::ExperimentConfig config;
        if (!config_path.empty())
        {
            config = app::load_config(config_path);
        }
        if (seed)
            config.seed = *seed;
        if (out)
            config.output = *out;
        options.out = config.output;

        if (subcommand == "verify")
            return app::run_verify(config, options, std::cout);
        if (subcommand == "solve")
            return app::run_solve(config, options, std::cout);
        return app::run_analyze(config, options, std::cout);
    }
    catch (ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    }
    catch (SolverError const& e)
    {
        std::cerr << "solver error: " << e.what()
                  << " (last gradient norm " << e.last_gradient_norm() << ")\n";
        return 4;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
