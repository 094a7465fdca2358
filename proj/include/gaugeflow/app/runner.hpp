//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/app/runner.hpp
//! \brief Subcommand drivers: verify, solve, analyze, report.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "../pde_solver.hpp"
#include "config.hpp"

namespace gaugeflow::app
{
struct RunOptions
{
    std::filesystem::path out{"out"};
    int threads{1};
};

//! Validated problem setup shared by the subcommands.
struct Prepared
{
    ExperimentConfig config;
    std::string hash;
    IntegrandSpec spec;
    Problem problem;
    SolverConfig solver;
    //! Independent of t and free of sources: dissipation and max principle
    //! apply
    bool autonomous{false};
};

Prepared prepare(ExperimentConfig const& config);

struct GradientBound
{
    double K{0};
    std::string source;  //!< "config" or "bootstrap"
};

/*!
 * K from the config, or 2 × max |D_h u| of a pre-solve with ε = 1 whose own
 * chain uses the largest data gradient.
 */
GradientBound resolve_gradient_bound(Prepared const& prepared);

struct EpsilonRun
{
    double epsilon{0};
    SolveResult result;
};

//! Solve every ε level; ε levels are distributed over \c threads workers.
std::vector<EpsilonRun>
solve_sweep(Prepared const& prepared, double K, int threads);

//! Cylinders from the plan, or drawn from the seed when none are listed
std::vector<Cylinder> analysis_cylinders(ExperimentConfig const& config);

/*!
 * Write excess/regime/modulus tables per ε and the ε-convergence tables;
 * returns the JSON analysis section.
 */
nlohmann::json analyze_fields(Prepared const& prepared,
                              std::vector<double> const& epsilons,
                              std::vector<GridField> const& fields,
                              std::filesystem::path const& out,
                              int threads);

//! Directory of one ε level below the output root
std::filesystem::path epsilon_dir(std::filesystem::path const& out, double eps);

int run_verify(ExperimentConfig const& config, RunOptions const& options, std::ostream& log);
int run_solve(ExperimentConfig const& config, RunOptions const& options, std::ostream& log);
int run_analyze(ExperimentConfig const& config, RunOptions const& options, std::ostream& log);
int run_report(RunOptions const& options, std::ostream& log);

}  // namespace gaugeflow::app
