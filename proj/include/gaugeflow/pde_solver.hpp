//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/pde_solver.hpp
//! \brief Minimizing-movements solver for ∂_t u - div Ĥ_ε(x,t,Du) = f.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "grid_field.hpp"
#include "integrand.hpp"

namespace gaugeflow
{
//! Closed-form f(x, y, t)
using SpaceTimeFunction = std::function<double(double, double, double)>;

//---------------------------------------------------------------------------//
struct ArmijoParams
{
    double sufficient_decrease{1e-4};
    double shrink{0.5};
    int max_backtracks{60};
};

struct SolverConfig
{
    double dt{0.01};
    double newton_tol{1e-10};  //!< on ‖∇J‖_∞
    int max_newton{100};
    ArmijoParams linesearch{};
    double cg_tol{1e-13};  //!< relative residual of the Newton solve

    //! Throws ParameterError unless dt > 0 and newton_tol > 0
    void validate() const;
};

//---------------------------------------------------------------------------//
//! Cauchy–Dirichlet data on a rectangle × [t0, t0 + horizon].
struct Problem
{
    Grid grid;
    double t0{0};
    double horizon{1};
    //! Initial values at t0 and Dirichlet trace on the boundary nodes
    SpaceTimeFunction data;
    SpaceTimeFunction source;
};

//---------------------------------------------------------------------------//
struct StepResult
{
    std::vector<double> values;
    int newton_iterations{0};
    int gradient_fallbacks{0};
    double gradient_norm{0};
    //! Step energy J at every accepted iterate, starting from the guess
    std::vector<double> iterate_energies;
};

struct StepRecord
{
    int step{0};
    double t{0};
    double energy{0};  //!< Σ_cells F̂_ε(D_h u^k)·|cell|
    double sup_norm{0};
    int newton_iterations{0};
};

struct SolveResult
{
    GridField field;
    std::vector<StepRecord> records;  //!< one per stored level
    double data_sup_norm{0};  //!< sup of |data| over initial + boundary
};

//! Weak-form residual over a bump test basis.
struct DiscreteResidual
{
    double value{0};
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

/*!
 * Advance one implicit step by minimizing
 * J(v) = Σ_nodes [(v-u^k)²/(2dt) - f v]|cell| + Σ_cells F̂_ε(D_h v)|cell|
 * over interior nodes with boundary values pinned to data(·, t_next).
 */
StepResult step(Grid const& grid,
                std::span<double const> previous,
                double t_next,
                RegularizedIntegrand const& reg,
                SpaceTimeFunction const& source,
                SpaceTimeFunction const& boundary,
                SolverConfig const& config);

//! March the problem over round(horizon / dt) steps.
SolveResult solve(Problem const& problem,
                  RegularizedIntegrand const& reg,
                  SolverConfig const& config);

//! Σ_cells F̂_ε(x_c, t, D_h v)·|cell|
double discrete_energy(Grid const& grid,
                       std::span<double const> values,
                       RegularizedIntegrand const& reg,
                       double t);

//! Σ_cells |D_h v|²·|cell|·dt summed over all stored levels after the first
double gradient_l2_sq(GridField const& field);

/*!
 * Max over interior bump tests φ of radius r (time radius max(r², 2dt)) of
 * |∬ -u ∂_tφ + <Ĥ_ε(D_h u), D_h φ> - f φ| / ‖φ‖_{L¹}.
 */
DiscreteResidual weak_residual(GridField const& field,
                               RegularizedIntegrand const& reg,
                               SpaceTimeFunction const& source,
                               double test_radius);

//! Forward Steklov average in time; zero on [T-h, T).
GridField steklov_average(GridField const& series, double h);

//! Evaluate fn on every node at levels t0 + k dt, k = 0..steps.
GridField sample_field(Grid const& grid,
                       double t0,
                       double dt,
                       int steps,
                       SpaceTimeFunction const& fn);

}  // namespace gaugeflow
