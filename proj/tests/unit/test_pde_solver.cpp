//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_pde_solver.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gaugeflow/errors.hpp"
#include "gaugeflow/pde_solver.hpp"
#include "gaugeflow/properties.hpp"

namespace gaugeflow
{
namespace
{
using std::numbers::pi;

IntegrandSpec ball_spec(double p = 2)
{
    IntegrandSpec spec{ConvexBody::euclidean_ball(1), p, {}};
    spec.coeff.expr = Expression::constant(1);
    return spec;
}

Problem box_problem(int n, double horizon, SpaceTimeFunction data)
{
    Problem pr;
    pr.grid = Grid::rectangle(n, n, 0, pi, 0, pi);
    pr.horizon = horizon;
    pr.data = std::move(data);
    return pr;
}

//---------------------------------------------------------------------------//
TEST(Solver, zero_data_gives_zero_field)
{
    auto reg = build_regularized(ball_spec(), 1, 0.1);
    auto pr = box_problem(17, 0.05, [](double, double, double) { return 0.0; });
    SolverConfig cfg;
    auto run = solve(pr, reg, cfg);
    ASSERT_EQ(run.field.num_levels(), 6);
    for (auto const& level : run.field.levels)
        for (double v : level)
            EXPECT_EQ(v, 0);
    EXPECT_EQ(run.data_sup_norm, 0);
}

TEST(Solver, lipschitz_stationary_data_barely_moves)
{
    auto reg = build_regularized(ball_spec(), 1, 1e-6);
    auto cone = [](double x, double y, double) {
        return 0.7 * std::hypot(x - 1.3, y - 1.9);
    };
    auto pr = box_problem(33, 0.1, cone);
    SolverConfig cfg;
    auto run = solve(pr, reg, cfg);
    for (int k = 1; k < run.field.num_levels(); ++k)
    {
        double drift = 0;
        for (std::size_t n = 0; n < run.field.levels[k].size(); ++n)
            drift = std::max(drift, std::abs(run.field.levels[k][n]
                                             - run.field.levels[k - 1][n]));
        EXPECT_LE(drift, 1e-5);
    }
}

TEST(Solver, newton_energies_decrease)
{
    auto reg = build_regularized(ball_spec(3), 4, 0.05);
    auto pr = box_problem(21, 0.01, [](double x, double y, double) {
        return 2 * std::sin(x) * std::sin(y);
    });
    SolverConfig cfg;
    std::vector<double> prev(pr.grid.num_nodes());
    for (int j = 0; j < pr.grid.ny; ++j)
        for (int i = 0; i < pr.grid.nx; ++i)
        {
            auto x = pr.grid.node(i, j);
            prev[pr.grid.index(i, j)] = pr.data(x.x, x.y, 0);
        }
    auto s = step(pr.grid, prev, cfg.dt, reg, nullptr, pr.data, cfg);
    ASSERT_GE(s.iterate_energies.size(), 2u);
    for (std::size_t k = 1; k < s.iterate_energies.size(); ++k)
        EXPECT_LE(s.iterate_energies[k], s.iterate_energies[k - 1] + 1e-14);
    EXPECT_LE(s.gradient_norm, cfg.newton_tol);
}

TEST(Solver, dissipation_and_max_principle)
{
    auto reg = build_regularized(ball_spec(), 4, 0.1);
    auto pr = box_problem(25, 0.1, [](double x, double y, double) {
        return 2 * std::sin(x) * std::sin(y);
    });
    auto run = solve(pr, reg, SolverConfig{});
    EXPECT_TRUE(energy_dissipation_check(run).passed());
    EXPECT_TRUE(max_principle_check(run).passed());
    EXPECT_NEAR(run.data_sup_norm, 2 * std::sin(pi / 2) * std::sin(pi / 2), 1e-2);
}

TEST(Solver, failure_reports_step)
{
    auto reg = build_regularized(ball_spec(), 4, 0.1);
    auto pr = box_problem(17, 0.03, [](double x, double y, double) {
        return 2 * std::sin(x) * std::sin(y);
    });
    SolverConfig cfg;
    cfg.max_newton = 1;
    cfg.newton_tol = 1e-300;
    try
    {
        solve(pr, reg, cfg);
        FAIL() << "expected a solver error";
    }
    catch (SolverError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos)
            << e.what();
    }
}

TEST(Solver, config_validation)
{
    SolverConfig cfg;
    cfg.dt = 0;
    EXPECT_THROW(cfg.validate(), ParameterError);
}

//---------------------------------------------------------------------------//
TEST(WeakResidual, discrete_minimizer_is_small)
{
    auto reg = build_regularized(ball_spec(), 4, 0.2);
    auto pr = box_problem(25, 0.2, [](double x, double y, double) {
        return 2 * std::sin(x) * std::sin(y);
    });
    SolverConfig cfg;
    auto run = solve(pr, reg, cfg);
    double area = pr.grid.cell_area();
    auto res = weak_residual(run.field, reg, nullptr, 0.3);
    EXPECT_LE(res.value, 10 * cfg.newton_tol / area);
}

TEST(WeakResidual, random_field_is_detected)
{
    auto reg = build_regularized(ball_spec(), 4, 0.2);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(-1, 1);
    auto grid = Grid::rectangle(25, 25, 0, pi, 0, pi);
    GridField f{grid, 0, 0.01, {}};
    for (int k = 0; k <= 20; ++k)
    {
        std::vector<double> v(grid.num_nodes());
        for (double& x : v)
            x = unif(rng);
        f.levels.push_back(v);
    }
    EXPECT_GT(weak_residual(f, reg, nullptr, 0.3).value, 1e-3);
    EXPECT_THROW(weak_residual(f, reg, nullptr, 5), ParameterError);
}

//---------------------------------------------------------------------------//
TEST(Steklov, constant_and_linear_series)
{
    auto grid = Grid::rectangle(3, 3, 0, 1, 0, 1);
    double const dt = 0.01;
    auto lin = sample_field(grid, 0, dt, 100, [](double, double, double t) {
        return t;
    });
    auto cst = sample_field(grid, 0, dt, 100, [](double, double, double) {
        return 2.5;
    });
    double const h = 0.1;
    auto sl = steklov_average(lin, h);
    auto sc = steklov_average(cst, h);
    for (int k = 0; k <= 100; ++k)
    {
        double t = lin.time(k);
        double expect_lin = t < 1 - h - 1e-12 ? t + h / 2 : 0;
        double expect_cst = t < 1 - h - 1e-12 ? 2.5 : 0;
        EXPECT_NEAR(sl.levels[k][4], expect_lin, 1e-12) << t;
        EXPECT_NEAR(sc.levels[k][4], expect_cst, 1e-12) << t;
    }
    EXPECT_THROW(steklov_average(lin, 1.5), ParameterError);
}

TEST(Steklov, suite_passes)
{
    auto suite = steklov_suite(Grid::rectangle(5, 5, 0, 1, 0, 1), 0.01, 50, 0.05);
    for (auto const& c : suite.checks)
        EXPECT_TRUE(c.passed()) << c.name;
}

}  // namespace
}  // namespace gaugeflow
