//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/pde_solver.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/pde_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
void SolverConfig::validate() const
{
    if (!(dt > 0) || !std::isfinite(dt))
    {
        throw ParameterError("time step must be positive");
    }
    if (!(newton_tol > 0))
    {
        throw ParameterError("Newton tolerance must be positive");
    }
    if (max_newton < 1)
    {
        throw ParameterError("Newton iteration cap must be positive");
    }
    if (!(linesearch.sufficient_decrease > 0
          && linesearch.sufficient_decrease < 0.5)
        || !(linesearch.shrink > 0 && linesearch.shrink < 1))
    {
        throw ParameterError("invalid Armijo parameters");
    }
}

namespace
{
//---------------------------------------------------------------------------//
/*!
 * Step functional J over the interior unknowns of one implicit step.
 */
class StepEnergy
{
  public:
    StepEnergy(Grid const& grid,
               std::span<double const> previous,
               double t_next,
               double dt,
               RegularizedIntegrand const& reg,
               SpaceTimeFunction const& source)
        : grid_(grid), previous_(previous), dt_(dt), reg_(reg)
    {
        area_ = grid.cell_area();
        unknown_.assign(grid.num_nodes(), -1);
        for (int j = 1; j < grid.ny - 1; ++j)
        {
            for (int i = 1; i < grid.nx - 1; ++i)
            {
                unknown_[grid.index(i, j)] = num_unknowns_++;
            }
        }
        coeff_.resize(grid.num_cells());
        auto const& a = reg.base().spec().coeff;
        for (int j = 0; j < grid.ny - 1; ++j)
        {
            for (int i = 0; i < grid.nx - 1; ++i)
            {
                coeff_[cell(i, j)] = a(grid.cell_center(i, j), t_next);
            }
        }
        source_.assign(grid.num_nodes(), 0.0);
        if (source)
        {
            for (int j = 0; j < grid.ny; ++j)
            {
                for (int i = 0; i < grid.nx; ++i)
                {
                    Vec2 const x = grid.node(i, j);
                    source_[grid.index(i, j)] = source(x.x, x.y, t_next);
                }
            }
        }
    }

    int num_unknowns() const { return num_unknowns_; }
    int unknown(int node) const { return unknown_[node]; }

    double value(std::span<double const> v) const
    {
        double nodal = 0;
        for (int n = 0; n < grid_.num_nodes(); ++n)
        {
            if (unknown_[n] < 0)
                continue;
            double const d = v[n] - previous_[n];
            nodal += d * d / (2 * dt_) - source_[n] * v[n];
        }
        double cells = 0;
        for (int j = 0; j < grid_.ny - 1; ++j)
        {
            for (int i = 0; i < grid_.nx - 1; ++i)
            {
                cells += reg_.value_at(coeff_[cell(i, j)],
                                       cell_gradient(grid_, v, i, j));
            }
        }
        return (nodal + cells) * area_;
    }

    //! Gradient over unknowns; optionally assemble the Hessian
    void derivatives(std::span<double const> v,
                     Eigen::VectorXd& grad,
                     std::vector<Eigen::Triplet<double>>* triplets) const
    {
        grad.setZero(num_unknowns_);
        if (triplets)
        {
            triplets->clear();
            triplets->reserve(static_cast<std::size_t>(num_unknowns_) * 10);
        }
        for (int n = 0; n < grid_.num_nodes(); ++n)
        {
            int const u = unknown_[n];
            if (u < 0)
                continue;
            grad[u] += ((v[n] - previous_[n]) / dt_ - source_[n]) * area_;
            if (triplets)
            {
                triplets->emplace_back(u, u, area_ / dt_);
            }
        }

        std::array<Vec2, 3> const b{Vec2{-1 / grid_.hx, -1 / grid_.hy},
                                    Vec2{1 / grid_.hx, 0},
                                    Vec2{0, 1 / grid_.hy}};
        for (int j = 0; j < grid_.ny - 1; ++j)
        {
            for (int i = 0; i < grid_.nx - 1; ++i)
            {
                Jet const jet = reg_.jet_at(coeff_[cell(i, j)],
                                            cell_gradient(grid_, v, i, j));
                std::array<int, 3> const u{unknown_[grid_.index(i, j)],
                                           unknown_[grid_.index(i + 1, j)],
                                           unknown_[grid_.index(i, j + 1)]};
                for (int m = 0; m < 3; ++m)
                {
                    if (u[m] < 0)
                        continue;
                    grad[u[m]] += dot(jet.gradient, b[m]) * area_;
                    if (!triplets)
                        continue;
                    Vec2 const hb = jet.hessian * b[m];
                    for (int k = 0; k < 3; ++k)
                    {
                        if (u[k] < 0)
                            continue;
                        double const entry = dot(hb, b[k]) * area_;
                        if (entry != 0)
                        {
                            triplets->emplace_back(u[k], u[m], entry);
                        }
                    }
                }
            }
        }
    }

    //! Unknown vector → full nodal vector (boundary taken from \c base)
    void scatter(Eigen::VectorXd const& x, std::vector<double>& v) const
    {
        for (int n = 0; n < grid_.num_nodes(); ++n)
        {
            if (unknown_[n] >= 0)
            {
                v[n] = x[unknown_[n]];
            }
        }
    }

    Eigen::VectorXd gather(std::span<double const> v) const
    {
        Eigen::VectorXd x(num_unknowns_);
        for (int n = 0; n < grid_.num_nodes(); ++n)
        {
            if (unknown_[n] >= 0)
            {
                x[unknown_[n]] = v[n];
            }
        }
        return x;
    }

  private:
    Grid const& grid_;
    std::span<double const> previous_;
    double dt_;
    RegularizedIntegrand const& reg_;
    double area_{0};
    int num_unknowns_{0};
    std::vector<int> unknown_;
    std::vector<double> coeff_;
    std::vector<double> source_;

    int cell(int i, int j) const { return j * (grid_.nx - 1) + i; }
};

//---------------------------------------------------------------------------//
void check_finite(double value, char const* what)
{
    if (!std::isfinite(value))
    {
        throw NumericalError(std::string("non-finite ") + what);
    }
}

}  // namespace

//---------------------------------------------------------------------------//
StepResult step(Grid const& grid,
                std::span<double const> previous,
                double t_next,
                RegularizedIntegrand const& reg,
                SpaceTimeFunction const& source,
                SpaceTimeFunction const& boundary,
                SolverConfig const& config)
{
    config.validate();
    if (!(reg.epsilon() > 0))
    {
        throw ParameterError("implicit step needs a positive lift epsilon");
    }
    if (previous.size() != static_cast<std::size_t>(grid.num_nodes()))
    {
        throw ParameterError("previous level does not match the grid");
    }

    StepEnergy energy(grid, previous, t_next, config.dt, reg, source);

    StepResult result;
    result.values.assign(previous.begin(), previous.end());
    for (int j = 0; j < grid.ny; ++j)
    {
        for (int i = 0; i < grid.nx; ++i)
        {
            if (grid.is_boundary(i, j))
            {
                Vec2 const x = grid.node(i, j);
                result.values[grid.index(i, j)] = boundary(x.x, x.y, t_next);
            }
        }
    }

    std::vector<double>& v = result.values;
    std::vector<double> trial = v;
    Eigen::VectorXd grad;
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::SparseMatrix<double> hessian(energy.num_unknowns(),
                                        energy.num_unknowns());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                             Eigen::Lower | Eigen::Upper>
        cg;
    cg.setTolerance(config.cg_tol);

    double j_current = energy.value(v);
    check_finite(j_current, "step energy");
    result.iterate_energies.push_back(j_current);

    auto const& ls = config.linesearch;
    for (int it = 0;; ++it)
    {
        energy.derivatives(v, grad, &triplets);
        result.gradient_norm = grad.size() ? grad.lpNorm<Eigen::Infinity>() : 0;
        check_finite(result.gradient_norm, "energy gradient");
        if (result.gradient_norm <= config.newton_tol)
        {
            break;
        }
        if (it >= config.max_newton)
        {
            throw SolverError("Newton iteration did not converge within "
                                  + std::to_string(config.max_newton)
                                  + " iterations",
                              result.gradient_norm);
        }

        hessian.setFromTriplets(triplets.begin(), triplets.end());
        cg.setMaxIterations(std::max(100, 4 * energy.num_unknowns()));
        cg.compute(hessian);
        Eigen::VectorXd dir = cg.solve(-grad);
        if (cg.info() != Eigen::Success || !dir.allFinite())
        {
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(hessian);
            dir = ldlt.solve(-grad);
        }

        Eigen::VectorXd const x0 = energy.gather(v);
        auto line_search = [&](Eigen::VectorXd const& d) -> bool {
            double const slope = grad.dot(d);
            if (!(slope < 0))
            {
                return false;
            }
            // Predicted decrease below rounding of J: take the full step
            bool const roundoff_regime
                = -slope <= 1e-13 * std::max(1.0, std::abs(j_current));
            double s = 1;
            for (int k = 0; k <= ls.max_backtracks; ++k, s *= ls.shrink)
            {
                energy.scatter(x0 + s * d, trial);
                double const j_trial = energy.value(trial);
                check_finite(j_trial, "step energy");
                if (roundoff_regime
                    || j_trial <= j_current + ls.sufficient_decrease * s * slope)
                {
                    v.swap(trial);
                    j_current = j_trial;
                    return true;
                }
            }
            return false;
        };

        if (!line_search(dir))
        {
            // Jacobi-scaled steepest descent
            Eigen::VectorXd const diag = hessian.diagonal();
            Eigen::VectorXd const d = -grad.cwiseQuotient(diag);
            ++result.gradient_fallbacks;
            if (!line_search(d))
            {
                throw SolverError("line search failed to decrease the step "
                                  "energy",
                                  result.gradient_norm);
            }
        }
        result.iterate_energies.push_back(j_current);
        ++result.newton_iterations;
    }
    return result;
}

//---------------------------------------------------------------------------//
double discrete_energy(Grid const& grid,
                       std::span<double const> values,
                       RegularizedIntegrand const& reg,
                       double t)
{
    auto const& a = reg.base().spec().coeff;
    double sum = 0;
    for (int j = 0; j < grid.ny - 1; ++j)
    {
        for (int i = 0; i < grid.nx - 1; ++i)
        {
            sum += reg.value_at(a(grid.cell_center(i, j), t),
                                cell_gradient(grid, values, i, j));
        }
    }
    return sum * grid.cell_area();
}

//---------------------------------------------------------------------------//
GridField sample_field(Grid const& grid,
                       double t0,
                       double dt,
                       int steps,
                       SpaceTimeFunction const& fn)
{
    GridField field;
    field.grid = grid;
    field.t0 = t0;
    field.dt = dt;
    field.levels.resize(steps + 1);
    for (int k = 0; k <= steps; ++k)
    {
        double const t = field.time(k);
        auto& level = field.levels[k];
        level.resize(grid.num_nodes());
        for (int j = 0; j < grid.ny; ++j)
        {
            for (int i = 0; i < grid.nx; ++i)
            {
                Vec2 const x = grid.node(i, j);
                level[grid.index(i, j)] = fn(x.x, x.y, t);
            }
        }
    }
    return field;
}

//---------------------------------------------------------------------------//
SolveResult solve(Problem const& problem,
                  RegularizedIntegrand const& reg,
                  SolverConfig const& config)
{
    config.validate();
    if (!problem.data)
    {
        throw ParameterError("problem has no initial/boundary data");
    }
    if (!(problem.horizon > 0))
    {
        throw ParameterError("horizon must be positive");
    }
    int const steps
        = std::max(1, static_cast<int>(std::lround(problem.horizon / config.dt)));
    Grid const& grid = problem.grid;

    SolveResult result;
    result.field.grid = grid;
    result.field.t0 = problem.t0;
    result.field.dt = config.dt;
    result.field.levels.reserve(steps + 1);

    std::vector<double> initial(grid.num_nodes());
    for (int j = 0; j < grid.ny; ++j)
    {
        for (int i = 0; i < grid.nx; ++i)
        {
            Vec2 const x = grid.node(i, j);
            initial[grid.index(i, j)] = problem.data(x.x, x.y, problem.t0);
        }
    }
    for (double u : initial)
    {
        result.data_sup_norm = std::max(result.data_sup_norm, std::abs(u));
    }
    result.field.levels.push_back(std::move(initial));

    auto record = [&](int k, int iters) {
        auto const& level = result.field.levels[k];
        double const t = result.field.time(k);
        result.records.push_back(
            {k, t, discrete_energy(grid, level, reg, t), result.field.sup_norm(k), iters});
    };
    record(0, 0);

    for (int k = 0; k < steps; ++k)
    {
        double const t_next = result.field.time(k + 1);
        StepResult s;
        try
        {
            s = step(grid,
                     result.field.levels[k],
                     t_next,
                     reg,
                     problem.source,
                     problem.data,
                     config);
        }
        catch (SolverError const& e)
        {
            throw SolverError("step " + std::to_string(k + 1) + ": " + e.what(),
                              e.last_gradient_norm());
        }
        for (int j = 0; j < grid.ny; ++j)
        {
            for (int i = 0; i < grid.nx; ++i)
            {
                if (grid.is_boundary(i, j))
                {
                    result.data_sup_norm = std::max(
                        result.data_sup_norm,
                        std::abs(s.values[grid.index(i, j)]));
                }
            }
        }
        result.field.levels.push_back(std::move(s.values));
        record(k + 1, s.newton_iterations);
    }
    return result;
}

//---------------------------------------------------------------------------//
double gradient_l2_sq(GridField const& field)
{
    Grid const& g = field.grid;
    double sum = 0;
    for (int k = 1; k < field.num_levels(); ++k)
    {
        for (int j = 0; j < g.ny - 1; ++j)
        {
            for (int i = 0; i < g.nx - 1; ++i)
            {
                sum += norm_sq(field.cell_gradient(k, i, j));
            }
        }
    }
    return sum * g.cell_area() * field.dt;
}

//---------------------------------------------------------------------------//
namespace
{
//! Smooth bump exp(1 - 1/(1-s²)) on |s| < 1, equal to 1 at s = 0.
double bump(double s)
{
    double const q = 1 - s * s;
    return q > 0 ? std::exp(1 - 1 / q) : 0.0;
}

std::vector<double> lattice(double lo, double hi, double radius)
{
    std::vector<double> centers;
    double const span = hi - lo - 2 * radius;
    int const n = std::max(1, static_cast<int>(std::floor(span / radius)) + 1);
    for (int k = 0; k < n; ++k)
    {
        centers.push_back(n == 1 ? 0.5 * (lo + hi)
                                 : lo + radius + span * k / (n - 1));
    }
    return centers;
}
}  // namespace

DiscreteResidual weak_residual(GridField const& field,
                               RegularizedIntegrand const& reg,
                               SpaceTimeFunction const& source,
                               double test_radius)
{
    Grid const& g = field.grid;
    double const r = test_radius;
    double const tau = std::max(r * r, 2 * field.dt);
    double const horizon = field.horizon() - field.t0;
    if (!(r > 0) || 2 * r > g.x1() - g.x0 || 2 * r > g.y1() - g.y0
        || 2 * tau > horizon)
    {
        throw ParameterError("test radius does not fit in the solved domain");
    }
    int const nt = field.num_steps();
    auto const& coeff = reg.base().spec().coeff;
    double const area = g.cell_area();

    // Flux Ĥ_ε(D_h u^k) and source at every level k ≥ 1
    std::vector<std::vector<Vec2>> flux(nt + 1);
    std::vector<std::vector<double>> f(nt + 1);
    for (int k = 1; k <= nt; ++k)
    {
        double const t = field.time(k);
        flux[k].resize(g.num_cells());
        for (int j = 0; j < g.ny - 1; ++j)
        {
            for (int i = 0; i < g.nx - 1; ++i)
            {
                flux[k][j * (g.nx - 1) + i] = reg.jet_at(
                    coeff(g.cell_center(i, j), t), field.cell_gradient(k, i, j))
                                                .gradient;
            }
        }
        f[k].assign(g.num_nodes(), 0.0);
        if (source)
        {
            for (int j = 0; j < g.ny; ++j)
            {
                for (int i = 0; i < g.nx; ++i)
                {
                    Vec2 const x = g.node(i, j);
                    f[k][g.index(i, j)] = source(x.x, x.y, t);
                }
            }
        }
    }

    DiscreteResidual result;
    std::vector<double> phi_x(g.nx);
    std::vector<double> phi_y(g.ny);
    std::vector<double> phi_t(nt + 1);
    for (double tc : lattice(field.t0, field.horizon(), tau))
    {
        for (int k = 0; k <= nt; ++k)
        {
            phi_t[k] = bump((field.time(k) - tc) / tau);
        }
        phi_t.front() = phi_t.back() = 0;
        for (double yc : lattice(g.y0, g.y1(), r))
        {
            for (int j = 0; j < g.ny; ++j)
            {
                phi_y[j] = (j == 0 || j == g.ny - 1) ? 0 : bump((g.node(0, j).y - yc) / r);
            }
            for (double xc : lattice(g.x0, g.x1(), r))
            {
                for (int i = 0; i < g.nx; ++i)
                {
                    phi_x[i] = (i == 0 || i == g.nx - 1)
                                   ? 0
                                   : bump((g.node(i, 0).x - xc) / r);
                }
                double residual = 0;
                double l1 = 0;
                for (int k = 0; k < nt; ++k)
                {
                    double const dphi_t = phi_t[k + 1] - phi_t[k];
                    double const pt = phi_t[k + 1];
                    auto const& u = field.levels[k];
                    for (int j = 1; j < g.ny - 1; ++j)
                    {
                        for (int i = 1; i < g.nx - 1; ++i)
                        {
                            double const s = phi_x[i] * phi_y[j];
                            if (s == 0)
                                continue;
                            int const n = g.index(i, j);
                            residual -= u[n] * s * dphi_t * area;
                            residual -= field.dt * f[k + 1][n] * s * pt * area;
                            l1 += field.dt * std::abs(s * pt) * area;
                        }
                    }
                    if (pt == 0)
                        continue;
                    for (int j = 0; j < g.ny - 1; ++j)
                    {
                        for (int i = 0; i < g.nx - 1; ++i)
                        {
                            Vec2 const dphi{
                                (phi_x[i + 1] - phi_x[i]) * phi_y[j] / g.hx,
                                phi_x[i] * (phi_y[j + 1] - phi_y[j]) / g.hy};
                            if (dphi == Vec2{})
                                continue;
                            residual += field.dt * pt
                                        * dot(flux[k + 1][j * (g.nx - 1) + i], dphi)
                                        * area;
                        }
                    }
                }
                if (l1 > 0)
                {
                    result.value = std::max(result.value, std::abs(residual) / l1);
                }
            }
        }
    }
    return result;
}

//---------------------------------------------------------------------------//
GridField steklov_average(GridField const& series, double h)
{
    double const horizon = series.horizon();
    if (!(h > 0) || !(h < horizon - series.t0))
    {
        throw ParameterError("Steklov window must satisfy 0 < h < T");
    }
    GridField result = series;
    int const n = series.grid.num_nodes();
    double const eps = 1e-12 * std::max(1.0, std::abs(horizon));
    for (int k = 0; k < series.num_levels(); ++k)
    {
        auto& out = result.levels[k];
        double const a = series.time(k);
        double const b = a + h;
        if (!(a < horizon - h - eps))
        {
            std::fill(out.begin(), out.end(), 0.0);
            continue;
        }
        std::fill(out.begin(), out.end(), 0.0);
        // Exact integral of the piecewise-linear interpolant on [a, b]
        for (int m = k; m < series.num_steps(); ++m)
        {
            double const tl = series.time(m);
            double const tr = series.time(m + 1);
            double const lo = std::max(a, tl);
            double const hi = std::min(b, tr);
            if (hi <= lo)
            {
                if (tl >= b)
                    break;
                continue;
            }
            double const wl0 = (tr - lo) / (tr - tl);
            double const wl1 = (tr - hi) / (tr - tl);
            // ∫_lo^hi of the linear interpolant = (hi-lo)·(value at midpoint)
            double const w_left = 0.5 * (wl0 + wl1);
            double const w_right = 1 - w_left;
            auto const& ul = series.levels[m];
            auto const& ur = series.levels[m + 1];
            for (int i = 0; i < n; ++i)
            {
                out[i] += (hi - lo) * (w_left * ul[i] + w_right * ur[i]);
            }
        }
        for (double& v : out)
        {
            v /= h;
        }
    }
    return result;
}

}  // namespace gaugeflow
