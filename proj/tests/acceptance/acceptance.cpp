//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/acceptance/acceptance.cpp
//! \brief Acceptance criteria 1-10: one PASS/FAIL line each.
//---------------------------------------------------------------------------//
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gaugeflow/analysis.hpp"
#include "gaugeflow/app/config.hpp"
#include "gaugeflow/app/runner.hpp"
#include "gaugeflow/iteration_lemmas.hpp"
#include "gaugeflow/properties.hpp"

using namespace gaugeflow;
using std::numbers::pi;

namespace
{
//---------------------------------------------------------------------------//
constexpr std::uint64_t seed = 42;

struct Outcome
{
    bool passed{true};
    std::vector<std::string> notes;

    void require(bool ok, std::string const& note)
    {
        if (!ok)
        {
            passed = false;
            notes.push_back("FAILED " + note);
        }
    }
    void info(std::string const& note) { notes.push_back(note); }
};

void absorb(Outcome& out, SuiteResult const& suite)
{
    for (auto const& c : suite.checks)
    {
        if (!c.passed())
        {
            out.require(false,
                        fmt::format("{} / {}: worst {:.4g} (tol {:.1g}) {}",
                                    suite.name,
                                    c.name,
                                    c.worst,
                                    c.tolerance,
                                    c.detail));
        }
    }
}

double sup_diff(std::span<double const> a, std::span<double const> b)
{
    double d = 0;
    for (std::size_t n = 0; n < a.size(); ++n)
        d = std::max(d, std::abs(a[n] - b[n]));
    return d;
}

IntegrandSpec ball_spec(double p, std::string const& coeff, double c1, double c2)
{
    IntegrandSpec spec{ConvexBody::euclidean_ball(1), p, {}};
    spec.coeff.expr = Expression(coeff);
    spec.coeff.lower = c1;
    spec.coeff.upper = c2;
    return spec;
}

Problem square_problem(int cells, double horizon, SpaceTimeFunction data)
{
    Problem pr;
    pr.grid = Grid::rectangle(cells + 1, cells + 1, 0, pi, 0, pi);
    pr.horizon = horizon;
    pr.data = std::move(data);
    return pr;
}

//---------------------------------------------------------------------------//
// 1. Gauge axioms
Outcome criterion_1()
{
    Outcome out;
    for (auto const& body : reference_bodies())
        absorb(out, gauge_axiom_suite(body, seed, 10000, 1e-9));
    return out;
}

//---------------------------------------------------------------------------//
// 2. G_δ bi-Lipschitz and collapse
Outcome criterion_2()
{
    Outcome out;
    double const deltas[] = {0.1, 0.5, 1};
    for (auto const& body : reference_bodies())
    {
        auto suite = gdelta_suite(body, deltas, seed, 10000, 1e-9);
        absorb(out, suite);
        for (double d : deltas)
        {
            if (auto const* c = suite.find(fmt::format("collapse[delta={}]", d)))
            {
                out.info(fmt::format("{} delta={}: {}", body.describe(), d, c->detail));
            }
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// 3. Prototype Hessian sandwich
Outcome criterion_3()
{
    Outcome out;
    double const exponents[] = {2, 3, 4};
    absorb(out, prototype_hessian_suite(exponents, 0.5, 2, seed, 10000));
    return out;
}

//---------------------------------------------------------------------------//
// 4. Regularization-chain certificate
Outcome criterion_4()
{
    Outcome out;
    for (double p : {2.0, 3.0})
    {
        auto spec = ball_spec(p, "1.25 + 0.75*sin(x + t)", 0.5, 2);
        for (double eps : {1.0, 0.1, 0.01})
        {
            auto reg = build_regularized(spec, 3, eps);
            RegularizationSuiteOptions opt;
            opt.delta = 0.5;
            opt.samples = 10000;
            auto suite = regularization_suite(reg, seed, opt);
            absorb(out, suite);
            if (auto const* c = suite.find("bilinear_range"))
                out.info(fmt::format("p={} eps={}: {}", p, eps, c->detail));
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// 5. Manufactured ε-heat orders
Outcome criterion_5()
{
    Outcome out;
    double const eps = 0.1;
    double const amp = 0.9;
    double const horizon = 1.0;
    auto spec = ball_spec(2, "1", 1, 1);
    auto reg = build_regularized(spec, 1, eps);
    auto data = [=](double x, double y, double t) {
        return amp * std::exp(-2 * eps * t) * std::sin(x) * std::sin(y);
    };
    SolverConfig base;
    base.newton_tol = 1e-12;

    auto max_error = [&](int cells, double dt, std::function<double(double)> decay) {
        auto pr = square_problem(cells, horizon, data);
        SolverConfig cfg = base;
        cfg.dt = dt;
        auto run = solve(pr, reg, cfg);
        auto const& g = pr.grid;
        auto const& last = run.field.levels.back();
        double const amp_t = decay(run.field.horizon());
        double err = 0;
        for (int j = 0; j < g.ny; ++j)
        {
            for (int i = 0; i < g.nx; ++i)
            {
                Vec2 x = g.node(i, j);
                double exact = amp_t * std::sin(x.x) * std::sin(x.y);
                err = std::max(err, std::abs(last[g.index(i, j)] - exact));
            }
        }
        return err;
    };

    // Temporal: 64² grid against the semi-discrete solution e^{-ε λ_h t}
    {
        int const cells = 64;
        double const h = pi / cells;
        double const lambda_h = 8 / (h * h) * std::pow(std::sin(h / 2), 2);
        std::vector<double> errs;
        for (double dt : {0.04, 0.02, 0.01})
        {
            errs.push_back(max_error(cells, dt, [=](double t) {
                return amp * std::exp(-eps * lambda_h * t);
            }));
        }
        for (int r = 0; r < 2; ++r)
        {
            double order = std::log2(errs[r] / errs[r + 1]);
            out.info(fmt::format("temporal errors {:.3e} -> {:.3e}: order {:.3f}",
                                 errs[r], errs[r + 1], order));
            out.require(order >= 0.9, fmt::format("temporal order {:.3f} < 0.9", order));
        }
    }
    // Spatial: grids 16², 32², 64² against the time-discrete continuum mode
    {
        double const dt = 0.01;
        std::vector<double> errs;
        for (int cells : {16, 32, 64})
        {
            errs.push_back(max_error(cells, dt, [=](double t) {
                double steps = std::round(t / dt);
                return amp * std::pow(1 + 2 * eps * dt, -steps);
            }));
        }
        for (int r = 0; r < 2; ++r)
        {
            double order = std::log2(errs[r] / errs[r + 1]);
            out.info(fmt::format("spatial errors {:.3e} -> {:.3e}: order {:.3f}",
                                 errs[r], errs[r + 1], order));
            out.require(order >= 1.8, fmt::format("spatial order {:.3f} < 1.8", order));
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// 6. Degenerate stationarity of Lipschitz data
Outcome criterion_6()
{
    Outcome out;
    // Slope 1/√2 keeps forward-difference gradients inside the unit ball
    double const s = 1 / std::sqrt(2.0);
    std::map<std::string, SpaceTimeFunction> data{
        {"cone", [=](double x, double y, double) {
             return s * std::hypot(x - 1.3, y - 1.7);
         }},
        {"ridge", [=](double x, double y, double) {
             return s * std::abs(0.6 * (x - 1.6) + 0.8 * (y - 1.4));
         }},
        {"plane", [=](double x, double y, double) { return s * (0.8 * x - 0.6 * y); }},
    };
    auto spec = ball_spec(2, "1", 1, 1);
    auto reg = build_regularized(spec, 1, 1e-6);
    auto degenerate = reg.with_epsilon(0);
    SolverConfig cfg;
    cfg.dt = 0.01;
    double const test_radius = 0.5;
    for (auto const& [name, fn] : data)
    {
        auto pr = square_problem(64, 50 * cfg.dt, fn);
        auto run = solve(pr, reg, cfg);
        double drift = 0;
        for (int k = 1; k < run.field.num_levels(); ++k)
            drift = std::max(drift, sup_diff(run.field.levels[k], run.field.levels[k - 1]));
        // The datum itself as a time-independent field
        auto stationary
            = sample_field(pr.grid, 0, cfg.dt, run.field.num_steps(), fn);
        double res_data = weak_residual(stationary, degenerate, nullptr, test_radius).value;
        double res_run = weak_residual(run.field, degenerate, nullptr, test_radius).value;
        out.info(fmt::format("{}: drift {:.3e}, residual(datum) {:.3e}, "
                             "residual(u_eps) {:.3e}",
                             name, drift, res_data, res_run));
        out.require(drift <= 1e-5, fmt::format("{} drift {:.3e} > 1e-5", name, drift));
        out.require(res_data <= 1e-8,
                    fmt::format("{} residual {:.3e} > 1e-8", name, res_data));
    }
    return out;
}

//---------------------------------------------------------------------------//
// 7 and 8 share the prototype sweep on a 64² grid
std::vector<double> const sweep_eps{1, 0.3, 0.1, 0.03, 0.01};

std::vector<SolveResult> prototype_sweep(double horizon)
{
    auto spec = ball_spec(2, "1", 1, 1);
    auto data = [](double x, double y, double) {
        return 2 * std::sin(x) * std::sin(y);
    };
    std::vector<SolveResult> runs;
    for (double eps : sweep_eps)
    {
        auto reg = build_regularized(spec, 4, eps);
        auto pr = square_problem(64, horizon, data);
        SolverConfig cfg;
        cfg.dt = 0.01;
        runs.push_back(solve(pr, reg, cfg));
    }
    return runs;
}

Outcome criterion_7()
{
    Outcome out;
    auto runs = prototype_sweep(1.0);
    std::vector<GridField> fields;
    for (std::size_t n = 0; n < runs.size(); ++n)
    {
        auto diss = energy_dissipation_check(runs[n], 1e-9);
        auto maxp = max_principle_check(runs[n], 1e-8);
        out.require(diss.passed(),
                    fmt::format("eps={} dissipation worst {:.3e}", sweep_eps[n], diss.worst));
        out.require(maxp.passed(),
                    fmt::format("eps={} max principle worst {:.3e}", sweep_eps[n], maxp.worst));
        fields.push_back(runs[n].field);
    }
    auto const& g = fields.front().grid;
    auto datum = sample_field(g, 0, 0.01, fields.front().num_steps(),
                              [](double x, double y, double) {
                                  return 2 * std::sin(x) * std::sin(y);
                              });
    auto bound = uniform_energy_bound(sweep_eps, fields, datum);
    std::string ratios;
    for (double r : bound.ratios)
        ratios += fmt::format(" {:.4f}", r);
    out.info(fmt::format("gradient ratios:{}; constant {:.4f}", ratios, bound.constant));
    out.require(!bound.blow_up && std::isfinite(bound.constant),
                "gradient bound grows as epsilon decreases");
    return out;
}

Outcome criterion_8()
{
    Outcome out;
    auto runs = prototype_sweep(0.25);
    std::vector<GridField> fields;
    for (auto& r : runs)
        fields.push_back(std::move(r.field));
    GDeltaMap map(ConvexBody::euclidean_ball(1), 0.25);
    auto table = eps_convergence_table(sweep_eps, fields, map, 0.05);
    for (auto const& row : table.rows)
        out.info(fmt::format("eps={}: distance {:.5f}", row.epsilon, row.distance));
    out.require(table.monotone, "distances to the reference are not monotone");
    return out;
}

//---------------------------------------------------------------------------//
// 9. Iteration lemmas
Outcome criterion_9()
{
    Outcome out;
    auto g = geometric_convergence(1, 2, 1, 0.5);
    bool exact = g.status == ConvergenceStatus::converged && g.threshold == 0.5
                 && !g.iterates.empty();
    // Y_{i+1} = 2^i Y_i² from 1/2 gives Y_i = 2^{-(i+1)}
    for (std::size_t i = 0; i < g.iterates.size(); ++i)
        exact = exact && g.iterates[i] == std::ldexp(1.0, -static_cast<int>(i) - 1);
    out.require(exact, "trajectory for (1, 2, 1, 0.5) differs from 2^-(i+1)");
    out.info(fmt::format("{} iterates, last {:.3e}", g.iterates.size(),
                         g.iterates.empty() ? 0.0 : g.iterates.back()));
    auto bad = geometric_convergence(1, 2, 1, 0.6);
    out.require(bad.status == ConvergenceStatus::threshold_violated,
                "Y0 = 0.6 was not rejected");

    double const R1 = 2;
    std::vector<double> radii, phi;
    for (int k = 0; k <= 60; ++k)
    {
        radii.push_back(0.5 + 1.45 * k / 60.0);
        phi.push_back(1 / (R1 - radii.back()));
    }
    for (double eta : {0.25, 0.5, 0.75})
    {
        auto cert = absorption_iteration(radii, phi, {eta, 1, 0, 0, 1, 1});
        out.require(cert.hypothesis_holds && cert.dominates,
                    fmt::format("absorption eta={} not certified", eta));
        out.info(fmt::format("eta={}: C~ {:.4f}, worst ratio {:.4f}", eta,
                             cert.constant, cert.worst_ratio));
    }
    return out;
}

//---------------------------------------------------------------------------//
// 10. Analysis correctness and determinism
Regime recount_regime(GridField const& f,
                      Cylinder const& cyl,
                      double delta,
                      double mu,
                      double nu,
                      DualSample const& dual,
                      std::vector<double>& fractions)
{
    auto const& g = f.grid;
    fractions.clear();
    Regime label = Regime::degenerate;
    for (auto e : dual.points)
    {
        long total = 0, above = 0;
        for (int k = 0; k < f.num_levels(); ++k)
        {
            double t = f.time(k);
            if (!(t > cyl.t0 - cyl.radius * cyl.radius + 1e-12 && t <= cyl.t0 + 1e-12))
                continue;
            for (int j = 0; j + 1 < g.ny; ++j)
            {
                for (int i = 0; i + 1 < g.nx; ++i)
                {
                    double cx = g.x0 + (i + 0.5) * g.hx - cyl.center.x;
                    double cy = g.y0 + (j + 0.5) * g.hy - cyl.center.y;
                    if (cx * cx + cy * cy >= cyl.radius * cyl.radius)
                        continue;
                    ++total;
                    auto const& u = f.levels[k];
                    double ux = (u[g.index(i + 1, j)] - u[g.index(i, j)]) / g.hx;
                    double uy = (u[g.index(i, j + 1)] - u[g.index(i, j)]) / g.hy;
                    if (ux * e.x + uy * e.y - (1 + delta) > (1 - nu) * mu)
                        ++above;
                }
            }
        }
        double complement = double(total - above) / total;
        fractions.push_back(complement);
        if (complement < nu)
            label = Regime::non_degenerate;
    }
    return label;
}

std::map<std::string, std::string> snapshot(std::filesystem::path const& dir)
{
    std::map<std::string, std::string> files;
    for (auto const& entry : std::filesystem::recursive_directory_iterator(dir))
    {
        if (!entry.is_regular_file())
            continue;
        std::ifstream is(entry.path(), std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        files[std::filesystem::relative(entry.path(), dir).string()] = ss.str();
    }
    return files;
}

Outcome criterion_10()
{
    Outcome out;
    // Dyadic spacing makes affine differences exact
    auto grid = Grid::rectangle(33, 33, 0, 2, 0, 2);
    auto affine = sample_field(grid, 0, 1.0 / 64, 16, [](double x, double y, double t) {
        return 1.5 * x - 0.25 * y + 3 + 0 * t;
    });
    for (double rho : {0.5, 0.25, 0.125})
    {
        double e = excess(affine, {{1, 1}, 0.25, rho});
        out.require(e == 0, fmt::format("affine excess {:.3e} at rho {}", e, rho));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1, 1);
    auto dual = sample_dual_boundary(ConvexBody::euclidean_ball(1), 64);
    Cylinder const cyl{{1, 1}, 0.25, 0.5};
    double const delta = 0.25, mu = 0.2, nu = 0.25;
    int mismatches = 0, non_degenerate = 0;
    for (int trial = 0; trial < 20; ++trial)
    {
        double ax = 2.5 * unif(rng), ay = 2.5 * unif(rng);
        double amp = 0.4 * (1 + unif(rng)), kx = 4 + 2 * unif(rng);
        auto f = sample_field(grid, 0, 1.0 / 64, 16, [&](double x, double y, double t) {
            return ax * x + ay * y + amp * std::sin(kx * x + 2 * y) * (1 + t);
        });
        std::vector<double> fractions;
        Regime expected = recount_regime(f, cyl, delta, mu, nu, dual, fractions);
        auto got = classify_regime(f, cyl, delta, mu, nu, dual);
        bool same = got.label == expected
                    && got.complement_fractions.size() == fractions.size();
        for (std::size_t m = 0; same && m < dual.points.size(); ++m)
        {
            double th = (1 - nu) * mu;
            double above = superlevel_measure(f, cyl, dual.points[m], delta, th);
            same = std::abs(got.complement_fractions[m] - fractions[m]) <= 1e-14
                   && std::abs(above - (1 - fractions[m])) <= 1e-14;
        }
        mismatches += !same;
        non_degenerate += got.label == Regime::non_degenerate;
    }
    out.info(fmt::format("{} of 20 random fields non-degenerate", non_degenerate));
    out.require(mismatches == 0, fmt::format("{} recount mismatches", mismatches));

    auto config = app::load_config(GAUGEFLOW_SOURCE_DIR "/configs/default.json");
    auto dir = std::filesystem::temp_directory_path() / "gaugeflow_acceptance_rerun";
    std::filesystem::remove_all(dir);
    std::ostringstream log;
    int rc1 = app::run_solve(config, {dir, 1}, log);
    auto first = snapshot(dir);
    int rc2 = app::run_solve(config, {dir, 1}, log);
    auto second = snapshot(dir);
    out.require(rc1 == 0 && rc2 == 0, "solve failed: " + log.str());
    out.require(!first.empty() && first == second, "rerun outputs differ");
    out.info(fmt::format("{} output files compared", first.size()));
    std::filesystem::remove_all(dir);
    return out;
}

//---------------------------------------------------------------------------//
struct Criterion
{
    int id;
    char const* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> const criteria{
        {1, "gauge axiom suite", 10, criterion_1},
        {2, "G_delta bi-Lipschitz and collapse", 10, criterion_2},
        {3, "prototype Hessian sandwich", 30, criterion_3},
        {4, "regularization-chain certificate", 60, criterion_4},
        {5, "manufactured heat orders", 120, criterion_5},
        {6, "degenerate stationarity", 120, criterion_6},
        {7, "energy, max principle, uniform gradient bound", 300, criterion_7},
        {8, "epsilon-convergence of G_delta(Du)", 300, criterion_8},
        {9, "iteration lemmas", 1, criterion_9},
        {10, "analysis correctness and determinism", 60, criterion_10},
    };
    bool verbose = false;
    std::vector<int> selected;
    for (int a = 1; a < argc; ++a)
    {
        std::string arg = argv[a];
        if (arg == "-v")
            verbose = true;
        else
            selected.push_back(std::stoi(arg));
    }

    int failures = 0;
    for (auto const& c : criteria)
    {
        if (!selected.empty()
            && std::find(selected.begin(), selected.end(), c.id) == selected.end())
        {
            continue;
        }
        auto const start = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = c.run();
        }
        catch (std::exception const& e)
        {
            out.require(false, std::string("exception: ") + e.what());
        }
        double const seconds
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                  .count();
        out.require(seconds < c.budget_seconds,
                    fmt::format("runtime {:.2f} s exceeds {} s", seconds, c.budget_seconds));
        failures += !out.passed;
        fmt::print("{} criterion {:>2}: {} ({:.2f} s)\n",
                   out.passed ? "PASS" : "FAIL",
                   c.id,
                   c.title,
                   seconds);
        for (auto const& note : out.notes)
        {
            if (verbose || note.rfind("FAILED", 0) == 0)
                fmt::print("    {}\n", note);
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
