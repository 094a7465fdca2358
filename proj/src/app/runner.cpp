//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/app/runner.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/app/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "gaugeflow/analysis.hpp"
#include "gaugeflow/checkpoint.hpp"
#include "gaugeflow/errors.hpp"
#include "gaugeflow/gmaps.hpp"
#include "gaugeflow/properties.hpp"

namespace gaugeflow::app
{
namespace
{
using nlohmann::json;
namespace fs = std::filesystem;

std::string num(double v)
{
    return fmt::format("{:.17g}", v);
}

//! Run f(0..n-1) on up to \c threads workers; rethrows the first failure
//! in index order.
template<class F>
void parallel_for(std::size_t n, int threads, F&& f)
{
    int const workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                f(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::future<void>> pool;
    for (int w = 1; w < workers; ++w)
    {
        pool.push_back(std::async(std::launch::async, work));
    }
    work();
    for (auto& p : pool)
    {
        p.get();
    }
    for (auto& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
}

class CsvFile
{
  public:
    CsvFile(fs::path const& path, std::string const& header) : os_(path)
    {
        if (!os_)
        {
            throw ParameterError("cannot write '" + path.string() + "'");
        }
        os_ << header << '\n';
    }

    template<class... Cells>
    void row(Cells const&... cells)
    {
        std::string line;
        ((line += cell(cells), line += ','), ...);
        line.pop_back();
        os_ << line << '\n';
    }

  private:
    std::ofstream os_;

    static std::string cell(double v) { return num(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(std::string const& v) { return v; }
    static std::string cell(char const* v) { return v; }
};

void write_json(fs::path const& path, json const& j)
{
    std::ofstream os(path);
    if (!os)
    {
        throw ParameterError("cannot write '" + path.string() + "'");
    }
    os << j.dump(2) << '\n';
}

double max_cell_gradient(GridField const& f)
{
    double sup = 0;
    Grid const& g = f.grid;
    for (int k = 0; k < f.num_levels(); ++k)
    {
        for (int j = 0; j < g.ny - 1; ++j)
        {
            for (int i = 0; i < g.nx - 1; ++i)
            {
                sup = std::max(sup, norm(f.cell_gradient(k, i, j)));
            }
        }
    }
    return sup;
}

json check_json(CheckResult const& c)
{
    return {{"worst", c.worst},
            {"tolerance", c.tolerance},
            {"samples", c.samples},
            {"passed", c.passed()}};
}

int num_steps(ExperimentConfig const& c)
{
    return std::max(1, static_cast<int>(std::lround(c.horizon / c.dt)));
}

Region default_region(ExperimentConfig const& c)
{
    double const cx = 0.5 * (c.xmin + c.xmax);
    double const cy = 0.5 * (c.ymin + c.ymax);
    double const wx = 0.25 * (c.xmax - c.xmin);
    double const wy = 0.25 * (c.ymax - c.ymin);
    return {cx - wx, cx + wx, cy - wy, cy + wy, c.t0, c.t0 + num_steps(c) * c.dt};
}

}  // namespace

//---------------------------------------------------------------------------//
Prepared prepare(ExperimentConfig const& config)
{
    validate(config);
    Prepared p{config, config_hash_hex(config), integrand_spec(config), {}, {}, false};

    Expression const data(config.data);
    Expression const source(config.source);
    p.problem.grid = config_grid(config);
    p.problem.t0 = config.t0;
    p.problem.horizon = num_steps(config) * config.dt;
    p.problem.data = [data](double x, double y, double t) { return data(x, y, t); };
    if (!(source.is_constant() && source(0, 0, 0) == 0))
    {
        p.problem.source
            = [source](double x, double y, double t) { return source(x, y, t); };
    }
    p.solver.dt = config.dt;
    p.solver.newton_tol = config.newton_tol;
    p.solver.max_newton = config.max_newton;
    p.autonomous = !p.problem.source && !data.depends_on_time()
                   && !p.spec.coeff.expr.depends_on_time();
    return p;
}

GradientBound resolve_gradient_bound(Prepared const& p)
{
    if (p.config.K)
    {
        return {*p.config.K, "config"};
    }
    GridField const datum = sample_field(p.problem.grid,
                                         p.problem.t0,
                                         p.solver.dt,
                                         num_steps(p.config),
                                         p.problem.data);
    double const K0 = max_cell_gradient(datum);
    auto const reg = build_regularized(p.spec, K0, 1.0);
    SolveResult const pre = solve(p.problem, reg, p.solver);
    return {2 * max_cell_gradient(pre.field), "bootstrap"};
}

std::vector<EpsilonRun> solve_sweep(Prepared const& p, double K, int threads)
{
    auto const& eps = p.config.epsilons;
    std::vector<EpsilonRun> runs(eps.size());
    parallel_for(eps.size(), threads, [&](std::size_t i) {
        runs[i].epsilon = eps[i];
        auto const reg = build_regularized(p.spec, K, eps[i]);
        try
        {
            runs[i].result = solve(p.problem, reg, p.solver);
        }
        catch (SolverError const& e)
        {
            throw SolverError(fmt::format("epsilon {}: {}", eps[i], e.what()),
                              e.last_gradient_norm());
        }
    });
    return runs;
}

fs::path epsilon_dir(fs::path const& out, double eps)
{
    return out / fmt::format("eps_{}", eps);
}

std::vector<Cylinder> analysis_cylinders(ExperimentConfig const& c)
{
    if (!c.analysis.cylinders.empty())
    {
        return c.analysis.cylinders;
    }
    double const T = c.t0 + num_steps(c) * c.dt;
    double const rho = std::min(0.2 * std::min(c.xmax - c.xmin, c.ymax - c.ymin),
                                0.9 * std::sqrt(T - c.t0));
    std::mt19937_64 rng(c.seed);
    auto pick = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    std::vector<Cylinder> cylinders;
    for (int n = 0; n < c.analysis.auto_cylinders; ++n)
    {
        cylinders.push_back({{pick(c.xmin + rho, c.xmax - rho),
                              pick(c.ymin + rho, c.ymax - rho)},
                             pick(c.t0 + rho * rho, T),
                             rho});
    }
    return cylinders;
}

//---------------------------------------------------------------------------//
json analyze_fields(Prepared const& p,
                    std::vector<double> const& epsilons,
                    std::vector<GridField> const& fields,
                    fs::path const& out,
                    int threads)
{
    auto const& c = p.config;
    auto const& plan = c.analysis;
    ConvexBody const& body = p.spec.body;
    auto const cylinders = analysis_cylinders(c);
    DualSample const dual = sample_dual_boundary(body, plan.dual_samples);
    Region const region = plan.region ? *plan.region : default_region(c);
    Grid const& grid = p.problem.grid;
    double const lag_min = plan.lag_min > 0 ? plan.lag_min
                                            : std::max(grid.hx, grid.hy);
    auto const lags
        = geometric_lags(lag_min, lag_min * std::pow(10.0, plan.lag_decades));

    std::vector<json> per_eps(epsilons.size());
    parallel_for(epsilons.size(), threads, [&](std::size_t n) {
        double const eps = epsilons[n];
        GridField const& field = fields[n];
        fs::path const dir = epsilon_dir(out, eps);
        fs::create_directories(dir);
        json summary;
        summary["epsilon"] = eps;

        CsvFile excess_csv(dir / "excess.csv", "x0,y0,t0,rho,excess,config_hash");
        json excess_rows = json::array();
        for (auto const& cyl : cylinders)
        {
            double rho = cyl.radius;
            for (int m = 0; m < plan.excess_levels; ++m, rho *= plan.excess_theta)
            {
                Cylinder const sub{cyl.center, cyl.t0, rho};
                double value;
                try
                {
                    value = excess(field, sub);
                }
                catch (ParameterError const&)
                {
                    break;
                }
                excess_csv.row(cyl.center.x, cyl.center.y, cyl.t0, rho, value, p.hash);
                excess_rows.push_back({{"rho", rho}, {"excess", value}});
            }
        }
        summary["excess"] = excess_rows;

        CsvFile regime_csv(dir / "regime.csv",
                           "cylinder,delta,mu,nu,label,witness_angle,config_hash");
        std::map<std::string, int> counts;
        for (std::size_t id = 0; id < cylinders.size(); ++id)
        {
            for (double delta : c.deltas)
            {
                RegimeResult const r = classify_regime(
                    field, cylinders[id], delta, plan.mu, plan.nu, dual);
                ++counts[fmt::format("delta={}:{}", delta, to_string(r.label))];
                regime_csv.row(id,
                               delta,
                               plan.mu,
                               plan.nu,
                               to_string(r.label),
                               r.witness ? num(r.witness_angle) : std::string(""),
                               p.hash);
            }
        }
        summary["regimes"] = counts;

        CsvFile modulus_csv(dir / "modulus.csv",
                            "delta,epsilon,lag,osc,exponent_fit,r2,config_hash");
        json fits = json::array();
        for (double delta : c.deltas)
        {
            json fit_json{{"delta", delta}};
            try
            {
                ModulusFit const fit
                    = continuity_modulus(field, GDeltaMap(body, delta), region, lags);
                std::string const exponent = fit.exact ? "exact" : num(fit.exponent);
                for (std::size_t b = 0; b < fit.lags.size(); ++b)
                {
                    modulus_csv.row(delta, eps, fit.lags[b], fit.osc[b], exponent, fit.r2, p.hash);
                }
                fit_json["status"] = fit.exact ? "exact" : "fit";
                fit_json["exponent"] = fit.exponent;
                fit_json["constant"] = fit.constant;
                fit_json["r2"] = fit.r2;
            }
            catch (ParameterError const& e)
            {
                fit_json["status"] = std::string("error: ") + e.what();
            }
            fits.push_back(fit_json);
        }
        summary["modulus"] = fits;
        per_eps[n] = summary;
    });

    json result;
    result["cylinders"] = json::array();
    for (auto const& cyl : cylinders)
    {
        result["cylinders"].push_back(
            {{"x", cyl.center.x}, {"y", cyl.center.y}, {"t", cyl.t0}, {"rho", cyl.radius}});
    }
    result["dual_samples"] = plan.dual_samples;
    result["per_epsilon"] = per_eps;

    json conv = json::array();
    if (epsilons.size() >= 3)
    {
        for (std::size_t d = 0; d < c.deltas.size(); ++d)
        {
            double const delta = c.deltas[d];
            auto const table = eps_convergence_table(
                epsilons, fields, GDeltaMap(body, delta));
            auto write = [&](fs::path const& path) {
                CsvFile csv(path, "eps,l2_distance_to_ref,config_hash");
                for (auto const& row : table.rows)
                {
                    csv.row(row.epsilon, row.distance, p.hash);
                }
                csv.row(table.reference_epsilon, 0.0, p.hash);
            };
            write(out / fmt::format("epsconv_d{}.csv", delta));
            if (d == 0)
            {
                write(out / "epsconv.csv");
            }
            json rows = json::array();
            for (auto const& row : table.rows)
            {
                rows.push_back({{"epsilon", row.epsilon}, {"distance", row.distance}});
            }
            json entry{{"delta", delta},
                       {"reference_epsilon", table.reference_epsilon},
                       {"rows", rows},
                       {"monotone", table.monotone}};
            if (table.offending)
            {
                entry["offending"] = {table.rows[table.offending->first].epsilon,
                                      table.rows[table.offending->second].epsilon};
            }
            conv.push_back(entry);
        }
    }
    result["eps_convergence"] = conv;
    return result;
}

//---------------------------------------------------------------------------//
int run_solve(ExperimentConfig const& config, RunOptions const& options, std::ostream& log)
{
    Prepared const p = prepare(config);
    fs::path const out = options.out;
    fs::create_directories(out);
    {
        std::ofstream os(out / "config.json");
        os << serialize(config);
    }
    log << "config hash " << p.hash << '\n';

    GradientBound const K = resolve_gradient_bound(p);
    log << fmt::format("gradient bound K = {:.6g} ({})\n", K.K, K.source);

    auto const runs = solve_sweep(p, K.K, options.threads);

    json report;
    report["config_hash"] = p.hash;
    report["config"] = to_json(config);
    report["config"].erase("output");

    ConvexBody const& body = p.spec.body;
    auto const reg0 = build_regularized(p.spec, K.K, config.epsilons.front());
    auto const& k = reg0.constants();
    json gd = json::object();
    for (double delta : config.deltas)
    {
        GDeltaMap const map(body, delta);
        gd[fmt::format("{}", delta)] = {{"forward", map.lipschitz_forward_bound()},
                                        {"inverse", map.lipschitz_inverse_bound()},
                                        {"collapse", map.collapse_bound()},
                                        {"collapse_outer_radius",
                                         map.sharp_collapse_bound()}};
    }
    report["constants"] = {{"r_E", body.inner_radius()},
                           {"R_E", body.outer_radius()},
                           {"K", K.K},
                           {"K_source", K.source},
                           {"K_tilde", k.K_tilde},
                           {"L", k.L},
                           {"C_Psi", k.C_Psi},
                           {"C_F", k.C_F},
                           {"C_F_sampled", k.C_F_sampled},
                           {"N", k.N},
                           {"phi_hessian_cap", k.phi_hessian_cap},
                           {"gauge_lipschitz", 1 / body.inner_radius()},
                           {"gdelta", gd}};
    report["metadata"] = {
        {"R_E_choice", "smallest centered ball containing the body"},
        {"K_note",
         K.source == "bootstrap" ? "2x the gradient sup of an epsilon=1 pre-solve"
                                 : "taken from the config"},
        {"regime_sampling",
         fmt::format("classification relative to {} sampled dual points",
                     config.analysis.dual_samples)},
        {"beta", nullptr},
        {"sigma", nullptr}};

    std::vector<double> epsilons;
    std::vector<GridField> fields;
    json run_json = json::array();
    for (auto const& run : runs)
    {
        fs::path const dir = epsilon_dir(out, run.epsilon);
        fs::create_directories(dir);
        write_series(dir / "checkpoints", run.result.field, config.checkpoint);
        {
            CsvFile csv(dir / "energy.csv",
                        "step,t,energy,sup_norm,newton_iters,config_hash");
            for (auto const& r : run.result.records)
            {
                csv.row(r.step, r.t, r.energy, r.sup_norm, r.newton_iterations, p.hash);
            }
        }
        int newton = 0;
        for (auto const& r : run.result.records)
            newton += r.newton_iterations;
        json entry{{"epsilon", run.epsilon},
                   {"steps", run.result.field.num_steps()},
                   {"newton_iterations", newton},
                   {"final_energy", run.result.records.back().energy},
                   {"max_sup_norm", run.result.field.sup_norm()},
                   {"data_sup_norm", run.result.data_sup_norm},
                   {"growth", build_regularized(p.spec, K.K, run.epsilon).constants().growth}};
        if (p.autonomous)
        {
            entry["energy_dissipation"] = check_json(energy_dissipation_check(run.result));
            entry["max_principle"] = check_json(max_principle_check(run.result));
        }
        write_json(dir / "manifest.json",
                   {{"epsilon", run.epsilon},
                    {"config_hash", p.hash},
                    {"checkpoint_format", to_string(config.checkpoint)},
                    {"levels", run.result.field.num_levels()},
                    {"files", {"energy.csv", "excess.csv", "regime.csv", "modulus.csv"}}});
        run_json.push_back(entry);
        log << fmt::format("epsilon {}: {} steps, {} Newton iterations, final energy {:.6g}\n",
                           run.epsilon,
                           run.result.field.num_steps(),
                           newton,
                           run.result.records.back().energy);
        epsilons.push_back(run.epsilon);
        fields.push_back(run.result.field);
    }
    report["runs"] = run_json;

    GridField const datum = sample_field(
        p.problem.grid, p.problem.t0, p.solver.dt, num_steps(config), p.problem.data);
    auto const bound = uniform_energy_bound(epsilons, fields, datum);
    report["uniform_energy_bound"] = {{"constant", bound.constant},
                                      {"ratios", bound.ratios},
                                      {"blow_up", bound.blow_up}};

    report["analysis"] = analyze_fields(p, epsilons, fields, out, options.threads);
    write_json(out / "report.json", report);
    for (auto const& e : report["analysis"]["eps_convergence"])
    {
        log << fmt::format("eps-convergence delta={}: monotone={}\n",
                           e["delta"].get<double>(),
                           e["monotone"].get<bool>());
    }
    log << "wrote " << (out / "report.json").string() << '\n';
    return 0;
}

//---------------------------------------------------------------------------//
int run_analyze(ExperimentConfig const& config, RunOptions const& options, std::ostream& log)
{
    Prepared const p = prepare(config);
    std::vector<double> epsilons;
    std::vector<GridField> fields;
    for (double eps : config.epsilons)
    {
        GridField f = read_series(epsilon_dir(options.out, eps) / "checkpoints");
        if (!(f.grid == p.problem.grid))
        {
            throw ParameterError(fmt::format("checkpoints for epsilon {} do not match "
                                             "the config grid",
                                             eps));
        }
        f.t0 = config.t0;
        f.dt = config.dt;
        epsilons.push_back(eps);
        fields.push_back(std::move(f));
    }
    json analysis{{"config_hash", p.hash},
                  {"analysis", analyze_fields(p, epsilons, fields, options.out, options.threads)}};
    write_json(options.out / "analysis.json", analysis);
    log << "wrote " << (options.out / "analysis.json").string() << '\n';
    return 0;
}

//---------------------------------------------------------------------------//
int run_report(RunOptions const& options, std::ostream& log)
{
    std::vector<fs::path> paths;
    if (fs::exists(options.out))
    {
        for (auto const& entry : fs::recursive_directory_iterator(options.out))
        {
            if (entry.is_regular_file() && entry.path().filename() == "report.json")
            {
                paths.push_back(entry.path());
            }
        }
    }
    if (paths.empty())
    {
        throw ParameterError("no report.json below '" + options.out.string() + "'");
    }
    std::sort(paths.begin(), paths.end());
    json merged{{"reports", json::array()}};
    for (auto const& path : paths)
    {
        std::ifstream is(path);
        merged["reports"].push_back(
            {{"path", fs::relative(path, options.out).generic_string()},
             {"report", json::parse(is)}});
    }
    write_json(options.out / "merged_report.json", merged);
    log << fmt::format("merged {} reports into {}\n",
                       paths.size(),
                       (options.out / "merged_report.json").string());
    return 0;
}

//---------------------------------------------------------------------------//
int run_verify(ExperimentConfig const& config, RunOptions const& options, std::ostream& log)
{
    Prepared const p = prepare(config);
    fs::create_directories(options.out);
    std::uint64_t const seed = config.seed;
    std::vector<SuiteResult> suites;

    auto bodies = reference_bodies();
    bodies.push_back(p.spec.body);
    for (std::size_t i = 0; i < bodies.size(); ++i)
    {
        suites.push_back(gauge_axiom_suite(bodies[i], seed + i));
        suites.push_back(gdelta_suite(bodies[i], config.deltas, seed + 100 + i));
    }
    double const exponents[] = {2, 3, 4};
    suites.push_back(prototype_hessian_suite(exponents, config.C1, config.C2, seed + 200));

    GradientBound const K = resolve_gradient_bound(p);
    for (std::size_t i = 0; i < config.epsilons.size(); ++i)
    {
        auto const reg = build_regularized(p.spec, K.K, config.epsilons[i]);
        suites.push_back(regularization_suite(reg, seed + 300 + i));
    }
    int const steps = num_steps(config);
    suites.push_back(steklov_suite(p.problem.grid, config.dt, steps, 4 * config.dt));

    auto const runs = solve_sweep(p, K.K, options.threads);
    SuiteResult solver;
    solver.name = "solver";
    std::vector<double> epsilons;
    std::vector<GridField> fields;
    for (auto const& run : runs)
    {
        if (p.autonomous)
        {
            auto e = energy_dissipation_check(run.result);
            e.name += fmt::format("[eps={}]", run.epsilon);
            auto m = max_principle_check(run.result);
            m.name += fmt::format("[eps={}]", run.epsilon);
            solver.checks.push_back(e);
            solver.checks.push_back(m);
        }
        epsilons.push_back(run.epsilon);
        fields.push_back(run.result.field);
    }
    if (p.autonomous)
    {
        GridField const datum = sample_field(
            p.problem.grid, p.problem.t0, config.dt, steps, p.problem.data);
        auto const bound = uniform_energy_bound(epsilons, fields, datum);
        CheckResult uniform;
        uniform.name = "uniform_energy_bound";
        uniform.tolerance = 0;
        uniform.observe(bound.blow_up ? 1.0 : 0.0);
        uniform.detail = fmt::format("C = {:.6g}", bound.constant);
        solver.checks.push_back(uniform);
    }
    if (epsilons.size() >= 3)
    {
        for (double delta : config.deltas)
        {
            auto const table
                = eps_convergence_table(epsilons, fields, GDeltaMap(p.spec.body, delta));
            CheckResult conv;
            conv.name = fmt::format("eps_convergence[delta={}]", delta);
            conv.tolerance = 0;
            conv.observe(table.monotone ? 0.0 : 1.0);
            solver.checks.push_back(conv);
        }
    }
    suites.push_back(solver);

    std::size_t smallest = 0;
    for (std::size_t i = 1; i < epsilons.size(); ++i)
    {
        if (epsilons[i] < epsilons[smallest])
            smallest = i;
    }
    suites.push_back(analysis_suite(fields[smallest], p.spec.body, config.deltas.front(), seed + 400));

    bool all = true;
    CsvFile csv(options.out / "verify.csv",
                "suite,check,worst,tolerance,samples,passed,config_hash");
    json ledger = json::array();
    for (auto const& s : suites)
    {
        for (auto const& c : s.checks)
        {
            all = all && c.passed();
            csv.row(s.name, c.name, c.worst, c.tolerance, static_cast<std::size_t>(c.samples),
                    std::string(c.passed() ? "pass" : "fail"), p.hash);
            log << fmt::format("{} {} / {}: worst {:.3g} (tol {:.3g}){}\n",
                               c.passed() ? "PASS" : "FAIL",
                               s.name,
                               c.name,
                               c.worst,
                               c.tolerance,
                               c.detail.empty() ? "" : "  " + c.detail);
        }
        ledger.push_back({{"suite", s.name}, {"passed", s.passed()}});
    }
    write_json(options.out / "verify.json",
               {{"config_hash", p.hash}, {"passed", all}, {"suites", ledger}});
    log << (all ? "all suites passed\n" : "some suites FAILED\n");
    return all ? 0 : 1;
}

}  // namespace gaugeflow::app
