//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/app/config.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>

#include "gaugeflow/errors.hpp"
#include "gaugeflow/expression.hpp"

namespace gaugeflow::app
{
namespace
{
using nlohmann::json;

std::string join(std::string const& path, std::string const& key)
{
    return path.empty() ? key : path + "." + key;
}

void reject_unknown(json const& obj,
                    std::string const& path,
                    std::initializer_list<char const*> allowed)
{
    if (!obj.is_object())
    {
        throw ConfigError(path, "expected an object");
    }
    for (auto const& item : obj.items())
    {
        if (std::none_of(allowed.begin(), allowed.end(), [&](char const* a) {
                return item.key() == a;
            }))
        {
            throw ConfigError(join(path, item.key()), "unknown key");
        }
    }
}

double number(json const& v, std::string const& path)
{
    if (!v.is_number())
    {
        throw ConfigError(path, "expected a number");
    }
    return v.get<double>();
}

int integer(json const& v, std::string const& path)
{
    if (!v.is_number_integer())
    {
        throw ConfigError(path, "expected an integer");
    }
    return v.get<int>();
}

std::string string(json const& v, std::string const& path)
{
    if (!v.is_string())
    {
        throw ConfigError(path, "expected a string");
    }
    return v.get<std::string>();
}

template<class T, class F>
void read(json const& obj, std::string const& path, char const* key, T& out, F conv)
{
    if (obj.contains(key))
    {
        out = conv(obj.at(key), join(path, key));
    }
}

std::vector<double> number_list(json const& v, std::string const& path)
{
    if (!v.is_array())
    {
        throw ConfigError(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out.push_back(number(v[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
}

std::string check_expression(std::string const& source, std::string const& path)
{
    try
    {
        Expression{source};
    }
    catch (ParameterError const& e)
    {
        throw ConfigError(path, e.what());
    }
    return source;
}

//---------------------------------------------------------------------------//
BodyConfig parse_body(json const& j)
{
    std::string const path = "body";
    reject_unknown(j, path, {"kind", "radius", "form", "vertices"});
    BodyConfig body;
    read(j, path, "kind", body.kind, string);
    read(j, path, "radius", body.radius, number);
    if (j.contains("form"))
    {
        auto const f = number_list(j.at("form"), "body.form");
        if (f.size() != 3)
        {
            throw ConfigError("body.form", "expected [xx, xy, yy]");
        }
        body.form = {f[0], f[1], f[2]};
    }
    if (j.contains("vertices"))
    {
        auto const& v = j.at("vertices");
        if (!v.is_array())
        {
            throw ConfigError("body.vertices", "expected an array of [x, y]");
        }
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            auto const p = number_list(v[i], fmt::format("body.vertices[{}]", i));
            if (p.size() != 2)
            {
                throw ConfigError(fmt::format("body.vertices[{}]", i),
                                  "expected [x, y]");
            }
            body.vertices.push_back({p[0], p[1]});
        }
    }
    return body;
}

json body_json(BodyConfig const& b)
{
    json j;
    j["kind"] = b.kind;
    if (b.kind == "euclidean_ball")
    {
        j["radius"] = b.radius;
    }
    else if (b.kind == "ellipsoid")
    {
        j["form"] = {b.form.xx, b.form.xy, b.form.yy};
    }
    else
    {
        j["vertices"] = json::array();
        for (Vec2 v : b.vertices)
        {
            j["vertices"].push_back({v.x, v.y});
        }
    }
    return j;
}

AnalysisPlan parse_analysis(json const& j)
{
    std::string const path = "analysis";
    reject_unknown(j,
                   path,
                   {"cylinders",
                    "auto_cylinders",
                    "excess_levels",
                    "excess_theta",
                    "lag_min",
                    "lag_decades",
                    "dual_samples",
                    "mu",
                    "nu",
                    "region"});
    AnalysisPlan plan;
    if (j.contains("cylinders"))
    {
        auto const& list = j.at("cylinders");
        if (!list.is_array())
        {
            throw ConfigError("analysis.cylinders", "expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            std::string const p = fmt::format("analysis.cylinders[{}]", i);
            reject_unknown(list[i], p, {"x", "y", "t", "rho"});
            Cylinder c;
            for (auto key : {"x", "y", "t", "rho"})
            {
                if (!list[i].contains(key))
                {
                    throw ConfigError(join(p, key), "missing");
                }
            }
            c.center = {number(list[i]["x"], join(p, "x")),
                        number(list[i]["y"], join(p, "y"))};
            c.t0 = number(list[i]["t"], join(p, "t"));
            c.radius = number(list[i]["rho"], join(p, "rho"));
            plan.cylinders.push_back(c);
        }
    }
    read(j, path, "auto_cylinders", plan.auto_cylinders, integer);
    read(j, path, "excess_levels", plan.excess_levels, integer);
    read(j, path, "excess_theta", plan.excess_theta, number);
    read(j, path, "lag_min", plan.lag_min, number);
    read(j, path, "lag_decades", plan.lag_decades, number);
    read(j, path, "dual_samples", plan.dual_samples, integer);
    read(j, path, "mu", plan.mu, number);
    read(j, path, "nu", plan.nu, number);
    if (j.contains("region") && !j.at("region").is_null())
    {
        auto const& r = j.at("region");
        std::string const p = "analysis.region";
        reject_unknown(r, p, {"xmin", "xmax", "ymin", "ymax", "tmin", "tmax"});
        Region region{};
        double* fields[] = {&region.xmin,
                            &region.xmax,
                            &region.ymin,
                            &region.ymax,
                            &region.tmin,
                            &region.tmax};
        char const* names[] = {"xmin", "xmax", "ymin", "ymax", "tmin", "tmax"};
        for (int i = 0; i < 6; ++i)
        {
            if (!r.contains(names[i]))
            {
                throw ConfigError(join(p, names[i]), "missing");
            }
            *fields[i] = number(r.at(names[i]), join(p, names[i]));
        }
        plan.region = region;
    }
    return plan;
}

json analysis_json(AnalysisPlan const& a)
{
    json j;
    j["cylinders"] = json::array();
    for (auto const& c : a.cylinders)
    {
        j["cylinders"].push_back(
            {{"x", c.center.x}, {"y", c.center.y}, {"t", c.t0}, {"rho", c.radius}});
    }
    j["auto_cylinders"] = a.auto_cylinders;
    j["excess_levels"] = a.excess_levels;
    j["excess_theta"] = a.excess_theta;
    j["lag_min"] = a.lag_min;
    j["lag_decades"] = a.lag_decades;
    j["dual_samples"] = a.dual_samples;
    j["mu"] = a.mu;
    j["nu"] = a.nu;
    if (a.region)
    {
        auto const& r = *a.region;
        j["region"] = {{"xmin", r.xmin},
                       {"xmax", r.xmax},
                       {"ymin", r.ymin},
                       {"ymax", r.ymax},
                       {"tmin", r.tmin},
                       {"tmax", r.tmax}};
    }
    else
    {
        j["region"] = nullptr;
    }
    return j;
}

std::pair<int, int> line_column(std::string const& text, std::size_t byte)
{
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    {
        if (text[i] == '\n')
        {
            ++line;
            col = 1;
        }
        else
        {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

//---------------------------------------------------------------------------//
ConvexBody BodyConfig::build() const
{
    try
    {
        if (kind == "euclidean_ball")
            return ConvexBody::euclidean_ball(radius);
        if (kind == "ellipsoid")
            return ConvexBody::ellipsoid(form);
        if (kind == "polytope")
            return ConvexBody::polytope(vertices);
    }
    catch (ParameterError const& e)
    {
        throw ConfigError("body", e.what());
    }
    throw ConfigError("body.kind", "unknown body kind '" + kind + "'");
}

//---------------------------------------------------------------------------//
ExperimentConfig parse_config(std::string const& text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        auto const [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("", fmt::format("line {} column {}: {}", line, col, e.what()));
    }

    reject_unknown(root,
                   "",
                   {"body",
                    "integrand",
                    "grid",
                    "time",
                    "epsilons",
                    "deltas",
                    "source",
                    "data",
                    "K",
                    "solver",
                    "analysis",
                    "checkpoint",
                    "seed",
                    "output"});
    ExperimentConfig c;
    if (root.contains("body"))
    {
        c.body = parse_body(root.at("body"));
    }
    if (root.contains("integrand"))
    {
        auto const& j = root.at("integrand");
        reject_unknown(j, "integrand", {"p", "coefficient", "C1", "C2", "lipschitz"});
        read(j, "integrand", "p", c.p, number);
        read(j, "integrand", "coefficient", c.coefficient, string);
        read(j, "integrand", "C1", c.C1, number);
        read(j, "integrand", "C2", c.C2, number);
        read(j, "integrand", "lipschitz", c.lipschitz, number);
    }
    if (root.contains("grid"))
    {
        auto const& j = root.at("grid");
        reject_unknown(j, "grid", {"nx", "ny", "domain"});
        read(j, "grid", "nx", c.nx, integer);
        read(j, "grid", "ny", c.ny, integer);
        if (j.contains("domain"))
        {
            auto const d = number_list(j.at("domain"), "grid.domain");
            if (d.size() != 4)
            {
                throw ConfigError("grid.domain", "expected [xmin, xmax, ymin, ymax]");
            }
            c.xmin = d[0];
            c.xmax = d[1];
            c.ymin = d[2];
            c.ymax = d[3];
        }
    }
    if (root.contains("time"))
    {
        auto const& j = root.at("time");
        reject_unknown(j, "time", {"t0", "dt", "horizon"});
        read(j, "time", "t0", c.t0, number);
        read(j, "time", "dt", c.dt, number);
        read(j, "time", "horizon", c.horizon, number);
    }
    read(root, "", "epsilons", c.epsilons, number_list);
    read(root, "", "deltas", c.deltas, number_list);
    read(root, "", "source", c.source, string);
    read(root, "", "data", c.data, string);
    if (root.contains("K") && !root.at("K").is_null())
    {
        c.K = number(root.at("K"), "K");
    }
    if (root.contains("solver"))
    {
        auto const& j = root.at("solver");
        reject_unknown(j, "solver", {"newton_tol", "max_newton"});
        read(j, "solver", "newton_tol", c.newton_tol, number);
        read(j, "solver", "max_newton", c.max_newton, integer);
    }
    if (root.contains("analysis"))
    {
        c.analysis = parse_analysis(root.at("analysis"));
    }
    if (root.contains("checkpoint"))
    {
        try
        {
            c.checkpoint = checkpoint_format_from_string(
                string(root.at("checkpoint"), "checkpoint"));
        }
        catch (ParameterError const& e)
        {
            throw ConfigError("checkpoint", e.what());
        }
    }
    if (root.contains("seed"))
    {
        auto const& s = root.at("seed");
        if (!s.is_number_unsigned())
        {
            throw ConfigError("seed", "expected a nonnegative integer");
        }
        c.seed = s.get<std::uint64_t>();
    }
    read(root, "", "output", c.output, string);

    check_expression(c.coefficient, "integrand.coefficient");
    check_expression(c.source, "source");
    check_expression(c.data, "data");
    return c;
}

ExperimentConfig load_config(std::filesystem::path const& path)
{
    std::ifstream is(path);
    if (!is)
    {
        throw ConfigError("", "cannot read config '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

json to_json(ExperimentConfig const& c)
{
    json j;
    j["body"] = body_json(c.body);
    j["integrand"] = {{"p", c.p},
                      {"coefficient", c.coefficient},
                      {"C1", c.C1},
                      {"C2", c.C2},
                      {"lipschitz", c.lipschitz}};
    j["grid"] = {{"nx", c.nx},
                 {"ny", c.ny},
                 {"domain", {c.xmin, c.xmax, c.ymin, c.ymax}}};
    j["time"] = {{"t0", c.t0}, {"dt", c.dt}, {"horizon", c.horizon}};
    j["epsilons"] = c.epsilons;
    j["deltas"] = c.deltas;
    j["source"] = c.source;
    j["data"] = c.data;
    j["K"] = c.K ? json(*c.K) : json(nullptr);
    j["solver"] = {{"newton_tol", c.newton_tol}, {"max_newton", c.max_newton}};
    j["analysis"] = analysis_json(c.analysis);
    j["checkpoint"] = to_string(c.checkpoint);
    j["seed"] = c.seed;
    j["output"] = c.output;
    return j;
}

std::string serialize(ExperimentConfig const& config)
{
    return to_json(config).dump(2) + "\n";
}

//---------------------------------------------------------------------------//
void validate(ExperimentConfig const& c)
{
    ConvexBody const body = c.body.build();
    if (!(c.p > 1) || !std::isfinite(c.p))
        throw ConfigError("integrand.p", "must exceed 1");
    if (!(c.C1 > 0 && c.C1 <= c.C2) || !std::isfinite(c.C2))
        throw ConfigError("integrand.C1", "need 0 < C1 <= C2");
    if (!(c.lipschitz >= 0))
        throw ConfigError("integrand.lipschitz", "must be nonnegative");
    if (c.nx < 16 || c.ny < 16)
        throw ConfigError("grid", "grid must be at least 16x16");
    if (!(c.xmax > c.xmin && c.ymax > c.ymin))
        throw ConfigError("grid.domain", "empty rectangle");
    if (!(c.dt > 0))
        throw ConfigError("time.dt", "must be positive");
    if (!(c.horizon >= c.dt))
        throw ConfigError("time.horizon", "must be at least one time step");
    if (c.epsilons.empty())
        throw ConfigError("epsilons", "list is empty");
    for (std::size_t i = 0; i < c.epsilons.size(); ++i)
    {
        double const e = c.epsilons[i];
        if (!(e > 0 && e <= 1))
            throw ConfigError(fmt::format("epsilons[{}]", i),
                              fmt::format("{} is outside (0, 1]", e));
    }
    if (c.deltas.empty())
        throw ConfigError("deltas", "list is empty");
    for (std::size_t i = 0; i < c.deltas.size(); ++i)
    {
        double const d = c.deltas[i];
        if (!(d > 0 && d <= 1))
            throw ConfigError(fmt::format("deltas[{}]", i),
                              fmt::format("{} is outside (0, 1]", d));
    }
    if (c.K && !(*c.K >= 0))
        throw ConfigError("K", "must be nonnegative");
    if (!(c.newton_tol > 0))
        throw ConfigError("solver.newton_tol", "must be positive");
    if (c.max_newton < 1)
        throw ConfigError("solver.max_newton", "must be positive");

    auto const& a = c.analysis;
    if (a.dual_samples < 4)
        throw ConfigError("analysis.dual_samples", "need at least 4");
    if (!(a.mu > 0))
        throw ConfigError("analysis.mu", "must be positive");
    if (!(a.nu > 0 && a.nu <= 0.25))
        throw ConfigError("analysis.nu", "must lie in (0, 1/4]");
    if (!(a.lag_decades >= 1))
        throw ConfigError("analysis.lag_decades", "lags must span a decade");
    if (!(a.lag_min >= 0))
        throw ConfigError("analysis.lag_min", "must be nonnegative");
    if (a.auto_cylinders < 0 || a.excess_levels < 1)
        throw ConfigError("analysis", "cylinder counts must be positive");
    if (!(a.excess_theta > 0 && a.excess_theta < 1))
        throw ConfigError("analysis.excess_theta", "must lie in (0, 1)");
    for (std::size_t i = 0; i < a.cylinders.size(); ++i)
    {
        if (!(a.cylinders[i].radius > 0))
            throw ConfigError(fmt::format("analysis.cylinders[{}].rho", i),
                              "must be positive");
    }

    // Coefficient must respect its declared bounds on the space-time grid
    Expression const coeff(c.coefficient);
    Grid const grid = config_grid(c);
    int const steps = static_cast<int>(std::lround(c.horizon / c.dt));
    for (int k = 0; k <= steps; k += std::max(1, steps / 8))
    {
        double const t = c.t0 + k * c.dt;
        for (int j = 0; j < grid.ny; ++j)
        {
            for (int i = 0; i < grid.nx; ++i)
            {
                Vec2 const x = grid.node(i, j);
                double const v = coeff(x.x, x.y, t);
                if (!(v >= c.C1 * (1 - 1e-12) && v <= c.C2 * (1 + 1e-12)))
                {
                    throw ConfigError(
                        "integrand.coefficient",
                        fmt::format("value {} at ({}, {}, {}) leaves [C1, C2]",
                                    v,
                                    x.x,
                                    x.y,
                                    t));
                }
            }
        }
    }
    (void)body;
}

std::uint64_t config_hash(ExperimentConfig const& config)
{
    // The output location does not change any computed value
    auto j = to_json(config);
    j.erase("output");
    std::string const canonical = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical)
    {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash_hex(ExperimentConfig const& config)
{
    return fmt::format("{:016x}", config_hash(config));
}

IntegrandSpec integrand_spec(ExperimentConfig const& c)
{
    IntegrandSpec spec{c.body.build(), c.p, {}};
    spec.coeff = {Expression(c.coefficient), c.C1, c.C2, c.lipschitz};
    return spec;
}

Grid config_grid(ExperimentConfig const& c)
{
    return Grid::rectangle(c.nx, c.ny, c.xmin, c.xmax, c.ymin, c.ymax);
}

}  // namespace gaugeflow::app
