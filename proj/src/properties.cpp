//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/properties.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gaugeflow/errors.hpp"
#include "gaugeflow/gmaps.hpp"

namespace gaugeflow
{
namespace
{
class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_{clock::now()};
};

CheckResult make_check(std::string name, double tolerance)
{
    CheckResult c;
    c.name = std::move(name);
    c.tolerance = tolerance;
    return c;
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec2 random_direction(std::mt19937_64& rng)
{
    return unit_vector(uniform(rng, 0, 2 * std::numbers::pi));
}

double min_eigenvalue(SymMat2 const& m)
{
    return m.eigenvalues().first;
}

}  // namespace

//---------------------------------------------------------------------------//
bool SuiteResult::passed() const
{
    return std::all_of(
        checks.begin(), checks.end(), [](auto const& c) { return c.passed(); });
}

CheckResult const* SuiteResult::find(std::string const& check) const
{
    for (auto const& c : checks)
    {
        if (c.name == check)
            return &c;
    }
    return nullptr;
}

Vec2 random_vector(std::mt19937_64& rng, double rmin, double rmax)
{
    double const r = std::exp(uniform(rng, std::log(rmin), std::log(rmax)));
    return r * random_direction(rng);
}

std::vector<ConvexBody> reference_bodies()
{
    return {ConvexBody::euclidean_ball(1.0),
            ConvexBody::ellipsoid(SymMat2{0.4, 0.15, 1.2}),
            ConvexBody::polytope({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}),
            ConvexBody::polytope(
                {{1.2, 0.1}, {0.3, 1.0}, {-0.9, 0.6}, {-0.7, -0.8}, {0.6, -1.1}})};
}

//---------------------------------------------------------------------------//
SuiteResult gauge_axiom_suite(ConvexBody const& body,
                              std::uint64_t seed,
                              int samples,
                              double tolerance)
{
    Stopwatch timer;
    std::mt19937_64 rng(seed);
    double const r = body.inner_radius();
    double const R = body.outer_radius();
    auto g = [&](Vec2 v) { return body.gauge(v); };

    auto homogeneity = make_check("homogeneity", tolerance);
    auto triangle = make_check("triangle", tolerance);
    auto reverse = make_check("reverse_triangle", tolerance);
    auto lipschitz = make_check("lipschitz", tolerance);
    auto sandwich_lo = make_check("sandwich_lower", tolerance);
    auto sandwich_hi = make_check("sandwich_upper", tolerance);
    auto algebraic = make_check("algebraic", tolerance);
    auto inscribed = make_check("inscribed_ball", tolerance);
    auto circumscribed = make_check("circumscribed_ball", tolerance);

    std::vector<Vec2> xis;
    xis.reserve(samples);
    for (int s = 0; s < samples; ++s)
    {
        Vec2 const xi = random_vector(rng, 1e-3, 10);
        Vec2 const eta = s % 2 ? random_vector(rng, 1e-3, 10)
                               : xi + random_vector(rng, 1e-6, 1e-1);
        double const lambda = std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
        double const gx = g(xi);
        double const ge = g(eta);
        xis.push_back(xi);

        homogeneity.observe(std::abs(g(lambda * xi) - lambda * gx));
        triangle.observe(g(xi + eta) - gx - ge);
        reverse.observe(std::abs(gx - ge) - std::max(g(xi - eta), g(eta - xi)));
        lipschitz.observe(std::abs(gx - ge) - norm(xi - eta) / r);
        sandwich_lo.observe(norm(xi) / R - gx);
        sandwich_hi.observe(gx - norm(xi) / r);
        algebraic.observe(g(xi / gx - eta / ge) - (R / r) * (2 / gx) * g(xi - eta));
        inscribed.observe(g(r * random_direction(rng)) - 1);
        circumscribed.observe(norm(xi / gx) - R);
    }

    // Dual representation with a dense sample of ∂E*
    auto dual_boundary = make_check("dual_boundary_points", tolerance);
    auto dual_lower = make_check("dual_lower_bound", tolerance);
    auto duality = make_check("duality_consistency", 0.0);
    DualSample const dual = sample_dual_boundary(body, 10000);
    for (Vec2 const& p : dual.points)
    {
        dual_boundary.observe(std::abs(body.dual_gauge(p) - 1));
    }
    for (Vec2 const& xi : xis)
    {
        double const exact = g(xi);
        double const sampled = sampled_gauge(dual, xi);
        dual_lower.observe(sampled - exact);
        duality.observe(exact - sampled - 0.01 * exact);
    }

    SuiteResult result;
    result.name = fmt::format("gauge_axioms[{}]", body.describe());
    result.checks = {homogeneity,
                     triangle,
                     reverse,
                     lipschitz,
                     sandwich_lo,
                     sandwich_hi,
                     algebraic,
                     inscribed,
                     circumscribed,
                     dual_boundary,
                     dual_lower,
                     duality};
    result.seconds = timer.seconds();
    return result;
}

//---------------------------------------------------------------------------//
SuiteResult gdelta_suite(ConvexBody const& body,
                         std::span<double const> deltas,
                         std::uint64_t seed,
                         int samples,
                         double tolerance)
{
    Stopwatch timer;
    std::mt19937_64 rng(seed);
    double const R = body.outer_radius();
    GDeltaMap const g0(body, 0.0);

    SuiteResult result;
    result.name = fmt::format("gdelta[{}]", body.describe());
    for (double delta : deltas)
    {
        GDeltaMap const gd(body, delta);
        GDeltaMap const g2d(body, 2 * delta);
        double const forward_bound = gd.lipschitz_forward_bound();
        double const inverse_bound = gd.lipschitz_inverse_bound();

        auto forward = make_check(fmt::format("forward_lipschitz[delta={}]", delta),
                                  tolerance);
        auto inverse = make_check(fmt::format("inverse_lipschitz[delta={}]", delta),
                                  tolerance);
        auto family = make_check(fmt::format("monotone_family[delta={}]", delta),
                                 tolerance);
        auto collapse = make_check(fmt::format("collapse[delta={}]", delta),
                                   tolerance);
        auto sharp = make_check(fmt::format("collapse_outer_radius[delta={}]", delta),
                                tolerance);
        for (int s = 0; s < samples; ++s)
        {
            Vec2 const xi = random_vector(rng, 1e-3 * R, 20 * R);
            Vec2 const eta = s % 2 ? random_vector(rng, 1e-3 * R, 20 * R)
                                   : xi + random_vector(rng, 1e-6, 0.5);
            forward.observe(norm(gd(xi) - gd(eta)) - forward_bound * norm(xi - eta));
            family.observe(norm(g2d(xi)) - norm(gd(xi)));
            double const gap = norm(gd(xi) - g0(xi));
            collapse.observe(gap - gd.collapse_bound());
            sharp.observe(gap - gd.sharp_collapse_bound());

            // ξ outside the parallel set E_δ
            Vec2 const d = random_direction(rng);
            double const level = uniform(rng, 1 + delta, 1 + delta + 10);
            Vec2 const far = (level / body.gauge(d)) * d;
            Vec2 const other = s % 2 ? random_vector(rng, 1e-3 * R, 20 * R)
                                     : far + random_vector(rng, 1e-6, 0.5);
            inverse.observe(norm(far - other)
                            - inverse_bound * norm(g0(far) - g0(other)));
        }
        collapse.detail = fmt::format("sup gap {:.6g}, delta/r_E = {:.6g}",
                                      collapse.worst + gd.collapse_bound(),
                                      gd.collapse_bound());
        result.checks.insert(result.checks.end(),
                             {forward, inverse, family, collapse, sharp});
    }
    result.seconds = timer.seconds();
    return result;
}

//---------------------------------------------------------------------------//
SuiteResult prototype_hessian_suite(std::span<double const> exponents,
                                    double C1,
                                    double C2,
                                    std::uint64_t seed,
                                    int samples)
{
    Stopwatch timer;
    std::mt19937_64 rng(seed);
    SuiteResult result;
    result.name = "prototype_hessian";

    for (double p : exponents)
    {
        IntegrandSpec spec{ConvexBody::euclidean_ball(1.0), p, {}};
        spec.coeff = {Expression::constant(C1), C1, C2, 0};
        PrototypeIntegrand const F(spec);

        auto lower = make_check(fmt::format("rayleigh_lower[p={}]", p), 1e-8);
        auto upper = make_check(fmt::format("rayleigh_upper[p={}]", p), 1e-8);
        auto fd_hessian = make_check(fmt::format("fd_hessian[p={}]", p), 1e-5);
        auto vanish = make_check(fmt::format("vanish_on_body[p={}]", p), 0.0);
        auto convex = make_check(fmt::format("midpoint_convexity[p={}]", p), 1e-12);
        auto fd_gradient = make_check(fmt::format("fd_gradient[p={}]", p), 1e-6);

        for (int s = 0; s < samples; ++s)
        {
            double const a = uniform(rng, C1, C2);
            double const radius = uniform(rng, 1, 10);
            if (!(radius > 1))
                continue;
            Vec2 const xi = radius * random_direction(rng);
            Vec2 const eta = random_direction(rng);
            double const excess = radius - 1;

            Jet const jet = F.jet_at(a, xi);
            if (jet.hessian_valid)
            {
                double const q = jet.hessian.quad(eta, eta);
                lower.observe(C1 * std::pow(excess, p - 1) / radius - q);
                upper.observe(q - C2 * (p - 1) * std::pow(excess, p - 2));

                double const h = 1e-4 * std::min(excess, 1.0);
                Vec2 const gxp = F.jet_at(a, xi + Vec2{h, 0}).gradient;
                Vec2 const gxm = F.jet_at(a, xi - Vec2{h, 0}).gradient;
                Vec2 const gyp = F.jet_at(a, xi + Vec2{0, h}).gradient;
                Vec2 const gym = F.jet_at(a, xi - Vec2{0, h}).gradient;
                double const hxx = (gxp.x - gxm.x) / (2 * h);
                double const hyy = (gyp.y - gym.y) / (2 * h);
                double const hxy = 0.5 * ((gxp.y - gxm.y) + (gyp.x - gym.x)) / (2 * h);
                double const err = std::max({std::abs(hxx - jet.hessian.xx),
                                             std::abs(hyy - jet.hessian.yy),
                                             std::abs(hxy - jet.hessian.xy)});
                fd_hessian.observe(err / jet.hessian.op_norm());
            }

            Vec2 const inside = uniform(rng, 0, 1) * random_direction(rng);
            vanish.observe(std::abs(F.jet_at(a, inside).value));

            Vec2 const u = random_vector(rng, 1e-2, 5);
            Vec2 const v = random_vector(rng, 1e-2, 5);
            double const fu = F.jet_at(a, u).value;
            double const fv = F.jet_at(a, v).value;
            convex.observe((F.jet_at(a, 0.5 * (u + v)).value - 0.5 * (fu + fv))
                           / std::max(1.0, 0.5 * (fu + fv)));

            Vec2 const w = random_vector(rng, 1e-2, 10);
            if (std::abs(norm(w) - 1) > 1e-2)
            {
                double const h = 1e-6 * std::max(1.0, norm(w));
                Vec2 const grad = F.jet_at(a, w).gradient;
                Vec2 const fd{(F.jet_at(a, w + Vec2{h, 0}).value
                               - F.jet_at(a, w - Vec2{h, 0}).value)
                                  / (2 * h),
                              (F.jet_at(a, w + Vec2{0, h}).value
                               - F.jet_at(a, w - Vec2{0, h}).value)
                                  / (2 * h)};
                fd_gradient.observe(norm(fd - grad) / std::max(norm(grad), 1e-8));
            }
        }
        result.checks.insert(result.checks.end(),
                             {lower, upper, fd_hessian, vanish, convex, fd_gradient});
    }
    result.seconds = timer.seconds();
    return result;
}

//---------------------------------------------------------------------------//
SuiteResult regularization_suite(RegularizedIntegrand const& reg,
                                 std::uint64_t seed,
                                 RegularizationSuiteOptions const& options)
{
    Stopwatch timer;
    std::mt19937_64 rng(seed);
    auto const& k = reg.constants();
    auto const& body = reg.body();
    auto const& phi = reg.convexifier();
    double const eps = reg.epsilon();
    double const R_E = body.outer_radius();
    double const r0 = k.K + R_E;
    double const r1 = k.K + 2 * R_E;
    double const cap = 2 * k.C_F + 1;
    int const n = options.samples;

    auto random_point = [&] {
        return Vec2{uniform(rng, 0, 4), uniform(rng, 0, 4)};
    };

    // Convexifier bounds on a radial sweep (Φ is radial)
    auto b1 = make_check("phi_flat", 1e-12);
    auto b2 = make_check("phi_gradient_bound", 1e-9);
    auto b3 = make_check("phi_uniform_convexity", 1e-9);
    auto b4 = make_check("phi_hessian_bound", 1e-9);
    for (int s = 0; s < n; ++s)
    {
        double const radius = 2 * k.N * (s + 0.5) / n;
        Vec2 const xi = radius * random_direction(rng);
        if (radius <= r0)
        {
            b1.observe(std::abs(phi.value(xi)));
        }
        b2.observe(norm(phi.gradient(xi)) - cap * radius);
        SymMat2 const h = phi.hessian(xi);
        if (radius >= r1)
        {
            b3.observe((k.C_F + 1) - min_eigenvalue(h));
        }
        b4.observe(h.op_norm() - cap);
    }
    b4.detail = fmt::format("sup |Hess Phi| = {:.6g}, bound 2C_F+1 = {:.6g}",
                            b4.worst + cap,
                            cap);

    auto monotone = make_check("monotonicity", 1e-10);
    auto gradient_fd = make_check("gradient_consistency", 1e-5);
    auto growth = make_check("quadratic_growth", 1e-9);
    auto agreement = make_check("chain_agreement", 1e-12);
    auto lift = make_check("epsilon_lift", 1e-9);
    for (int s = 0; s < n; ++s)
    {
        Vec2 const x = random_point();
        double const t = uniform(rng, 0, 1);

        Vec2 const xi = random_vector(rng, 1e-3, 1.5 * k.N);
        Vec2 const xt = s % 2 ? random_vector(rng, 1e-3, 1.5 * k.N)
                              : xi + random_vector(rng, 1e-6, 1);
        Vec2 const d = xt - xi;
        monotone.observe(eps * norm_sq(d)
                         - dot(reg.gradient(x, t, xt) - reg.gradient(x, t, xi), d));

        Vec2 const w = random_vector(rng, 1e-2, 1.5 * k.N);
        if (std::abs(body.gauge(w) - 1) > 1e-3 && body.kink_gap(w) > 1e-3)
        {
            double const h = 1e-5;
            Vec2 const grad = reg.gradient(x, t, w);
            Vec2 const fd{(reg.value(x, t, w + Vec2{h, 0})
                           - reg.value(x, t, w - Vec2{h, 0}))
                              / (2 * h),
                          (reg.value(x, t, w + Vec2{0, h})
                           - reg.value(x, t, w - Vec2{0, h}))
                              / (2 * h)};
            gradient_fd.observe(norm(fd - grad) / (1 + norm(grad)));
        }
        if (reg.hessian_available(w))
        {
            lift.observe(eps - min_eigenvalue(reg.hessian(x, t, w)));
        }

        Vec2 const big = random_vector(rng, 1e-3, 10 * k.N);
        growth.observe((norm(reg.gradient(x, t, big)) - k.growth * (1 + norm(big)))
                       / k.growth);

        Vec2 const small = uniform(rng, 0, r0) * random_direction(rng);
        double const f = reg.base().value(x, t, small);
        agreement.observe(std::abs(reg.value(x, t, small) - f
                                   - 0.5 * eps * norm_sq(small))
                          / (1 + f));
    }

    // Bilinear form on the annulus 1+δ ≤ gauge ≤ 1/δ
    double const delta = options.delta;
    double lambda_emp = 1e300;
    double Lambda_emp = -1e300;
    std::vector<double> quotients;
    quotients.reserve(n);
    for (int s = 0; s < n; ++s)
    {
        Vec2 const x = random_point();
        double const t = uniform(rng, 0, 1);
        Vec2 const dir = random_direction(rng);
        double const level = uniform(rng, 1 + delta, 1 / delta);
        Vec2 const xi = (level / body.gauge(dir)) * dir;
        if (!reg.hessian_available(xi))
            continue;
        SymMat2 const hat = reg.hessian(x, t, xi) + (-eps) * SymMat2::identity(1);
        auto const [lo, hi] = hat.eigenvalues();
        lambda_emp = std::min(lambda_emp, lo);
        Lambda_emp = std::max(Lambda_emp, hi);
        Vec2 const eta = random_direction(rng);
        quotients.push_back(bilinear_form(reg, x, t, xi, eta, eta));
    }
    auto range = make_check("bilinear_range", 1e-10);
    for (double q : quotients)
    {
        range.observe(std::max(eps + lambda_emp - q, q - eps - Lambda_emp));
    }
    range.detail = fmt::format("lambda_emp = {:.6g}, Lambda_emp = {:.6g}",
                               lambda_emp,
                               Lambda_emp);

    SuiteResult result;
    result.name = fmt::format("regularization[{}, p={}, eps={}]",
                              body.describe(),
                              reg.base().spec().p,
                              eps);
    result.checks = {b1, b2, b3, b4, monotone, gradient_fd, growth, agreement, lift, range};

    double const p = reg.base().spec().p;
    if (options.check_prototype_lambda && p >= 2
        && body.kind() == BodyKind::euclidean_ball)
    {
        double const C1 = reg.base().spec().coeff.lower;
        auto lam = make_check("prototype_lambda", 0.0);
        lam.observe(C1 * std::pow(delta, p) * (1 - 1e-3) - lambda_emp);
        lam.detail = fmt::format("lambda_emp = {:.6g}, C1 delta^p = {:.6g}",
                                 lambda_emp,
                                 C1 * std::pow(delta, p));
        result.checks.push_back(lam);
    }
    result.seconds = timer.seconds();
    return result;
}

//---------------------------------------------------------------------------//
CheckResult energy_dissipation_check(SolveResult const& run, double tol)
{
    auto check = make_check("energy_dissipation", tol);
    GridField const& f = run.field;
    double const area = f.grid.cell_area();
    for (int k = 0; k + 1 < f.num_levels(); ++k)
    {
        double motion = 0;
        for (std::size_t i = 0; i < f.levels[k].size(); ++i)
        {
            double const d = f.levels[k + 1][i] - f.levels[k][i];
            motion += d * d;
        }
        motion *= area / f.dt;
        check.observe(run.records[k + 1].energy + motion - run.records[k].energy);
    }
    return check;
}

CheckResult max_principle_check(SolveResult const& run, double tol)
{
    auto check = make_check("max_principle", tol);
    for (int k = 0; k < run.field.num_levels(); ++k)
    {
        check.observe(run.field.sup_norm(k) - run.data_sup_norm);
    }
    return check;
}

UniformEnergyBound uniform_energy_bound(std::span<double const> epsilons,
                                        std::span<GridField const> fields,
                                        GridField const& datum)
{
    if (epsilons.size() != fields.size() || epsilons.empty())
    {
        throw ParameterError("one field is needed per epsilon");
    }
    Grid const& g = datum.grid;
    double reference = 0;
    for (int k = 1; k < datum.num_levels(); ++k)
    {
        for (int j = 0; j < g.ny - 1; ++j)
        {
            for (int i = 0; i < g.nx - 1; ++i)
            {
                reference += 1 + norm_sq(datum.cell_gradient(k, i, j));
            }
        }
    }
    reference *= g.cell_area() * datum.dt;

    UniformEnergyBound result;
    result.epsilons.assign(epsilons.begin(), epsilons.end());
    for (auto const& f : fields)
    {
        if (!(f.grid == g) || f.num_levels() != datum.num_levels())
        {
            throw ParameterError("sweep fields must share the datum grid");
        }
        result.ratios.push_back(gradient_l2_sq(f) / reference);
    }
    result.constant = *std::max_element(result.ratios.begin(), result.ratios.end());

    std::vector<std::size_t> order(epsilons.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return epsilons[a] > epsilons[b];
    });
    // Growth per unit log(1/ε) over the last two intervals of the sweep
    if (order.size() >= 3)
    {
        auto slope = [&](std::size_t m) {
            std::size_t const a = order[m];
            std::size_t const b = order[m + 1];
            return (result.ratios[b] - result.ratios[a])
                   / std::log(epsilons[a] / epsilons[b]);
        };
        double const last = slope(order.size() - 2);
        double const prev = slope(order.size() - 3);
        result.blow_up = last > 0 && last >= prev;
    }
    return result;
}

//---------------------------------------------------------------------------//
SuiteResult steklov_suite(Grid const& grid, double dt, int steps, double h)
{
    Stopwatch timer;
    double const c = 2.5;
    GridField const constant
        = sample_field(grid, 0, dt, steps, [c](double, double, double) { return c; });
    GridField const linear
        = sample_field(grid, 0, dt, steps, [](double, double, double t) { return t; });
    GridField const avg_c = steklov_average(constant, h);
    GridField const avg_l = steklov_average(linear, h);
    double const T = constant.horizon();

    auto const_check = make_check("steklov_constant", 1e-12);
    auto linear_check = make_check("steklov_linear", 1e-12);
    auto tail_check = make_check("steklov_tail_zero", 0.0);
    for (int k = 0; k < constant.num_levels(); ++k)
    {
        double const t = constant.time(k);
        bool const tail = !(t < T - h - 1e-12 * std::max(1.0, T));
        for (int n = 0; n < grid.num_nodes(); ++n)
        {
            if (tail)
            {
                tail_check.observe(std::max(std::abs(avg_c.levels[k][n]),
                                            std::abs(avg_l.levels[k][n])));
            }
            else
            {
                const_check.observe(std::abs(avg_c.levels[k][n] - c));
                linear_check.observe(std::abs(avg_l.levels[k][n] - (t + h / 2)));
            }
        }
    }
    SuiteResult result;
    result.name = "steklov";
    result.checks = {const_check, linear_check, tail_check};
    result.seconds = timer.seconds();
    return result;
}

//---------------------------------------------------------------------------//
SuiteResult analysis_suite(GridField const& field,
                           ConvexBody const& body,
                           double delta,
                           std::uint64_t seed)
{
    Stopwatch timer;
    std::mt19937_64 rng(seed);
    Grid const& g = field.grid;
    double const width = std::min(g.x1() - g.x0, g.y1() - g.y0);
    double const depth = field.horizon() - field.t0;
    double const rho = std::min(0.3 * width, std::sqrt(0.9 * depth));
    Cylinder const cyl{{0.5 * (g.x0 + g.x1()), 0.5 * (g.y0 + g.y1())},
                       field.horizon(),
                       rho};

    // Excess is blind to affine shifts
    auto affine = make_check("excess_affine_invariance", 1e-10);
    double const base = excess(field, cyl);
    for (int trial = 0; trial < 5; ++trial)
    {
        double const a = uniform(rng, -2, 2);
        double const b = uniform(rng, -2, 2);
        double const c = uniform(rng, -2, 2);
        GridField shifted = field;
        for (auto& level : shifted.levels)
        {
            for (int j = 0; j < g.ny; ++j)
            {
                for (int i = 0; i < g.nx; ++i)
                {
                    Vec2 const x = g.node(i, j);
                    level[g.index(i, j)] += a * x.x + b * x.y + c;
                }
            }
        }
        affine.observe(std::abs(excess(shifted, cyl) - base) / std::max(1.0, base));
    }

    // Mean-value minimality on nested cylinders
    auto nested = make_check("excess_nested", 1e-12);
    for (double theta : {0.75, 0.5})
    {
        Cylinder inner = cyl;
        inner.radius = theta * rho;
        double const outer_count = cylinder_cells(field, cyl).size();
        double const inner_count = cylinder_cells(field, inner).size();
        if (inner_count == 0)
            continue;
        nested.observe(excess(field, inner) - (outer_count / inner_count) * base
                       - 1e-12 * std::max(1.0, base));
    }

    DualSample const dual = sample_dual_boundary(body, 64);
    auto superlevel = make_check("superlevel_monotone", 0.0);
    for (Vec2 const& e : dual.points)
    {
        double previous = 2;
        for (double threshold = -2; threshold <= 2; threshold += 0.25)
        {
            double const m = superlevel_measure(field, cyl, e, delta, threshold);
            superlevel.observe(m - previous);
            previous = m;
        }
    }

    auto exclusive = make_check("regime_exclusive", 0.0);
    for (double mu : {0.05, 0.2, 0.5})
    {
        for (double nu : {0.05, 0.25})
        {
            RegimeResult const r = classify_regime(field, cyl, delta, mu, nu, dual);
            bool const any = std::any_of(r.complement_fractions.begin(),
                                         r.complement_fractions.end(),
                                         [nu](double f) { return f < nu; });
            bool const consistent
                = (r.label == Regime::non_degenerate) == any
                  && r.witness.has_value() == (r.label == Regime::non_degenerate);
            exclusive.observe(consistent ? 0.0 : 1.0);
        }
    }

    auto osc_monotone = make_check("modulus_monotone", 0.0);
    double const h = std::max(g.hx, g.hy);
    auto const lags = geometric_lags(h, 10 * h * std::sqrt(2.0));
    Region const region{cyl.center.x - rho,
                        cyl.center.x + rho,
                        cyl.center.y - rho,
                        cyl.center.y + rho,
                        field.t0,
                        field.horizon()};
    ModulusFit const fit = continuity_modulus(field, GDeltaMap(body, delta), region, lags);
    for (std::size_t b = 1; b < fit.osc.size(); ++b)
    {
        osc_monotone.observe(fit.osc[b - 1] - fit.osc[b]);
    }

    SuiteResult result;
    result.name = "analysis";
    result.checks = {affine, nested, superlevel, exclusive, osc_monotone};
    result.seconds = timer.seconds();
    return result;
}

}  // namespace gaugeflow
