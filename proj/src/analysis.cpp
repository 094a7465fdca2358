//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/analysis.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
namespace
{
constexpr double time_slack = 1e-9;
}

//---------------------------------------------------------------------------//
std::vector<CellSample> cylinder_cells(GridField const& field,
                                       Cylinder const& cyl)
{
    Grid const& g = field.grid;
    double const rho = cyl.radius;
    if (!(rho > 0))
    {
        throw ParameterError("cylinder radius must be positive");
    }
    double const slack = time_slack * std::max(1.0, field.dt);
    if (cyl.center.x - rho < g.x0 - slack || cyl.center.x + rho > g.x1() + slack
        || cyl.center.y - rho < g.y0 - slack || cyl.center.y + rho > g.y1() + slack
        || cyl.t0 - rho * rho < field.t0 - slack || cyl.t0 > field.horizon() + slack)
    {
        throw ParameterError("cylinder is not contained in the solved domain");
    }

    std::vector<CellSample> cells;
    for (int k = 0; k < field.num_levels(); ++k)
    {
        double const t = field.time(k);
        if (!(t > cyl.t0 - rho * rho + slack && t <= cyl.t0 + slack))
            continue;
        for (int j = 0; j < g.ny - 1; ++j)
        {
            for (int i = 0; i < g.nx - 1; ++i)
            {
                if (norm(g.cell_center(i, j) - cyl.center) < rho)
                {
                    cells.push_back({k, i, j});
                }
            }
        }
    }
    return cells;
}

//---------------------------------------------------------------------------//
double excess(GridField const& field, Cylinder const& cyl)
{
    auto const cells = cylinder_cells(field, cyl);
    if (cells.empty())
    {
        throw ParameterError("cylinder contains no cells");
    }
    std::vector<Vec2> grads;
    grads.reserve(cells.size());
    Vec2 mean{};
    for (auto const& c : cells)
    {
        grads.push_back(field.cell_gradient(c.level, c.i, c.j));
        mean = mean + grads.back();
    }
    mean = (1.0 / grads.size()) * mean;
    double sum = 0;
    for (Vec2 const& d : grads)
    {
        sum += norm_sq(d - mean);
    }
    return sum / grads.size();
}

//---------------------------------------------------------------------------//
double superlevel_measure(GridField const& field,
                          Cylinder const& cyl,
                          Vec2 e_star,
                          double delta,
                          double threshold)
{
    auto const cells = cylinder_cells(field, cyl);
    if (cells.empty())
        return 0;
    std::size_t above = 0;
    for (auto const& c : cells)
    {
        double const d = dot(field.cell_gradient(c.level, c.i, c.j), e_star);
        if (d - (1 + delta) > threshold)
        {
            ++above;
        }
    }
    return static_cast<double>(above) / cells.size();
}

//---------------------------------------------------------------------------//
char const* to_string(Regime regime)
{
    return regime == Regime::non_degenerate ? "non_degenerate" : "degenerate";
}

RegimeResult classify_regime(GridField const& field,
                             Cylinder const& cyl,
                             double delta,
                             double mu,
                             double nu,
                             DualSample const& dual_samples)
{
    if (!(mu > 0))
    {
        throw ParameterError("mu must be positive");
    }
    if (!(nu > 0 && nu <= 0.25))
    {
        throw ParameterError("nu must lie in (0, 1/4]");
    }
    auto const cells = cylinder_cells(field, cyl);
    if (cells.empty())
    {
        throw ParameterError("cylinder contains no cells");
    }
    std::vector<Vec2> grads;
    grads.reserve(cells.size());
    for (auto const& c : cells)
    {
        grads.push_back(field.cell_gradient(c.level, c.i, c.j));
    }

    RegimeResult result;
    double const threshold = (1 - nu) * mu;
    double best = 2;
    for (std::size_t s = 0; s < dual_samples.points.size(); ++s)
    {
        Vec2 const e = dual_samples.points[s];
        std::size_t outside = 0;
        for (Vec2 const& d : grads)
        {
            if (!(dot(d, e) - (1 + delta) > threshold))
            {
                ++outside;
            }
        }
        double const frac = static_cast<double>(outside) / grads.size();
        result.complement_fractions.push_back(frac);
        if (frac < nu && frac < best)
        {
            best = frac;
            result.witness = s;
        }
    }
    if (result.witness)
    {
        result.label = Regime::non_degenerate;
        result.witness_point = dual_samples.points[*result.witness];
        result.witness_angle = dual_samples.angles[*result.witness];
    }
    return result;
}

//---------------------------------------------------------------------------//
std::vector<double> geometric_lags(double r_min, double r_max)
{
    if (!(r_min > 0) || !(r_max > r_min))
    {
        throw ParameterError("lag range must satisfy 0 < r_min < r_max");
    }
    std::vector<double> lags;
    double const ratio = std::sqrt(2.0);
    lags.push_back(r_min);
    while (lags.back() < r_max * (1 - 1e-12))
    {
        lags.push_back(lags.back() * ratio);
    }
    return lags;
}

ModulusFit continuity_modulus(GridField const& field,
                              GDeltaMap const& map,
                              Region const& region,
                              std::span<double const> lags)
{
    if (lags.size() < 3)
    {
        throw ParameterError("continuity modulus needs at least 3 lag bins");
    }
    if (!std::is_sorted(lags.begin(), lags.end()) || !(lags.front() > 0))
    {
        throw ParameterError("lags must be positive and increasing");
    }
    if (lags.back() < 10 * lags.front() * (1 - 1e-12))
    {
        throw ParameterError("lags must span at least one decade");
    }
    Grid const& g = field.grid;

    // Index box of interior nodes and levels inside the region
    auto lo_index = [](double v, double origin, double h, int lo) {
        return std::max(lo, static_cast<int>(std::ceil((v - origin) / h - 1e-9)));
    };
    auto hi_index = [](double v, double origin, double h, int hi) {
        return std::min(hi, static_cast<int>(std::floor((v - origin) / h + 1e-9)));
    };
    int const i0 = lo_index(region.xmin, g.x0, g.hx, 1);
    int const i1 = hi_index(region.xmax, g.x0, g.hx, g.nx - 2);
    int const j0 = lo_index(region.ymin, g.y0, g.hy, 1);
    int const j1 = hi_index(region.ymax, g.y0, g.hy, g.ny - 2);
    int const k0 = lo_index(region.tmin, field.t0, field.dt, 0);
    int const k1 = hi_index(region.tmax, field.t0, field.dt, field.num_steps());
    if (i1 < i0 || j1 < j0 || k1 < k0)
    {
        throw ParameterError("modulus region contains no nodes");
    }
    int const ni = i1 - i0 + 1;
    int const nj = j1 - j0 + 1;
    int const nk = k1 - k0 + 1;

    std::vector<Vec2> gmap(static_cast<std::size_t>(ni) * nj * nk);
    auto at = [&](int k, int i, int j) -> Vec2& {
        return gmap[(static_cast<std::size_t>(k) * nj + j) * ni + i];
    };
    for (int k = 0; k < nk; ++k)
    {
        for (int j = 0; j < nj; ++j)
        {
            for (int i = 0; i < ni; ++i)
            {
                at(k, i, j) = map(field.node_gradient(k0 + k, i0 + i, j0 + j));
            }
        }
    }

    // Per-offset oscillation, accumulated into cumulative lag bins
    double const r_max = lags.back();
    int const dx_max = std::min(ni - 1, static_cast<int>(r_max / g.hx));
    int const dy_max = std::min(nj - 1, static_cast<int>(r_max / g.hy));
    int const dk_max
        = std::min(nk - 1, static_cast<int>(r_max * r_max / field.dt + 1e-9));
    ModulusFit fit;
    fit.lags.assign(lags.begin(), lags.end());
    fit.osc.assign(lags.size(), 0.0);
    for (int dk = 0; dk <= dk_max; ++dk)
    {
        for (int dj = -dy_max; dj <= dy_max; ++dj)
        {
            for (int di = -dx_max; di <= dx_max; ++di)
            {
                if (dk == 0 && (dj < 0 || (dj == 0 && di <= 0)))
                    continue;
                double const dp = std::hypot(di * g.hx, dj * g.hy)
                                  + std::sqrt(dk * field.dt);
                if (dp > r_max * (1 + 1e-12))
                    continue;
                double worst = 0;
                for (int k = 0; k + dk < nk; ++k)
                {
                    for (int j = std::max(0, -dj); j < nj && j + dj < nj; ++j)
                    {
                        for (int i = std::max(0, -di); i < ni && i + di < ni; ++i)
                        {
                            worst = std::max(
                                worst, norm(at(k + dk, i + di, j + dj) - at(k, i, j)));
                        }
                    }
                }
                auto const bin = std::lower_bound(
                    fit.lags.begin(), fit.lags.end(), dp * (1 - 1e-12));
                std::size_t const b = bin - fit.lags.begin();
                fit.osc[b] = std::max(fit.osc[b], worst);
            }
        }
    }
    // Differences at roundoff level of the mapped gradients count as zero
    double scale = 0;
    for (Vec2 const& v : gmap)
    {
        scale = std::max(scale, norm(v));
    }
    double const roundoff = 64 * std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t b = 0; b < fit.osc.size(); ++b)
    {
        if (fit.osc[b] <= roundoff)
            fit.osc[b] = 0;
        if (b > 0)
            fit.osc[b] = std::max(fit.osc[b], fit.osc[b - 1]);
    }

    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t b = 0; b < fit.lags.size(); ++b)
    {
        if (fit.osc[b] > 0)
        {
            lx.push_back(std::log(fit.lags[b]));
            ly.push_back(std::log(fit.osc[b]));
        }
    }
    if (lx.empty())
    {
        fit.exact = true;
        fit.r2 = 1;
        return fit;
    }
    if (lx.size() < 3)
    {
        throw ParameterError("fewer than 3 lag bins with positive oscillation");
    }
    double const n = static_cast<double>(lx.size());
    double const mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    double const my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (std::size_t m = 0; m < lx.size(); ++m)
    {
        sxx += (lx[m] - mx) * (lx[m] - mx);
        sxy += (lx[m] - mx) * (ly[m] - my);
        syy += (ly[m] - my) * (ly[m] - my);
    }
    fit.exponent = sxy / sxx;
    fit.constant = std::exp(my - fit.exponent * mx);
    double const ss_res = syy - fit.exponent * sxy;
    fit.r2 = syy > 0 ? 1 - std::max(0.0, ss_res) / syy : 1.0;
    return fit;
}

//---------------------------------------------------------------------------//
void assess_monotone(EpsConvergenceTable& table, double noise)
{
    table.monotone = true;
    table.offending.reset();
    for (std::size_t m = 0; m + 1 < table.rows.size(); ++m)
    {
        if (table.rows[m + 1].distance > (1 + noise) * table.rows[m].distance)
        {
            table.monotone = false;
            table.offending = std::make_pair(m, m + 1);
            return;
        }
    }
}

EpsConvergenceTable eps_convergence_table(std::span<double const> epsilons,
                                          std::span<GridField const> fields,
                                          GDeltaMap const& map,
                                          double noise)
{
    if (epsilons.size() != fields.size())
    {
        throw ParameterError("one field is needed per epsilon");
    }
    if (epsilons.size() < 3)
    {
        throw ParameterError("convergence table needs at least 3 epsilon levels");
    }
    for (auto const& f : fields)
    {
        if (!(f.grid == fields.front().grid) || f.num_levels() != fields.front().num_levels()
            || f.dt != fields.front().dt || f.t0 != fields.front().t0)
        {
            throw ParameterError("epsilon levels use mismatched grids");
        }
    }

    std::vector<std::size_t> order(epsilons.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return epsilons[a] > epsilons[b];
    });
    GridField const& ref = fields[order.back()];
    Grid const& g = ref.grid;

    EpsConvergenceTable table;
    table.reference_epsilon = epsilons[order.back()];
    for (std::size_t m = 0; m + 1 < order.size(); ++m)
    {
        GridField const& f = fields[order[m]];
        double sum = 0;
        for (int k = 1; k < f.num_levels(); ++k)
        {
            for (int j = 0; j < g.ny - 1; ++j)
            {
                for (int i = 0; i < g.nx - 1; ++i)
                {
                    sum += norm_sq(map(f.cell_gradient(k, i, j))
                                   - map(ref.cell_gradient(k, i, j)));
                }
            }
        }
        table.rows.push_back(
            {epsilons[order[m]], std::sqrt(sum * g.cell_area() * f.dt)});
    }
    assess_monotone(table, noise);
    return table;
}

}  // namespace gaugeflow
