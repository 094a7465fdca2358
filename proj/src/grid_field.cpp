//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/grid_field.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/grid_field.hpp"

#include <algorithm>
#include <cmath>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
Grid Grid::rectangle(
    int nx, int ny, double xmin, double xmax, double ymin, double ymax)
{
    if (nx < 3 || ny < 3)
    {
        throw ParameterError("grid needs at least 3 nodes per direction");
    }
    if (!(xmax > xmin) || !(ymax > ymin))
    {
        throw ParameterError("grid rectangle is empty");
    }
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = xmin;
    g.y0 = ymin;
    g.hx = (xmax - xmin) / (nx - 1);
    g.hy = (ymax - ymin) / (ny - 1);
    return g;
}

Vec2 node_gradient(Grid const& g, std::span<double const> v, int i, int j)
{
    Vec2 sum{};
    int count = 0;
    for (int cj = j - 1; cj <= j; ++cj)
    {
        for (int ci = i - 1; ci <= i; ++ci)
        {
            if (ci >= 0 && cj >= 0 && ci < g.nx - 1 && cj < g.ny - 1)
            {
                sum += cell_gradient(g, v, ci, cj);
                ++count;
            }
        }
    }
    return sum / count;
}

double GridField::sup_norm(int k) const
{
    double result = 0;
    for (double v : levels[k])
    {
        result = std::max(result, std::abs(v));
    }
    return result;
}

double GridField::sup_norm() const
{
    double result = 0;
    for (int k = 0; k < num_levels(); ++k)
    {
        result = std::max(result, sup_norm(k));
    }
    return result;
}

}  // namespace gaugeflow
