//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/grid_field.hpp
//! \brief Uniform 2D node grid and time-indexed scalar fields on it.
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <vector>

#include "linalg.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
/*!
 * Uniform node grid on a rectangle.
 *
 * \c nx × \c ny nodes, row-major (index = j * nx + i), boundary nodes on the
 * rectangle edges. Cell (i, j) has lower-left node (i, j); there are
 * (nx-1)(ny-1) cells.
 */
struct Grid
{
    int nx{0};
    int ny{0};
    double x0{0};
    double y0{0};
    double hx{1};
    double hy{1};

    static Grid
    rectangle(int nx, int ny, double xmin, double xmax, double ymin, double ymax);

    int num_nodes() const { return nx * ny; }
    int num_cells() const { return (nx - 1) * (ny - 1); }
    double cell_area() const { return hx * hy; }
    double x1() const { return x0 + (nx - 1) * hx; }
    double y1() const { return y0 + (ny - 1) * hy; }

    int index(int i, int j) const { return j * nx + i; }
    Vec2 node(int i, int j) const { return {x0 + i * hx, y0 + j * hy}; }
    Vec2 cell_center(int i, int j) const
    {
        return {x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy};
    }
    bool is_boundary(int i, int j) const
    {
        return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
    }

    friend bool operator==(Grid const&, Grid const&) = default;
};

//! Forward-difference gradient D_h v on cell (i, j).
inline Vec2 cell_gradient(Grid const& g, std::span<double const> v, int i, int j)
{
    double const base = v[g.index(i, j)];
    return {(v[g.index(i + 1, j)] - base) / g.hx,
            (v[g.index(i, j + 1)] - base) / g.hy};
}

//! Average of the gradients of the (up to four) cells sharing node (i, j).
Vec2 node_gradient(Grid const& g, std::span<double const> v, int i, int j);

//---------------------------------------------------------------------------//
/*!
 * Scalar field stored at levels t_k = t0 + k·dt, k = 0..num_levels()-1.
 */
struct GridField
{
    Grid grid;
    double t0{0};
    double dt{1};
    std::vector<std::vector<double>> levels;

    int num_levels() const { return static_cast<int>(levels.size()); }
    int num_steps() const { return num_levels() - 1; }
    double time(int k) const { return t0 + k * dt; }
    double horizon() const { return time(num_steps()); }

    std::span<double const> level(int k) const { return levels[k]; }

    Vec2 cell_gradient(int k, int i, int j) const
    {
        return gaugeflow::cell_gradient(grid, levels[k], i, j);
    }
    Vec2 node_gradient(int k, int i, int j) const
    {
        return gaugeflow::node_gradient(grid, levels[k], i, j);
    }

    double sup_norm(int k) const;
    double sup_norm() const;
};

}  // namespace gaugeflow
