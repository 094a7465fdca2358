//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/linalg.hpp
//! \brief Fixed-size 2D vector and symmetric matrix helpers.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace gaugeflow
{
//---------------------------------------------------------------------------//
struct Vec2
{
    double x{0};
    double y{0};

    constexpr Vec2& operator+=(Vec2 o)
    {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(Vec2 o)
    {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Vec2& operator*=(double s)
    {
        x *= s;
        y *= s;
        return *this;
    }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm_sq(Vec2 a) { return dot(a, a); }

inline Vec2 unit_vector(double angle)
{
    return {std::cos(angle), std::sin(angle)};
}

//---------------------------------------------------------------------------//
/*!
 * Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
 */
struct SymMat2
{
    double xx{0};
    double xy{0};
    double yy{0};

    static constexpr SymMat2 identity(double s = 1.0) { return {s, 0, s}; }

    //! Outer product a ⊗ a
    static constexpr SymMat2 outer(Vec2 a)
    {
        return {a.x * a.x, a.x * a.y, a.y * a.y};
    }

    constexpr SymMat2& operator+=(SymMat2 const& o)
    {
        xx += o.xx;
        xy += o.xy;
        yy += o.yy;
        return *this;
    }

    constexpr Vec2 operator*(Vec2 v) const
    {
        return {xx * v.x + xy * v.y, xy * v.x + yy * v.y};
    }

    constexpr double quad(Vec2 a, Vec2 b) const { return dot((*this) * a, b); }
    constexpr double trace() const { return xx + yy; }
    constexpr double det() const { return xx * yy - xy * xy; }

    //! Eigenvalues in ascending order.
    std::pair<double, double> eigenvalues() const
    {
        double const mean = 0.5 * (xx + yy);
        double const rad = std::hypot(0.5 * (xx - yy), xy);
        return {mean - rad, mean + rad};
    }

    //! Spectral norm.
    double op_norm() const
    {
        auto [lo, hi] = this->eigenvalues();
        return std::max(std::abs(lo), std::abs(hi));
    }

    friend constexpr bool operator==(SymMat2 const&, SymMat2 const&) = default;
};

constexpr SymMat2 operator+(SymMat2 a, SymMat2 const& b) { return a += b; }
constexpr SymMat2 operator*(double s, SymMat2 const& a)
{
    return {s * a.xx, s * a.xy, s * a.yy};
}

}  // namespace gaugeflow
