//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/convex_gauge.hpp
//! \brief Convex degeneracy sets, their Minkowski gauge and dual gauge.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "linalg.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
enum class BodyKind
{
    euclidean_ball,
    ellipsoid,
    polytope
};

char const* to_string(BodyKind kind);

//! Supporting line {x : <normal, x> = offset} of a polygon edge.
struct Facet
{
    Vec2 normal;  //!< outward unit normal
    double offset;  //!< distance from the origin, > 0
};

//---------------------------------------------------------------------------//
/*!
 * Bounded convex set in the plane with the origin in its interior.
 *
 * Three families are supported:
 * - euclidean ball of a given radius;
 * - ellipsoid {x : xᵀ A x ≤ 1} for a symmetric positive-definite \c A;
 * - polygon given as a vertex list (the convex hull is taken).
 *
 * The inner radius r_E is the largest centered ball inside the body and the
 * outer radius R_E the smallest centered ball containing it, so that
 * |ξ|/R_E ≤ gauge(ξ) ≤ |ξ|/r_E.
 *
 * The gauge need not be symmetric: gauge(-ξ) ≠ gauge(ξ) in general.
 */
class ConvexBody
{
  public:
    static ConvexBody euclidean_ball(double radius);
    static ConvexBody ellipsoid(SymMat2 const& form);
    static ConvexBody polytope(std::vector<Vec2> const& vertices);

    BodyKind kind() const { return kind_; }
    double inner_radius() const { return r_inner_; }
    double outer_radius() const { return r_outer_; }

    //! inf{t > 0 : ξ ∈ tE}
    double gauge(Vec2 xi) const;
    //! sup_{e ∈ E} <ξ, e>
    double dual_gauge(Vec2 xi) const;
    //! Gradient of the gauge; zero at the origin. Polytopes return the
    //! gradient of the active facet (a subgradient on kinks).
    Vec2 gauge_gradient(Vec2 xi) const;
    //! Hessian of the gauge away from the origin (zero for polytopes).
    SymMat2 gauge_hessian(Vec2 xi) const;
    //! Whether ξ lies in E (gauge ≤ 1 + tol).
    bool contains(Vec2 xi, double tol = 0) const;

    //! Relative gap between the two largest facet ratios; small values mark
    //! rays through polygon vertices where the gauge has a kink. Infinite
    //! for smooth bodies.
    double kink_gap(Vec2 xi) const;

    //!@{
    //! Construction parameters
    double ball_radius() const { return radius_; }
    SymMat2 const& ellipsoid_form() const { return form_; }
    std::vector<Vec2> const& vertices() const { return vertices_; }
    std::vector<Facet> const& facets() const { return facets_; }
    //!@}

    std::string describe() const;

  private:
    ConvexBody() = default;

    BodyKind kind_{BodyKind::euclidean_ball};
    double radius_{1};
    SymMat2 form_{};
    SymMat2 form_inverse_{};
    std::vector<Vec2> vertices_;
    std::vector<Facet> facets_;
    double r_inner_{1};
    double r_outer_{1};
};

//---------------------------------------------------------------------------//
//! Points on the boundary of the polar body E* = {p : dual_gauge(p) ≤ 1}.
struct DualSample
{
    std::vector<double> angles;
    std::vector<Vec2> points;
};

struct Radii
{
    double inner;
    double outer;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

inline double gauge(ConvexBody const& body, Vec2 xi) { return body.gauge(xi); }

inline double dual_gauge(ConvexBody const& body, Vec2 xi)
{
    return body.dual_gauge(xi);
}

// Equally spaced angles starting at zero; each point is d / dual_gauge(d).
DualSample sample_dual_boundary(ConvexBody const& body, int count);

//! max_{e* ∈ sample} <ξ, e*>, a lower approximation of the gauge
double sampled_gauge(DualSample const& sample, Vec2 xi);

//! Membership in the outer parallel set E_δ = {gauge ≤ 1 + δ}.
bool parallel_set_membership(ConvexBody const& body, double delta, Vec2 xi);

inline Radii radii(ConvexBody const& body)
{
    return {body.inner_radius(), body.outer_radius()};
}

}  // namespace gaugeflow
