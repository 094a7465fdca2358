//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/convex_gauge.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/convex_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
namespace
{
//---------------------------------------------------------------------------//
// Counterclockwise hull without collinear points (monotone chain).
std::vector<Vec2> convex_hull(std::vector<Vec2> pts)
{
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
    {
        return pts;
    }

    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (auto const& p : pts)
    {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0)
        {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;)
    {
        auto const& p = pts[i];
        while (k >= lower
               && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0)
        {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(BodyKind kind)
{
    switch (kind)
    {
        case BodyKind::euclidean_ball:
            return "euclidean_ball";
        case BodyKind::ellipsoid:
            return "ellipsoid";
        case BodyKind::polytope:
            return "polytope";
    }
    return "unknown";
}

//---------------------------------------------------------------------------//
ConvexBody ConvexBody::euclidean_ball(double radius)
{
    if (!(radius > 0) || !std::isfinite(radius))
    {
        throw ParameterError("ball radius must be positive and finite");
    }
    ConvexBody body;
    body.kind_ = BodyKind::euclidean_ball;
    body.radius_ = radius;
    body.r_inner_ = radius;
    body.r_outer_ = radius;
    return body;
}

//---------------------------------------------------------------------------//
ConvexBody ConvexBody::ellipsoid(SymMat2 const& form)
{
    auto [lo, hi] = form.eigenvalues();
    if (!(lo > 0) || !std::isfinite(hi))
    {
        throw ParameterError("ellipsoid form must be positive definite");
    }
    ConvexBody body;
    body.kind_ = BodyKind::ellipsoid;
    body.form_ = form;
    double const det = form.det();
    body.form_inverse_ = {form.yy / det, -form.xy / det, form.xx / det};
    // Semi-axes are 1/sqrt(eigenvalue)
    body.r_inner_ = 1 / std::sqrt(hi);
    body.r_outer_ = 1 / std::sqrt(lo);
    return body;
}

//---------------------------------------------------------------------------//
ConvexBody ConvexBody::polytope(std::vector<Vec2> const& vertices)
{
    for (auto const& v : vertices)
    {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
        {
            throw ParameterError("polytope vertex is not finite");
        }
    }
    auto hull = convex_hull(vertices);
    if (hull.size() < 3)
    {
        throw ParameterError(
            "polytope must have at least three non-collinear vertices");
    }

    ConvexBody body;
    body.kind_ = BodyKind::polytope;
    body.vertices_ = hull;

    double scale = 0;
    for (auto const& v : hull)
    {
        scale = std::max(scale, norm(v));
    }
    body.r_outer_ = scale;

    double r_in = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
    {
        Vec2 const a = hull[i];
        Vec2 const b = hull[(i + 1) % hull.size()];
        Vec2 const edge = b - a;
        Vec2 const normal = Vec2{edge.y, -edge.x} / norm(edge);
        double const offset = dot(normal, a);
        if (!(offset > 1e-12 * scale))
        {
            throw ParameterError(
                "origin is not in the interior of the polytope");
        }
        body.facets_.push_back({normal, offset});
        r_in = std::min(r_in, offset);
    }
    body.r_inner_ = r_in;
    return body;
}

//---------------------------------------------------------------------------//
double ConvexBody::gauge(Vec2 xi) const
{
    switch (kind_)
    {
        case BodyKind::euclidean_ball:
            return norm(xi) / radius_;
        case BodyKind::ellipsoid:
            return std::sqrt(std::max(0.0, form_.quad(xi, xi)));
        case BodyKind::polytope: {
            double result = 0;
            for (auto const& f : facets_)
            {
                result = std::max(result, dot(f.normal, xi) / f.offset);
            }
            return result;
        }
    }
    return 0;
}

//---------------------------------------------------------------------------//
double ConvexBody::dual_gauge(Vec2 xi) const
{
    switch (kind_)
    {
        case BodyKind::euclidean_ball:
            return radius_ * norm(xi);
        case BodyKind::ellipsoid:
            return std::sqrt(std::max(0.0, form_inverse_.quad(xi, xi)));
        case BodyKind::polytope: {
            double result = 0;
            for (auto const& v : vertices_)
            {
                result = std::max(result, dot(xi, v));
            }
            return result;
        }
    }
    return 0;
}

//---------------------------------------------------------------------------//
Vec2 ConvexBody::gauge_gradient(Vec2 xi) const
{
    if (xi == Vec2{})
    {
        return {};
    }
    switch (kind_)
    {
        case BodyKind::euclidean_ball:
            return xi / (radius_ * norm(xi));
        case BodyKind::ellipsoid:
            return (form_ * xi) / this->gauge(xi);
        case BodyKind::polytope: {
            Facet const* best = &facets_.front();
            double best_val = -std::numeric_limits<double>::infinity();
            for (auto const& f : facets_)
            {
                double const v = dot(f.normal, xi) / f.offset;
                if (v > best_val)
                {
                    best_val = v;
                    best = &f;
                }
            }
            return best->normal / best->offset;
        }
    }
    return {};
}

//---------------------------------------------------------------------------//
SymMat2 ConvexBody::gauge_hessian(Vec2 xi) const
{
    if (xi == Vec2{})
    {
        return {};
    }
    switch (kind_)
    {
        case BodyKind::euclidean_ball: {
            double const r = norm(xi);
            Vec2 const u = xi / r;
            return (1 / (radius_ * r))
                   * (SymMat2::identity() + (-1.0) * SymMat2::outer(u));
        }
        case BodyKind::ellipsoid: {
            double const g = this->gauge(xi);
            Vec2 const axi = form_ * xi;
            return (1 / g)
                   * (form_ + (-1 / (g * g)) * SymMat2::outer(axi));
        }
        case BodyKind::polytope:
            return {};
    }
    return {};
}

//---------------------------------------------------------------------------//
bool ConvexBody::contains(Vec2 xi, double tol) const
{
    return this->gauge(xi) <= 1 + tol;
}

//---------------------------------------------------------------------------//
double ConvexBody::kink_gap(Vec2 xi) const
{
    if (kind_ != BodyKind::polytope)
    {
        return std::numeric_limits<double>::infinity();
    }
    double first = -std::numeric_limits<double>::infinity();
    double second = first;
    for (auto const& f : facets_)
    {
        double const v = dot(f.normal, xi) / f.offset;
        if (v > first)
        {
            second = first;
            first = v;
        }
        else if (v > second)
        {
            second = v;
        }
    }
    double const scale = norm(xi) / r_inner_;
    return scale > 0 ? (first - second) / scale : 0.0;
}

//---------------------------------------------------------------------------//
std::string ConvexBody::describe() const
{
    std::ostringstream os;
    os << to_string(kind_);
    switch (kind_)
    {
        case BodyKind::euclidean_ball:
            os << "(radius=" << radius_ << ")";
            break;
        case BodyKind::ellipsoid:
            os << "(form=[[" << form_.xx << "," << form_.xy << "],["
               << form_.xy << "," << form_.yy << "]])";
            break;
        case BodyKind::polytope:
            os << "(" << vertices_.size() << " vertices)";
            break;
    }
    return os.str();
}

//---------------------------------------------------------------------------//
DualSample sample_dual_boundary(ConvexBody const& body, int count)
{
    if (count < 4)
    {
        throw ParameterError("dual boundary sample needs at least 4 points");
    }
    DualSample result;
    result.angles.reserve(count);
    result.points.reserve(count);
    for (int k = 0; k < count; ++k)
    {
        double const angle = 2 * std::numbers::pi * k / count;
        Vec2 const d = unit_vector(angle);
        result.angles.push_back(angle);
        result.points.push_back(d / body.dual_gauge(d));
    }
    return result;
}

//---------------------------------------------------------------------------//
double sampled_gauge(DualSample const& sample, Vec2 xi)
{
    double result = 0;
    for (auto const& p : sample.points)
    {
        result = std::max(result, dot(xi, p));
    }
    return result;
}

//---------------------------------------------------------------------------//
bool parallel_set_membership(ConvexBody const& body, double delta, Vec2 xi)
{
    if (!(delta >= 0))
    {
        throw ParameterError("parallel set distance must be nonnegative");
    }
    return body.gauge(xi) <= 1 + delta;
}

}  // namespace gaugeflow
