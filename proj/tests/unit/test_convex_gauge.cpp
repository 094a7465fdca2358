//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_convex_gauge.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gaugeflow/convex_gauge.hpp"
#include "gaugeflow/errors.hpp"
#include "gaugeflow/properties.hpp"

namespace gaugeflow
{
namespace
{
//---------------------------------------------------------------------------//
// Independent gauge: bisection on t using half-plane membership of ξ/t in
// the hull of the vertices (counter-clockwise order assumed).
double bisection_gauge(std::vector<Vec2> const& ccw, Vec2 xi)
{
    auto inside = [&](Vec2 p) {
        for (std::size_t k = 0; k < ccw.size(); ++k)
        {
            Vec2 a = ccw[k];
            Vec2 b = ccw[(k + 1) % ccw.size()];
            double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross < 0)
                return false;
        }
        return true;
    };
    if (norm(xi) == 0)
        return 0;
    double lo = 0, hi = 1;
    while (!inside(xi / hi))
        hi *= 2;
    for (int it = 0; it < 200; ++it)
    {
        double mid = 0.5 * (lo + hi);
        (inside(xi / mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<Vec2> square_vertices()
{
    return {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
}

//---------------------------------------------------------------------------//
TEST(ConvexGauge, ball_is_euclidean_norm)
{
    auto ball = ConvexBody::euclidean_ball(1);
    EXPECT_DOUBLE_EQ(ball.gauge({3, 4}), 5);
    EXPECT_DOUBLE_EQ(ball.dual_gauge({3, 4}), 5);
    EXPECT_EQ(ball.gauge({0, 0}), 0);
    EXPECT_DOUBLE_EQ(ConvexBody::euclidean_ball(2).gauge({3, 4}), 2.5);
}

TEST(ConvexGauge, square_examples)
{
    auto sq = ConvexBody::polytope(square_vertices());
    EXPECT_NEAR(sq.gauge({2, 1}), 2, 1e-14);
    EXPECT_NEAR(sq.dual_gauge({2, 1}), 3, 1e-14);
    EXPECT_EQ(sq.dual_gauge({0, 0}), 0);
    EXPECT_NEAR(sq.inner_radius(), 1, 1e-14);
    EXPECT_NEAR(sq.outer_radius(), std::sqrt(2.0), 1e-14);
}

TEST(ConvexGauge, radii_examples)
{
    auto r = radii(ConvexBody::euclidean_ball(2));
    EXPECT_DOUBLE_EQ(r.inner, 2);
    EXPECT_DOUBLE_EQ(r.outer, 2);

    auto ell = ConvexBody::ellipsoid(SymMat2{0.25, 0, 1});
    EXPECT_NEAR(ell.inner_radius(), 1, 1e-12);
    EXPECT_NEAR(ell.outer_radius(), 2, 1e-12);
    EXPECT_NEAR(ell.gauge({2, 0}), 1, 1e-14);
    EXPECT_NEAR(ell.gauge({0, 3}), 3, 1e-14);
}

TEST(ConvexGauge, polytope_matches_bisection_oracle)
{
    std::vector<Vec2> pentagon{
        {1.2, 0.1}, {0.3, 1.0}, {-0.9, 0.6}, {-0.7, -0.8}, {0.6, -1.1}};
    auto body = ConvexBody::polytope(pentagon);
    std::mt19937_64 rng(7);
    for (int n = 0; n < 2000; ++n)
    {
        Vec2 xi = random_vector(rng, 1e-3, 1e3);
        double expected = bisection_gauge(pentagon, xi);
        EXPECT_NEAR(body.gauge(xi), expected, 1e-12 * expected);
    }
}

TEST(ConvexGauge, polytope_hull_ignores_interior_points)
{
    auto with_interior = square_vertices();
    with_interior.push_back({0.2, 0.3});
    auto a = ConvexBody::polytope(with_interior);
    auto b = ConvexBody::polytope(square_vertices());
    EXPECT_NEAR(a.gauge({0.7, -1.9}), b.gauge({0.7, -1.9}), 1e-14);
}

TEST(ConvexGauge, rejects_degenerate_bodies)
{
    EXPECT_THROW(ConvexBody::polytope({{1, 0}, {-1, 0}}), ParameterError);
    EXPECT_THROW(ConvexBody::polytope({{1, 1}, {2, 1}, {1, 2}}), ParameterError);
    EXPECT_THROW(ConvexBody::euclidean_ball(0), ParameterError);
    EXPECT_THROW(ConvexBody::ellipsoid(SymMat2{1, 2, 1}), ParameterError);
}

TEST(ConvexGauge, dual_gauge_is_support_function)
{
    std::vector<Vec2> pentagon{
        {1.2, 0.1}, {0.3, 1.0}, {-0.9, 0.6}, {-0.7, -0.8}, {0.6, -1.1}};
    auto body = ConvexBody::polytope(pentagon);
    std::mt19937_64 rng(11);
    for (int n = 0; n < 500; ++n)
    {
        Vec2 xi = random_vector(rng, 0.1, 10);
        double best = -1e300;
        for (auto v : pentagon)
            best = std::max(best, dot(xi, v));
        EXPECT_NEAR(body.dual_gauge(xi), best, 1e-12 * norm(xi));
    }
}

TEST(ConvexGauge, dual_sample_ball_is_unit_circle)
{
    auto s = sample_dual_boundary(ConvexBody::euclidean_ball(1), 360);
    ASSERT_EQ(s.points.size(), 360u);
    for (auto p : s.points)
        EXPECT_NEAR(norm(p), 1, 1e-14);
}

TEST(ConvexGauge, dual_sample_square_axes)
{
    auto sq = ConvexBody::polytope(square_vertices());
    auto s = sample_dual_boundary(sq, 4);
    ASSERT_EQ(s.points.size(), 4u);
    Vec2 expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int k = 0; k < 4; ++k)
    {
        EXPECT_NEAR(s.points[k].x, expected[k].x, 1e-14);
        EXPECT_NEAR(s.points[k].y, expected[k].y, 1e-14);
        for (auto v : square_vertices())
            EXPECT_LE(dot(s.points[k], v), 1 + 1e-14);
    }
}

TEST(ConvexGauge, sampled_gauge_is_lower_bound)
{
    std::mt19937_64 rng(3);
    for (auto const& body : reference_bodies())
    {
        auto s = sample_dual_boundary(body, 64);
        for (int n = 0; n < 1000; ++n)
        {
            Vec2 xi = random_vector(rng, 0.01, 100);
            EXPECT_LE(sampled_gauge(s, xi), body.gauge(xi) * (1 + 1e-12));
        }
    }
}

TEST(ConvexGauge, parallel_set_examples)
{
    auto ball = ConvexBody::euclidean_ball(1);
    EXPECT_TRUE(parallel_set_membership(ball, 0.5, {1.4, 0}));
    EXPECT_FALSE(parallel_set_membership(ball, 0.5, {1.6, 0}));
    for (auto const& body : reference_bodies())
        EXPECT_TRUE(parallel_set_membership(body, 0, {0, 0}));
}

TEST(ConvexGauge, gradient_matches_finite_differences)
{
    std::mt19937_64 rng(5);
    for (auto const& body : reference_bodies())
    {
        for (int n = 0; n < 200; ++n)
        {
            Vec2 xi = random_vector(rng, 0.5, 5);
            if (body.kink_gap(xi) < 1e-3)
                continue;
            double h = 1e-6 * norm(xi);
            Vec2 g = body.gauge_gradient(xi);
            double gx = (body.gauge(xi + Vec2{h, 0}) - body.gauge(xi - Vec2{h, 0}))
                        / (2 * h);
            double gy = (body.gauge(xi + Vec2{0, h}) - body.gauge(xi - Vec2{0, h}))
                        / (2 * h);
            EXPECT_NEAR(g.x, gx, 1e-6);
            EXPECT_NEAR(g.y, gy, 1e-6);
        }
    }
}

TEST(ConvexGauge, axiom_suite_passes_on_reference_bodies)
{
    for (auto const& body : reference_bodies())
    {
        auto suite = gauge_axiom_suite(body, 42, 2000);
        for (auto const& c : suite.checks)
            EXPECT_TRUE(c.passed()) << body.describe() << " " << c.name
                                    << " worst " << c.worst;
    }
}

}  // namespace
}  // namespace gaugeflow
