//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_gmaps.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gaugeflow/errors.hpp"
#include "gaugeflow/gmaps.hpp"
#include "gaugeflow/properties.hpp"

namespace gaugeflow
{
namespace
{
ConvexBody square()
{
    return ConvexBody::polytope({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
}

TEST(GDelta, examples)
{
    GDeltaMap g(ConvexBody::euclidean_ball(1), 0);
    Vec2 v = g({2, 0});
    EXPECT_DOUBLE_EQ(v.x, 1);
    EXPECT_DOUBLE_EQ(v.y, 0);

    GDeltaMap gs(square(), 0.5);
    Vec2 w = gs({3, 0});
    EXPECT_NEAR(w.x, 1.5, 1e-14);
    EXPECT_EQ(w.y, 0);

    Vec2 zero = gs({1.2, 1.4});
    EXPECT_EQ(zero.x, 0);
    EXPECT_EQ(zero.y, 0);
    EXPECT_EQ(gs({0, 0}).x, 0);
}

TEST(GDelta, bound_examples)
{
    EXPECT_DOUBLE_EQ(GDeltaMap(ConvexBody::euclidean_ball(1), 0.3)
                         .lipschitz_forward_bound(),
                     3);
    EXPECT_DOUBLE_EQ(GDeltaMap(ConvexBody::euclidean_ball(1), 1)
                         .lipschitz_inverse_bound(),
                     6);
    EXPECT_NEAR(GDeltaMap(square(), 0.5).lipschitz_forward_bound(), 6, 1e-13);
    EXPECT_THROW(GDeltaMap(square(), 0).lipschitz_inverse_bound(),
                 ParameterError);
}

TEST(GDelta, collapse_gap_attains_outer_radius_bound)
{
    // Along the direction of a farthest vertex |ξ| = R_E gauge(ξ), so the
    // gap δ|ξ|/gauge(ξ) equals δ R_E exactly once gauge(ξ) ≥ 1 + δ.
    auto sq = square();
    double delta = 0.25;
    GDeltaMap gd(sq, delta), g0(sq, 0);
    Vec2 xi{3, 3};
    double gap = norm(gd(xi) - g0(xi));
    EXPECT_NEAR(gap, gd.sharp_collapse_bound(), 1e-14);
    EXPECT_GT(gap, gd.collapse_bound());

    GDeltaMap ball(ConvexBody::euclidean_ball(1), delta);
    GDeltaMap ball0(ConvexBody::euclidean_ball(1), 0);
    EXPECT_NEAR(norm(ball({0, 4}) - ball0({0, 4})), ball.collapse_bound(), 1e-14);
}

TEST(GDelta, suite_on_ball_passes)
{
    double const deltas[] = {0.1, 0.5, 1};
    auto suite = gdelta_suite(ConvexBody::euclidean_ball(1), deltas, 42, 2000);
    for (auto const& c : suite.checks)
        EXPECT_TRUE(c.passed()) << c.name << " worst " << c.worst;
}

TEST(GDelta, lipschitz_checks_pass_for_every_body)
{
    double const deltas[] = {0.1, 0.5, 1};
    for (auto const& body : reference_bodies())
    {
        auto suite = gdelta_suite(body, deltas, 42, 2000);
        for (auto const& c : suite.checks)
        {
            if (c.name.rfind("collapse[", 0) == 0)
                continue;
            EXPECT_TRUE(c.passed()) << body.describe() << " " << c.name;
        }
    }
}

}  // namespace
}  // namespace gaugeflow
