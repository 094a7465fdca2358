//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_expression.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gaugeflow/errors.hpp"
#include "gaugeflow/expression.hpp"

namespace gaugeflow
{
namespace
{
TEST(Expression, arithmetic_and_precedence)
{
    EXPECT_DOUBLE_EQ(Expression("1 + 2*3")(0, 0, 0), 7);
    EXPECT_DOUBLE_EQ(Expression("2^3^2")(0, 0, 0), 512);
    EXPECT_DOUBLE_EQ(Expression("-2^2")(0, 0, 0), -4);
    EXPECT_DOUBLE_EQ(Expression("(1 - 4) / 2")(0, 0, 0), -1.5);
}

TEST(Expression, variables_and_functions)
{
    Expression e("2*sin(x)*sin(y) + exp(-t) + max(x, y) - abs(min(-1, t))");
    double x = 0.3, y = 1.1, t = 0.2;
    double expected = 2 * std::sin(x) * std::sin(y) + std::exp(-t) + 1.1 - 1;
    EXPECT_DOUBLE_EQ(e(x, y, t), expected);
    EXPECT_TRUE(e.depends_on_time());
    EXPECT_FALSE(Expression("x + y").depends_on_time());
    EXPECT_NEAR(Expression("cos(pi)")(0, 0, 0), -1, 1e-15);
    EXPECT_NEAR(Expression("log(e)")(0, 0, 0), 1, 1e-15);
    EXPECT_TRUE(Expression("3*2").is_constant());
}

TEST(Expression, parse_errors)
{
    EXPECT_THROW(Expression("1 +"), ParameterError);
    EXPECT_THROW(Expression("sin(x"), ParameterError);
    EXPECT_THROW(Expression("foo(x)"), ParameterError);
    EXPECT_THROW(Expression("max(1)"), ParameterError);
    EXPECT_THROW(Expression("z"), ParameterError);
}

}  // namespace
}  // namespace gaugeflow
