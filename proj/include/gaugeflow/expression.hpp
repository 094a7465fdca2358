//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/expression.hpp
//! \brief Closed-form scalar expressions in (x, y, t).
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gaugeflow
{
//---------------------------------------------------------------------------//
/*!
 * Arithmetic expression over the variables \c x, \c y, \c t.
 *
 * Supports + - * / ^ (right associative), unary minus, parentheses, the
 * constants \c pi and \c e, and the functions sin, cos, tan, tanh, exp, log,
 * sqrt, abs (one argument) and min, max (two arguments).
 *
 * The expression is compiled once into a postfix program; evaluation is
 * reentrant.
 */
class Expression
{
  public:
    //! Zero expression
    Expression();

    //! Parse; throws ParameterError with the failing column on bad input
    explicit Expression(std::string_view source);

    static Expression constant(double value);

    double operator()(double x, double y, double t) const;

    std::string const& source() const { return source_; }

    //! True when the program has no variable references
    bool is_constant() const;
    bool depends_on_time() const;

  private:
    enum class Op : unsigned char
    {
        push,
        var_x,
        var_y,
        var_t,
        add,
        sub,
        mul,
        div,
        pow,
        neg,
        sin,
        cos,
        tan,
        tanh,
        exp,
        log,
        sqrt,
        abs,
        min,
        max
    };

    struct Instr
    {
        Op op;
        double value{0};
    };

    class Parser;

    std::string source_;
    std::vector<Instr> program_;
    int max_depth_{1};
};

}  // namespace gaugeflow
