//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/expression.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
class Expression::Parser
{
  public:
    Parser(std::string_view src, std::vector<Instr>& out)
        : src_(src), out_(out)
    {
    }

    void parse()
    {
        this->expr();
        this->skip_ws();
        if (pos_ != src_.size())
        {
            this->fail("unexpected character");
        }
    }

  private:
    std::string_view src_;
    std::vector<Instr>& out_;
    std::size_t pos_{0};

    [[noreturn]] void fail(std::string const& msg) const
    {
        throw ParameterError("expression '" + std::string(src_)
                             + "': " + msg + " at column "
                             + std::to_string(pos_ + 1));
    }

    void skip_ws()
    {
        while (pos_ < src_.size()
               && std::isspace(static_cast<unsigned char>(src_[pos_])))
        {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        this->skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!this->accept(c))
        {
            this->fail(std::string("expected '") + c + "'");
        }
    }

    void emit(Op op, double v = 0) { out_.push_back({op, v}); }

    void expr()
    {
        this->term();
        for (;;)
        {
            if (this->accept('+'))
            {
                this->term();
                this->emit(Op::add);
            }
            else if (this->accept('-'))
            {
                this->term();
                this->emit(Op::sub);
            }
            else
            {
                return;
            }
        }
    }

    void term()
    {
        this->unary();
        for (;;)
        {
            if (this->accept('*'))
            {
                this->unary();
                this->emit(Op::mul);
            }
            else if (this->accept('/'))
            {
                this->unary();
                this->emit(Op::div);
            }
            else
            {
                return;
            }
        }
    }

    void unary()
    {
        if (this->accept('-'))
        {
            this->unary();
            this->emit(Op::neg);
        }
        else if (this->accept('+'))
        {
            this->unary();
        }
        else
        {
            this->power();
        }
    }

    void power()
    {
        this->primary();
        if (this->accept('^'))
        {
            this->unary();
            this->emit(Op::pow);
        }
    }

    void primary()
    {
        this->skip_ws();
        if (pos_ >= src_.size())
        {
            this->fail("unexpected end of input");
        }
        char const c = src_[pos_];
        if (this->accept('('))
        {
            this->expr();
            this->expect(')');
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
        {
            this->number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            this->identifier();
            return;
        }
        this->fail("unexpected character");
    }

    void number()
    {
        char const* begin = src_.data() + pos_;
        char const* end = src_.data() + src_.size();
        double value = 0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{})
        {
            this->fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - begin);
        this->emit(Op::push, value);
    }

    void identifier()
    {
        std::size_t const start = pos_;
        while (pos_ < src_.size()
               && (std::isalnum(static_cast<unsigned char>(src_[pos_]))
                   || src_[pos_] == '_'))
        {
            ++pos_;
        }
        std::string_view const name = src_.substr(start, pos_ - start);

        if (name == "x")
            return this->emit(Op::var_x);
        if (name == "y")
            return this->emit(Op::var_y);
        if (name == "t")
            return this->emit(Op::var_t);
        if (name == "pi")
            return this->emit(Op::push, std::numbers::pi);
        if (name == "e")
            return this->emit(Op::push, std::numbers::e);

        struct Func
        {
            std::string_view name;
            Op op;
            int arity;
        };
        static constexpr Func funcs[] = {
            {"sin", Op::sin, 1},
            {"cos", Op::cos, 1},
            {"tan", Op::tan, 1},
            {"tanh", Op::tanh, 1},
            {"exp", Op::exp, 1},
            {"log", Op::log, 1},
            {"sqrt", Op::sqrt, 1},
            {"abs", Op::abs, 1},
            {"min", Op::min, 2},
            {"max", Op::max, 2},
        };
        auto it = std::find_if(std::begin(funcs),
                               std::end(funcs),
                               [name](Func const& f) { return f.name == name; });
        if (it == std::end(funcs))
        {
            pos_ = start;
            this->fail("unknown identifier '" + std::string(name) + "'");
        }
        this->expect('(');
        this->expr();
        for (int i = 1; i < it->arity; ++i)
        {
            this->expect(',');
            this->expr();
        }
        this->expect(')');
        this->emit(it->op);
    }
};

//---------------------------------------------------------------------------//
Expression::Expression() : source_("0"), program_{{Op::push, 0.0}} {}

Expression::Expression(std::string_view source) : source_(source)
{
    Parser(source, program_).parse();

    // Stack depth for evaluation
    int depth = 0;
    for (auto const& ins : program_)
    {
        switch (ins.op)
        {
            case Op::push:
            case Op::var_x:
            case Op::var_y:
            case Op::var_t:
                ++depth;
                break;
            case Op::add:
            case Op::sub:
            case Op::mul:
            case Op::div:
            case Op::pow:
            case Op::min:
            case Op::max:
                --depth;
                break;
            default:
                break;
        }
        max_depth_ = std::max(max_depth_, depth);
    }
}

Expression Expression::constant(double value)
{
    Expression result;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    result.source_.assign(buf, ptr);
    result.program_ = {{Op::push, value}};
    return result;
}

bool Expression::is_constant() const
{
    return std::none_of(program_.begin(), program_.end(), [](Instr const& i) {
        return i.op == Op::var_x || i.op == Op::var_y || i.op == Op::var_t;
    });
}

bool Expression::depends_on_time() const
{
    return std::any_of(program_.begin(), program_.end(), [](Instr const& i) {
        return i.op == Op::var_t;
    });
}

//---------------------------------------------------------------------------//
double Expression::operator()(double x, double y, double t) const
{
    constexpr int small_stack = 32;
    double local[small_stack] = {};
    std::vector<double> heap;
    double* stack = local;
    if (max_depth_ > small_stack)
    {
        heap.resize(max_depth_);
        stack = heap.data();
    }

    int top = -1;
    for (auto const& ins : program_)
    {
        switch (ins.op)
        {
            case Op::push:
                stack[++top] = ins.value;
                break;
            case Op::var_x:
                stack[++top] = x;
                break;
            case Op::var_y:
                stack[++top] = y;
                break;
            case Op::var_t:
                stack[++top] = t;
                break;
            case Op::add:
                --top;
                stack[top] += stack[top + 1];
                break;
            case Op::sub:
                --top;
                stack[top] -= stack[top + 1];
                break;
            case Op::mul:
                --top;
                stack[top] *= stack[top + 1];
                break;
            case Op::div:
                --top;
                stack[top] /= stack[top + 1];
                break;
            case Op::pow:
                --top;
                stack[top] = std::pow(stack[top], stack[top + 1]);
                break;
            case Op::min:
                --top;
                stack[top] = std::min(stack[top], stack[top + 1]);
                break;
            case Op::max:
                --top;
                stack[top] = std::max(stack[top], stack[top + 1]);
                break;
            case Op::neg:
                stack[top] = -stack[top];
                break;
            case Op::sin:
                stack[top] = std::sin(stack[top]);
                break;
            case Op::cos:
                stack[top] = std::cos(stack[top]);
                break;
            case Op::tan:
                stack[top] = std::tan(stack[top]);
                break;
            case Op::tanh:
                stack[top] = std::tanh(stack[top]);
                break;
            case Op::exp:
                stack[top] = std::exp(stack[top]);
                break;
            case Op::log:
                stack[top] = std::log(stack[top]);
                break;
            case Op::sqrt:
                stack[top] = std::sqrt(stack[top]);
                break;
            case Op::abs:
                stack[top] = std::abs(stack[top]);
                break;
        }
    }
    return stack[0];
}

}  // namespace gaugeflow
