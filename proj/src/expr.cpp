#include "mapgrp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mapgrp/errors.hpp"

namespace mapgrp {

// ---------------------------------------------------------------- Expr

Expr Expr::literal(cplx value)
{
    auto n = std::make_shared<Node>();
    n->op = Op::literal;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index, std::string name)
{
    auto n = std::make_shared<Node>();
    n->op = Op::variable;
    n->var = index;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent)
{
    auto n = std::make_shared<Node>();
    n->op = Op::pow;
    n->exponent = exponent;
    n->lhs = std::move(base.node_);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr arg)
{
    auto n = std::make_shared<Node>();
    n->op = Op::neg;
    n->lhs = std::move(arg.node_);
    return Expr(std::move(n));
}

Expr Expr::exp(Expr arg)
{
    auto n = std::make_shared<Node>();
    n->op = Op::exp;
    n->lhs = std::move(arg.node_);
    return Expr(std::move(n));
}

cplx Expr::eval_node(const Node& n, std::span<const cplx> vars)
{
    switch (n.op) {
    case Op::literal:
        return n.value;
    case Op::variable:
        return vars[n.var];
    case Op::add:
        return eval_node(*n.lhs, vars) + eval_node(*n.rhs, vars);
    case Op::sub:
        return eval_node(*n.lhs, vars) - eval_node(*n.rhs, vars);
    case Op::mul:
        return eval_node(*n.lhs, vars) * eval_node(*n.rhs, vars);
    case Op::div: {
        const cplx den = eval_node(*n.rhs, vars);
        if (den == 0.0)
            throw EvaluationError("expression: division by zero (pole)");
        return eval_node(*n.lhs, vars) / den;
    }
    case Op::pow: {
        const cplx b = eval_node(*n.lhs, vars);
        if (n.exponent < 0 && b == 0.0)
            throw EvaluationError("expression: negative power of zero (pole)");
        cplx r = 1.0;
        cplx f = n.exponent < 0 ? 1.0 / b : b;
        for (unsigned e = unsigned(std::abs(n.exponent)); e; e >>= 1) {
            if (e & 1u)
                r *= f;
            f *= f;
        }
        return r;
    }
    case Op::neg:
        return -eval_node(*n.lhs, vars);
    case Op::exp:
        return std::exp(eval_node(*n.lhs, vars));
    }
    return 0.0;
}

cplx Expr::evaluate(std::span<const cplx> vars) const
{
    const cplx v = eval_node(*node_, vars);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("expression: non-finite value");
    return v;
}

namespace {
std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace

void Expr::print_node(const Node& n, std::string& out)
{
    auto wrap_binary = [&](char op) {
        out += '(';
        print_node(*n.lhs, out);
        out += op;
        print_node(*n.rhs, out);
        out += ')';
    };
    switch (n.op) {
    case Op::literal:
        if (n.value.imag() == 0.0)
            out += format_real(n.value.real());
        else if (n.value == cplx(0.0, 1.0))
            out += "i";
        else
            out += "(" + format_real(n.value.real()) + "+" + format_real(n.value.imag()) + "*i)";
        return;
    case Op::variable:
        out += n.name;
        return;
    case Op::add: wrap_binary('+'); return;
    case Op::sub: wrap_binary('-'); return;
    case Op::mul: wrap_binary('*'); return;
    case Op::div: wrap_binary('/'); return;
    case Op::pow:
        out += '(';
        print_node(*n.lhs, out);
        out += ")^" + std::to_string(n.exponent);
        return;
    case Op::neg:
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
        return;
    case Op::exp:
        out += "exp(";
        print_node(*n.lhs, out);
        out += ')';
        return;
    }
}

std::string Expr::to_string() const
{
    std::string out;
    print_node(*node_, out);
    return out;
}

bool Expr::division_node(const Node& n)
{
    if (n.op == Op::div || (n.op == Op::pow && n.exponent < 0))
        return true;
    return (n.lhs && division_node(*n.lhs)) || (n.rhs && division_node(*n.rhs));
}

bool Expr::has_division() const { return division_node(*node_); }

// ---------------------------------------------------------------- MatrixExpr

MatrixExpr::MatrixExpr(std::size_t n, std::vector<Expr> entries, std::vector<std::string> variables)
    : n_(n), entries_(std::move(entries)), variables_(std::move(variables))
{
    if (entries_.size() != n_ * n_)
        throw_invalid("MatrixExpr: entry count does not match dimension");
}

Matrix MatrixExpr::evaluate(std::span<const cplx> vars) const
{
    if (vars.size() != variables_.size())
        throw_invalid("MatrixExpr::evaluate: expected " + std::to_string(variables_.size()) + " variable values");
    Matrix m(n_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m.entries()[k] = entries_[k].evaluate(vars);
    return m;
}

std::string MatrixExpr::to_string() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < n_; ++j) {
            if (j)
                out += ',';
            out += entry(i, j).to_string();
        }
        out += ']';
    }
    return out + "]";
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    MatrixExpr parse()
    {
        skip_ws();
        std::vector<Expr> entries;
        std::size_t n = 1;
        if (peek() == '[') {
            ++pos_;
            std::vector<std::vector<Expr>> rows;
            do {
                skip_ws();
                rows.push_back(parse_row());
                skip_ws();
            } while (accept(','));
            expect(']');
            n = rows.size();
            for (const auto& row : rows) {
                if (row.size() != n)
                    fail("matrix literal is not square");
                entries.insert(entries.end(), row.begin(), row.end());
            }
        } else {
            entries.push_back(parse_expr());
        }
        skip_ws();
        if (pos_ != text_.size())
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        return MatrixExpr(n, std::move(entries), vars_);
    }

private:
    std::vector<Expr> parse_row()
    {
        expect('[');
        std::vector<Expr> row;
        do {
            row.push_back(parse_expr());
            skip_ws();
        } while (accept(','));
        expect(']');
        return row;
    }

    Expr parse_expr()
    {
        skip_ws();
        accept('+');
        Expr lhs = parse_term();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-')
                break;
            ++pos_;
            Expr rhs = parse_term();
            lhs = Expr::binary(c == '+' ? Expr::Op::add : Expr::Op::sub, lhs, rhs);
        }
        return lhs;
    }

    Expr parse_term()
    {
        Expr lhs = parse_factor();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '*' && c != '/')
                break;
            ++pos_;
            Expr rhs = parse_factor();
            lhs = Expr::binary(c == '*' ? Expr::Op::mul : Expr::Op::div, lhs, rhs);
        }
        return lhs;
    }

    Expr parse_factor()
    {
        skip_ws();
        if (accept('-'))
            return Expr::negate(parse_factor());
        Expr base = parse_base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool negative = false;
            if (accept('-'))
                negative = true;
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected integer exponent");
            int e = 0;
            std::from_chars(text_.data() + start, text_.data() + pos_, e);
            base = Expr::power(base, negative ? -e : e);
        }
        return base;
    }

    Expr parse_base()
    {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string ident(text_.substr(start, pos_ - start));
            for (std::size_t k = 0; k < vars_.size(); ++k)
                if (vars_[k] == ident)
                    return Expr::variable(k, ident);
            if (ident == "i")
                return Expr::literal(cplx(0.0, 1.0));
            if (ident == "pi")
                return Expr::literal(std::numbers::pi);
            if (ident == "exp") {
                skip_ws();
                expect('(');
                Expr arg = parse_expr();
                skip_ws();
                expect(')');
                return Expr::exp(arg);
            }
            pos_ = start;
            fail("unknown identifier '" + ident + "'");
        }
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        };
        digits();
        if (accept('.'))
            digits();
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-')
                ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek())))
                digits();
            else
                pos_ = save;
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::literal(value);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        int line = 1, col = 1;
        for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
            if (text_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace

MatrixExpr parse_expr(std::string_view text, const std::vector<std::string>& variables)
{
    return Parser(text, variables).parse();
}

} // namespace mapgrp
