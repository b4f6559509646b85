#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapgrp/matrix.hpp"

namespace mapgrp {

/**
 * @brief Immutable scalar expression tree.
 *
 * Nodes: complex literal, variable, + - * /, integer power, unary minus and
 * scalar exp. Evaluating a division whose denominator vanishes raises an
 * EvaluationError (pole).
 */
class Expr {
public:
    enum class Op { literal, variable, add, sub, mul, div, pow, neg, exp };

    static Expr literal(cplx value);
    static Expr variable(std::size_t index, std::string name);
    static Expr binary(Op op, Expr lhs, Expr rhs);
    static Expr power(Expr base, int exponent);
    static Expr negate(Expr arg);
    static Expr exp(Expr arg);

    Op op() const noexcept { return node_->op; }
    cplx evaluate(std::span<const cplx> vars) const;
    /// Fully parenthesized text that parses back to the same tree.
    std::string to_string() const;
    /// True if the tree contains a division node.
    bool has_division() const;

private:
    struct Node {
        Op op;
        cplx value{};
        std::size_t var = 0;
        std::string name;
        int exponent = 0;
        std::shared_ptr<const Node> lhs, rhs;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static cplx eval_node(const Node& n, std::span<const cplx> vars);
    static void print_node(const Node& n, std::string& out);
    static bool division_node(const Node& n);

    std::shared_ptr<const Node> node_;
};

/// n x n matrix of scalar expressions over a fixed variable list.
class MatrixExpr {
public:
    MatrixExpr(std::size_t n, std::vector<Expr> entries, std::vector<std::string> variables);

    std::size_t size() const noexcept { return n_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const Expr& entry(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    Matrix evaluate(std::span<const cplx> vars) const;
    /// Convenience for single-variable expressions.
    Matrix evaluate(cplx value) const { return evaluate(std::span<const cplx>(&value, 1)); }
    std::string to_string() const;

private:
    std::size_t n_;
    std::vector<Expr> entries_;
    std::vector<std::string> variables_;
};

/**
 * Parses a scalar expression or a square matrix literal.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := '-' factor | base ('^' integer)?
 *   base   := number | 'i' | 'pi' | variable | '(' expr ')' | 'exp(' expr ')'
 *   matrix := '[' row (',' row)* ']'  ;  row := '[' expr (',' expr)* ']'
 *
 * A bare scalar expression yields a 1 x 1 matrix. Errors carry line and column.
 */
MatrixExpr parse_expr(std::string_view text, const std::vector<std::string>& variables);

} // namespace mapgrp
