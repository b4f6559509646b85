#include <doctest.h>

#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/expr.hpp"

using namespace mapgrp;

TEST_CASE("scalar expressions")
{
    const auto e = parse_expr("2*z^2 - 3/z + exp(i*pi)", {"z"});
    const cplx z(1.0, 1.0);
    CHECK(std::abs(e.evaluate(z)(0, 0) - (2.0 * z * z - 3.0 / z - 1.0)) < 1e-14);
    CHECK(std::abs(parse_expr("-z^2", {"z"}).evaluate(3.0)(0, 0) - cplx(-9.0)) < 1e-15);
    CHECK(std::abs(parse_expr("1.5e1 + .5", {}).evaluate(std::span<const cplx>())(0, 0) - cplx(15.5)) < 1e-15);
}

TEST_CASE("matrix literals")
{
    const auto m = parse_expr("[[1/z, 0], [0, 2/z]]", {"z"});
    CHECK(m.size() == 2);
    const Matrix v = m.evaluate(2.0);
    CHECK(std::abs(v(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(v(1, 1) - 1.0) < 1e-15);
    CHECK_THROWS_AS(parse_expr("[[1, 2], [3]]", {"z"}), ParseError);
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_expr("1 + \n  foo(z)", {"z"});
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_expr("(z + 1", {"z"}), ParseError);
    CHECK_THROWS_AS(parse_expr("z^x", {"z"}), ParseError);
}

TEST_CASE("poles raise evaluation errors")
{
    const auto e = parse_expr("1/z", {"z"});
    CHECK_THROWS_AS(e.evaluate(0.0), EvaluationError);
    CHECK_THROWS_AS(parse_expr("z^-2", {"z"}).evaluate(0.0), EvaluationError);
}

TEST_CASE("printing round-trips")
{
    const auto e = parse_expr("[[exp(i*pi*z), z*(1 - 2.5e-3)], [0, -z^-2]]", {"z"});
    const auto again = parse_expr(e.to_string(), {"z"});
    const cplx z(0.3, -0.7);
    CHECK(distance(e.evaluate(z), again.evaluate(z)) == 0.0);
}
