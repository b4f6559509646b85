#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mapgrp/calculus.hpp"
#include "mapgrp/errors.hpp"
#include "mapgrp/monodromy.hpp"

using namespace mapgrp;

namespace {
const double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

const GroupDescriptor sl2 = GroupDescriptor::special_linear(2);
const Domain unit = Domain::interval(0.0, 1.0);

BasedMapElement interval_element(const std::string& text, int steps = 64)
{
    return BasedMapElement(sl2, OneForm::parse(unit, text), 0.0, Integrability::verified, {steps, false, {}});
}

FullMapElement full(const BasedMapElement& b, const Matrix& k) { return {GroupElement(b.group(), k), b}; }
} // namespace

TEST_CASE("zero form is the identity element")
{
    const auto a = interval_element("[[t, 1], [t^2, -t]]");
    const auto e = identity_element(sl2, unit, 0.0);
    for (double t : {0.2, 0.7}) {
        CHECK(distance(multiply(a, e).form()(t, 1.0), a.form()(t, 1.0)) < 1e-15);
        CHECK(distance(multiply(e, a).form()(t, 1.0), a.form()(t, 1.0)) < 1e-15);
        CHECK(frobenius_norm(inverse(e).form()(t, 1.0)) == 0.0);
    }
}

TEST_CASE("Evol is a homomorphism for the dressed product")
{
    const auto a = interval_element("[[0.3*t, 0.5], [-0.4*t^2, -0.3*t]]");
    const auto b = interval_element("[[0.2, 0.1 - 0.3*t], [0.6*t, -0.2]]");
    const auto ab = multiply(a, b);
    const auto a_inv = inverse(a);
    const auto a_ainv = multiply(a, a_inv);
    for (int k = 1; k <= 10; ++k) {
        const double m = k / 10.0;
        CHECK(distance(ab.evol_at(m), a.evol_at(m) * b.evol_at(m)) < 1e-6);
        CHECK(frobenius_norm(a_ainv.form()(m, 1.0)) < 1e-6);
    }
}

TEST_CASE("abelian products add")
{
    const auto cstar = GroupDescriptor::c_star();
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const BasedMapElement a(cstar, OneForm::parse(plane, "2/z"), 1.0);
    const BasedMapElement b(cstar, OneForm::parse(plane, "z + 1"), 1.0);
    const auto ab = multiply(a, b);
    const auto ai = inverse(a);
    for (cplx m : {cplx(0.5, 0.5), cplx(-2.0, 1.0)}) {
        CHECK(distance(ab.form()(m, 1.0), a.form()(m, 1.0) + b.form()(m, 1.0)) < 1e-12);
        CHECK(distance(ai.form()(m, 1.0), -1.0 * a.form()(m, 1.0)) == 0.0);
    }
}

TEST_CASE("evaluation of an integrable form on the punctured plane")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto gl2 = GroupDescriptor::general_linear(2);
    const BasedMapElement raw(gl2, OneForm::parse(plane, "[[1/z, 0], [0, 2/z]]"), 1.0);
    const FullMapElement f{GroupElement::identity(gl2), raw};
    CHECK_THROWS_AS(evaluate(f, 2.0), Error);
    const FullMapElement g{GroupElement::identity(gl2), verify_integrability(raw)};
    REQUIRE(g.based.status() == Integrability::verified);
    for (cplx z : {cplx(2.0), cplx(-1.5, 0.5), cplx(0.0, -3.0)}) {
        const Matrix want = Matrix::diagonal(std::vector<cplx>{z, z * z});
        CHECK(distance(evaluate(g, z).matrix(), want) < 1e-8);
    }
}

TEST_CASE("path dependence surfaces as ambiguity")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto gl1 = GroupDescriptor::general_linear(1);
    const BasedMapElement half(gl1, OneForm::parse(plane, "0.5/z"), 1.0);
    const FullMapElement f{GroupElement::identity(gl1), verify_integrability(half)};
    CHECK(f.based.status() == Integrability::unverified);
    try {
        evaluate(f, 1.0);
        FAIL("expected ambiguity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ambiguity);
        CHECK(exit_code_for(e.kind()) == 4);
    }
    const auto loop = canonical_loop_basis(plane).loops[0];
    CHECK(std::abs(evaluate(f, 1.0, loop).matrix()(0, 0) - cplx(-1.0)) < 1e-10);
}

TEST_CASE("semidirect product reproduces pointwise products")
{
    const auto a = interval_element("[[0.2*t, 0.4], [0.1, -0.2*t]]");
    const auto b = interval_element("[[0, 0.3*t], [0.5, 0]]");
    const Matrix k1{{1.0, 0.5}, {0.0, 1.0}};
    const Matrix k2{{2.0, 0.0}, {1.0, 0.5}};
    const FullMapElement f = full(a, k1), g = full(b, k2);
    const FullMapElement fg = multiply(f, g);
    for (double m : {0.25, 0.5, 1.0})
        CHECK(distance(evaluate(fg, m).matrix(), evaluate(f, m).matrix() * evaluate(g, m).matrix()) < 1e-6);
}

TEST_CASE("logarithmic derivative from samples")
{
    const Matrix x{{0.3, 1.0}, {-0.5, -0.3}};
    SUBCASE("constant map")
    {
        const auto s = sample_map(unit, sl2, [&](Point) { return mat_exp(x); }, 11);
        CHECK(frobenius_norm(log_derivative_from_samples(s)(0.37, 1.0)) < 1e-14);
    }
    SUBCASE("one-parameter subgroup")
    {
        const auto s = sample_map(unit, sl2, [&](Point t) { return mat_exp(t.real() * x); }, 1001);
        const OneForm d = log_derivative_from_samples(s);
        for (double t : {0.0, 0.3, 1.0})
            CHECK(distance(d(t, 1.0), x) < 1e-9);
    }
    SUBCASE("coarse samples are rejected")
    {
        const auto s = sample_map(unit, sl2, [&](Point t) { return mat_exp(10.0 * t.real() * x); }, 5);
        try {
            log_derivative_from_samples(s);
            FAIL("expected sampling-resolution error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::sampling_resolution);
        }
    }
}

TEST_CASE("cocycle residual")
{
    const Matrix e{{0.0, 1.0}, {0.0, 0.0}};
    const Matrix h{{0.5, 0.0}, {0.3, -0.5}};
    auto f1 = [&](Point t) { return mat_exp(t.real() * e) * mat_exp(std::sin(t.real()) * h); };
    auto f2 = [&](Point t) { return mat_exp(t.real() * t.real() * h + t.real() * e); };
    const auto s1 = sample_map(unit, sl2, f1, 1001);
    const auto s2 = sample_map(unit, sl2, f2, 1001);
    CHECK(cocycle_residual(s1, s2) < 1e-4);
    const auto one = sample_map(unit, sl2, [](Point) { return Matrix::identity(2); }, 1001);
    CHECK(cocycle_residual(s1, one) < 1e-12);
}

TEST_CASE("pointwise exp and local log")
{
    const auto xi = parse_expr("[[0.1*z, 0.2], [0.1*z^2, -0.1*z]]", {"z"});
    std::vector<Point> pts{0.0, cplx(0.5, 0.5), cplx(-1.0, 0.3)};
    const auto f = pointwise_exp(xi, pts);
    const auto back = pointwise_log_lift(f);
    for (std::size_t k = 0; k < pts.size(); ++k)
        CHECK(distance(back[k], xi.evaluate(pts[k])) < 1e-12);
    try {
        pointwise_log_lift({Matrix{{-1.0, 1.0}, {0.0, -1.0}}});
        FAIL("expected branch cut");
    } catch (const Error& e2) {
        CHECK(e2.kind() == ErrorKind::branch_cut);
    }
}
