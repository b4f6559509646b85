#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/evolution.hpp"
#include "mapgrp/forms.hpp"

using namespace mapgrp;

namespace {
const cplx I(0.0, 1.0);

AlgebraPath noncommuting()
{
    AlgebraPath xi;
    xi.dim = 2;
    xi.value = [](double t) {
        return Matrix{{cplx(std::sin(3.0 * t), 0.0), cplx(1.0 + t * t, 0.0)},
                      {cplx(std::cos(2.0 * t), 0.5), cplx(-std::sin(3.0 * t), 0.0)}};
    };
    return xi;
}
} // namespace

TEST_CASE("constant generator gives the matrix exponential")
{
    const Matrix x{{0.3, 1.0}, {-0.7, -0.3}};
    const auto r = evol(GroupDescriptor::special_linear(2), constant_algebra_path(x), {16, true, {}});
    CHECK(distance(r.final.matrix(), mat_exp(x)) < 1e-13);
    CHECK(r.error_estimate < 1e-13);
}

TEST_CASE("two-point Magnus has order four")
{
    const AlgebraPath xi = noncommuting();
    const Matrix ref = evol_matrix(xi, 4096);
    double prev = distance(evol_matrix(xi, 4), ref);
    for (int steps : {8, 16, 32}) {
        const double err = distance(evol_matrix(xi, steps), ref);
        const double factor = prev / err;
        CHECK(factor > 12.0);
        CHECK(factor < 20.0);
        prev = err;
    }
}

TEST_CASE("dense output and error estimate")
{
    const AlgebraPath xi = noncommuting();
    const auto r = evol_dense(GroupDescriptor::general_linear(2), xi, 4, {64, true, 1e-6});
    REQUIRE(r.dense.size() == 5);
    CHECK(r.dense.front().second.distance_to_identity() == 0.0);
    CHECK(distance(r.dense.back().second.matrix(), r.final.matrix()) < 1e-14);
    CHECK(r.error_estimate < 1e-7);
    CHECK(r.within_report_tol);
}

TEST_CASE("tangent at zero reproduces the integral")
{
    CHECK(tangent_at_zero_check(GroupDescriptor::general_linear(2), noncommuting()) < 1e-5);
}

TEST_CASE("abelian targets integrate directly")
{
    const auto cstar = GroupDescriptor::c_star();
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const OneForm alpha = OneForm::parse(plane, "3/z");
    const Path loop = Path::arc(0.0, 1.0, 0.0, 2.0 * std::numbers::pi);
    const GroupElement g = transport(cstar, alpha, loop);
    CHECK(g.distance_to_identity() < 1e-10);
}

TEST_CASE("poles on the path are reported with the parameter")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const OneForm alpha = OneForm::parse(plane, "1/z");
    try {
        transport(GroupDescriptor::general_linear(1), alpha, Path::segment(1.0, -1.0));
        FAIL("expected evaluation error");
    } catch (const EvaluationError& e) {
        REQUIRE(e.parameter());
        CHECK(*e.parameter() == doctest::Approx(0.5));
    }
}

TEST_CASE("A dz/z around the unit circle")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const OneForm alpha = OneForm::parse(plane, "[[0, 1/z], [0, 0]]");
    const auto basis = canonical_loop_basis(plane);
    const GroupElement per = transport(GroupDescriptor::special_linear(2), alpha, basis.loops[0]);
    const Matrix want{{1.0, 2.0 * std::numbers::pi * I}, {0.0, 1.0}};
    CHECK(distance(per.matrix(), want) < 1e-10);
}

TEST_CASE("Maurer-Cartan residual")
{
    const Domain chart = Domain::chart(-1.0, 1.0, -1.0, 1.0);
    SUBCASE("x dy X is not flat")
    {
        const OneForm alpha = OneForm::parse_chart(chart, "[[0,0],[0,0]]", "[[0,x],[0,0]]");
        CHECK(mc_residual(alpha, 21, 21) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(mc_residual_serial(alpha, 21, 21) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("1-D forms have zero residual")
    {
        const OneForm beta = OneForm::parse(Domain::interval(0.0, 1.0), "[[t,1],[0,-t]]");
        CHECK(mc_residual(beta, 5, 5) == 0.0);
    }
}

TEST_CASE("Behnke-Stein forms are dual to the loop basis")
{
    const Domain plane = Domain::punctured_plane({cplx(0.5, 0.5), cplx(-1.0, 0.2), cplx(0.3, -1.4)}, 2.0);
    const auto beta = behnke_stein_basis(plane);
    const auto basis = canonical_loop_basis(plane);
    const auto d = duality_matrix(beta, basis.loops);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            CHECK(std::abs(d[i][j] - (i == j ? 1.0 : 0.0)) < 1e-10);
}
