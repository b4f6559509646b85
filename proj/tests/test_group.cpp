#include <doctest.h>

#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/group.hpp"

using namespace mapgrp;

namespace {
const double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::invalid_argument;
}
} // namespace

TEST_CASE("quotient_reduce picks the nearest coset representative")
{
    const Lattice z2(2, {{1.0, 0.0}, {0.0, 1.0}});
    // (1.5, 3.5) is congruent to (0.5, 1.5); the nearest representative rounds half up.
    const auto r = quotient_reduce(z2, {1.5, 3.5});
    CHECK(std::abs(r[0] - cplx(-0.5)) < 1e-15);
    CHECK(std::abs(r[1] - cplx(-0.5)) < 1e-15);
    const auto c = z2.coordinates({r[0] - 0.5, r[1] - 1.5});
    CHECK(std::abs(c[0] - std::round(c[0])) < 1e-15);
    CHECK(std::abs(c[1] - std::round(c[1])) < 1e-15);

    const Lattice twopii(1, {{2.0 * pi * I}});
    const auto w = quotient_reduce(twopii, {cplx(0.3, 7.2 * pi)});
    CHECK(std::abs(w[0] - cplx(0.3, -0.8 * pi)) < 1e-12);
}

TEST_CASE("lattice generators must be independent")
{
    CHECK(kind_of([] { Lattice(1, {{1.0}, {2.0}}); }) == ErrorKind::invalid_argument);
    CHECK_NOTHROW(Lattice(1, {{1.0}, {I}}));
}

TEST_CASE("algebra membership per group")
{
    const auto sl2 = GroupDescriptor::special_linear(2);
    CHECK(sl2.in_algebra(Matrix{{1.0, 2.0}, {3.0, -1.0}}));
    CHECK_FALSE(sl2.in_algebra(Matrix{{1.0, 0.0}, {0.0, 0.0}}));
    const auto glr = GroupDescriptor::general_linear(2, Field::real);
    CHECK_FALSE(glr.in_algebra(Matrix{{I, 0.0}, {0.0, 0.0}}));
    const auto cstar = GroupDescriptor::c_star();
    CHECK(cstar.in_algebra(Matrix::scalar(cplx(1.0, 2.0))));
}

TEST_CASE("group elements validate membership")
{
    const auto sl2 = GroupDescriptor::special_linear(2);
    CHECK(kind_of([&] { GroupElement(sl2, Matrix{{2.0, 0.0}, {0.0, 2.0}}); }) == ErrorKind::invalid_argument);
    const GroupElement g(sl2, Matrix{{2.0, 1.0}, {1.0, 1.0}});
    CHECK(group_distance(group_multiply(g, group_inverse(g)), GroupElement::identity(sl2)) < 1e-14);
}

TEST_CASE("abelian elements reduce modulo the lattice")
{
    const auto cstar = GroupDescriptor::c_star();
    const GroupElement a(cstar, Matrix::scalar(cplx(0.0, 2.0 * pi + 0.1)));
    CHECK(a.distance_to_identity() < 0.1 + 1e-12);
    const GroupElement b = exp_to_group(cstar, Matrix::scalar(cplx(0.0, -2.0 * pi)));
    CHECK(b.distance_to_identity() < 1e-12);
}

TEST_CASE("SL2 exponential image")
{
    const auto sl2 = GroupDescriptor::special_linear(2);
    SUBCASE("-[[1,1],[0,1]] is not an exponential")
    {
        const auto r = is_in_exp_image(GroupElement(sl2, Matrix{{-1.0, -1.0}, {0.0, -1.0}}));
        CHECK_FALSE(r.in_image);
    }
    SUBCASE("-I is exp(diag(i pi, -i pi))")
    {
        const auto r = is_in_exp_image(GroupElement(sl2, -1.0 * Matrix::identity(2)));
        REQUIRE(r.in_image);
        CHECK(distance(mat_exp(*r.witness), -1.0 * Matrix::identity(2)) < 1e-12);
    }
    SUBCASE("generic element has a traceless witness")
    {
        const Matrix g{{2.0, 1.0}, {3.0, 2.0}};
        const auto r = is_in_exp_image(GroupElement(sl2, g));
        REQUIRE(r.in_image);
        CHECK(std::abs(trace(*r.witness)) < 1e-12);
        CHECK(distance(mat_exp(*r.witness), g) < 1e-10);
    }
    SUBCASE("unipotent element")
    {
        const Matrix g{{1.0, 5.0}, {0.0, 1.0}};
        const auto r = is_in_exp_image(GroupElement(sl2, g));
        REQUIRE(r.in_image);
        CHECK(distance(mat_exp(*r.witness), g) < 1e-12);
    }
    SUBCASE("elliptic element with trace in (-2, 2)")
    {
        const Matrix g{{std::cos(2.5), -std::sin(2.5)}, {std::sin(2.5), std::cos(2.5)}};
        const auto r = is_in_exp_image(GroupElement(sl2, g));
        REQUIRE(r.in_image);
        CHECK(distance(mat_exp(*r.witness), g) < 1e-10);
    }
}

TEST_CASE("GL_n(C) exponential image uses a shifted branch")
{
    const auto gl2 = GroupDescriptor::general_linear(2);
    const Matrix g{{-1.0, 1.0}, {0.0, -2.0}};
    const auto r = is_in_exp_image(GroupElement(gl2, g));
    REQUIRE(r.in_image);
    CHECK(distance(mat_exp(*r.witness), g) < 1e-10);
}

TEST_CASE("unsupported exponential-image queries")
{
    const auto glr = GroupDescriptor::general_linear(2, Field::real);
    CHECK(kind_of([&] { is_in_exp_image(GroupElement(glr, Matrix::identity(2))); }) == ErrorKind::unsupported);
}
