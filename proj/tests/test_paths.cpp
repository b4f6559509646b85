#include <doctest.h>

#include <numbers>
#include <random>

#include "mapgrp/errors.hpp"
#include "mapgrp/paths.hpp"

using namespace mapgrp;

TEST_CASE("segments, arcs and concatenations")
{
    const Path s = Path::segment(0.0, cplx(2.0, 2.0));
    CHECK(std::abs(s.point(0.5) - cplx(1.0, 1.0)) < 1e-15);
    CHECK(std::abs(s.velocity(0.3) - cplx(2.0, 2.0)) < 1e-15);
    const Path a = Path::arc(0.0, 1.0, 0.0, std::numbers::pi);
    CHECK(std::abs(a.end() - cplx(-1.0, 0.0)) < 1e-15);
    const Path c = concatenate(Path::segment(-1.0, 0.0), Path::segment(0.0, cplx(0, 1)));
    REQUIRE(c.knots().size() == 1);
    CHECK(c.knots()[0] == doctest::Approx(0.5));
    CHECK(std::abs(reverse(c).start() - cplx(0, 1)) < 1e-15);
    CHECK_THROWS_AS(concatenate(Path::segment(0.0, 1.0), Path::segment(2.0, 3.0)), Error);
}

TEST_CASE("winding numbers")
{
    const Path circle = Path::arc(0.0, 1.0, 0.0, 2.0 * std::numbers::pi);
    CHECK(winding_number(circle, 0.0) == 1);
    CHECK(winding_number(circle, 3.0) == 0);
    CHECK(winding_number(reverse(circle), 0.0) == -1);
    CHECK(winding_number(Path::concatenation({circle, circle, circle}), cplx(0.1, 0.2)) == 3);
    CHECK_THROWS_AS(winding_number(Path::segment(0.0, 1.0), 5.0), Error);
    CHECK_THROWS_AS(winding_number(circle, 1.0), Error);
}

TEST_CASE("canonical loop basis is dual to the punctures")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<Point> p;
        for (int k = 0; k < 4; ++k)
            p.emplace_back(u(rng), u(rng));
        const Domain plane = Domain::punctured_plane(p, cplx(5.0, 0.3));
        const LoopBasis basis = canonical_loop_basis(plane);
        REQUIRE(basis.loops.size() == p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(std::abs(basis.loops[i].start() - plane.default_base()) < 1e-12);
            for (std::size_t j = 0; j < p.size(); ++j)
                CHECK(winding_number(basis.loops[i], p[j]) == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("canonical evaluation path detours around punctures on the segment")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const Path p = canonical_path(plane, 1.0, -1.0);
    CHECK(std::abs(p.start() - cplx(1.0)) < 1e-15);
    CHECK(std::abs(p.end() - cplx(-1.0)) < 1e-15);
    double closest = 1e9;
    for (int k = 0; k <= 1000; ++k)
        closest = std::min(closest, std::abs(p.point(k / 1000.0)));
    CHECK(closest > 0.2);
    // Counterclockwise detour passes through the upper half plane.
    CHECK(p.point(0.5).imag() > 0.0);
}

TEST_CASE("domains validate their data")
{
    CHECK_THROWS_AS(Domain::interval(1.0, 0.0), Error);
    CHECK_THROWS_AS(Domain::punctured_plane({0.0}, 0.0), Error);
    CHECK_THROWS_AS(Domain::chart(0.0, 0.0, 0.0, 1.0), Error);
    const Domain plane = Domain::punctured_plane({0.0, 2.0}, 1.0);
    CHECK_FALSE(plane.contains(2.0));
    CHECK(plane.distance_to_poles(cplx(1.0, 0.0)) == doctest::Approx(1.0));
}
