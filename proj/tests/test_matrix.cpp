#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mapgrp/errors.hpp"
#include "mapgrp/matrix.hpp"

using namespace mapgrp;

namespace {

// Plain Taylor series with many terms; fine for small norms.
Matrix taylor_exp(const Matrix& a)
{
    Matrix sum = Matrix::identity(a.size());
    Matrix term = Matrix::identity(a.size());
    for (int k = 1; k < 60; ++k) {
        term = (1.0 / k) * (term * a);
        sum += term;
    }
    return sum;
}

Matrix random_matrix(std::mt19937& rng, std::size_t n, double scale)
{
    std::normal_distribution<double> g;
    Matrix m(n);
    for (auto& x : m.entries())
        x = cplx(g(rng), g(rng));
    return (scale / frobenius_norm(m)) * m;
}

} // namespace

TEST_CASE("exp of zero is the identity")
{
    CHECK(mat_exp(Matrix::zero(3)) == Matrix::identity(3));
}

TEST_CASE("exp agrees with the Taylor series")
{
    std::mt19937 rng(7);
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix a = random_matrix(rng, n, 1.5);
            CHECK(distance(mat_exp(a), taylor_exp(a)) < 1e-12);
        }
    }
}

TEST_CASE("exp of a nilpotent and of a rotation generator")
{
    const Matrix e{{0.0, 1.0}, {0.0, 0.0}};
    CHECK(distance(mat_exp(e), Matrix{{1.0, 1.0}, {0.0, 1.0}}) < 1e-15);
    const Matrix h = Matrix{{cplx(0, std::numbers::pi), 0.0}, {0.0, cplx(0, -std::numbers::pi)}};
    CHECK(distance(mat_exp(h), -1.0 * Matrix::identity(2)) < 1e-14);
    // Large norm goes through squaring.
    const Matrix big{{0.0, 20.0}, {-20.0, 0.0}};
    const Matrix r = mat_exp(big);
    CHECK(std::abs(r(0, 0) - std::cos(20.0)) < 1e-12);
    CHECK(std::abs(r(0, 1) - std::sin(20.0)) < 1e-12);
}

TEST_CASE("log inverts exp near the identity")
{
    std::mt19937 rng(11);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix x = random_matrix(rng, n, 0.8);
            CHECK(distance(mat_log_principal(mat_exp(x)), x) < 1e-12);
        }
    }
}

TEST_CASE("exp inverts log for matrices off the negative axis")
{
    const Matrix g{{2.0, 1.0}, {0.5, 3.0}};
    CHECK(distance(mat_exp(mat_log_principal(g)), g) < 1e-12);
    const Matrix rot{{0.0, -1.0}, {1.0, 0.0}}; // eigenvalues +-i
    const Matrix l = mat_log_principal(rot);
    CHECK(distance(l, Matrix{{0.0, -std::numbers::pi / 2}, {std::numbers::pi / 2, 0.0}}) < 1e-12);
}

TEST_CASE("log rejects the negative axis and singular input")
{
    const Matrix minus{{-1.0, 1.0}, {0.0, -1.0}};
    try {
        (void)mat_log_principal(minus);
        FAIL("expected branch cut");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::branch_cut);
    }
    const Matrix singular{{1.0, 2.0}, {2.0, 4.0}};
    try {
        (void)mat_log_principal(singular);
        FAIL("expected invalid argument");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("determinant, inverse and solve")
{
    const Matrix a{{4.0, cplx(1, 1)}, {2.0, 3.0}};
    CHECK(std::abs(determinant(a) - (12.0 - 2.0 * cplx(1, 1))) < 1e-14);
    CHECK(distance(a * inverse(a), Matrix::identity(2)) < 1e-14);
    const Matrix b{{1.0, 0.0}, {1.0, 1.0}};
    CHECK(distance(a * solve(a, b), b) < 1e-14);
    CHECK(distance(ad_conjugate_inverse(a, ad_conjugate(a, b)), b) < 1e-13);
}

TEST_CASE("det(exp A) = exp(tr A)")
{
    std::mt19937 rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix a = random_matrix(rng, 3, 2.0);
        CHECK(std::abs(determinant(mat_exp(a)) - std::exp(trace(a))) < 1e-12 * std::abs(std::exp(trace(a))) + 1e-13);
    }
}

TEST_CASE("eigenvalues match the characteristic polynomial")
{
    const Matrix d = Matrix::diagonal(std::vector<cplx>{1.0, 2.0, cplx(0, 3)});
    auto ev = eigenvalues(d);
    REQUIRE(ev.size() == 3);
    for (cplx want : {cplx(1.0), cplx(2.0), cplx(0, 3)}) {
        double best = 1e9;
        for (cplx got : ev)
            best = std::min(best, std::abs(got - want));
        CHECK(best < 1e-10);
    }
}
