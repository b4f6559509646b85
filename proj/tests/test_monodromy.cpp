#include <doctest.h>

#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/monodromy.hpp"
#include "mapgrp/smith.hpp"

using namespace mapgrp;

namespace {
const double pi = std::numbers::pi;
const cplx I(0.0, 1.0);
} // namespace

TEST_CASE("periods of A dz/z")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto gl2 = GroupDescriptor::general_linear(2);
    const auto basis = canonical_loop_basis(plane);
    const PeriodMap good = period_vector(gl2, OneForm::parse(plane, "[[1/z,0],[0,2/z]]"), basis);
    CHECK(good.trivial());
    const PeriodMap bad = period_vector(gl2, OneForm::parse(plane, "[[0.5/z,0],[0,(1/3)/z]]"), basis);
    CHECK(bad.max_distance_to_identity() >= 0.5);
    const PeriodMap serial = period_vector_serial(gl2, OneForm::parse(plane, "[[0.5/z,0],[0,(1/3)/z]]"), basis);
    CHECK(group_distance(serial.values[0], bad.values[0]) == 0.0);
}

TEST_CASE("homomorphism property for noncommuting residues")
{
    const Domain plane = Domain::punctured_plane({1.0, -1.0}, cplx(0.0, 2.0));
    const auto sl2 = GroupDescriptor::special_linear(2);
    const OneForm alpha = OneForm::parse(plane, "[[0.3/(z-1), 0.2/(z-1)], [0.1/(z+1), -0.3/(z-1)]]");
    const auto basis = canonical_loop_basis(plane);
    CHECK(homomorphism_check(sl2, alpha, basis, {{0, 1}, {1, 1}}) < 1e-6);
    CHECK(homomorphism_check(sl2, alpha, basis, {{0, 1}}) < 1e-12);
    CHECK(period(sl2, alpha, word_loop(basis, {{0, 1}, {0, -1}})).distance_to_identity() < 1e-8);
}

TEST_CASE("Behnke-Stein section: single puncture period")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto sl2 = GroupDescriptor::special_linear(2);
    const Matrix x{{0.2, 0.5}, {0.1, -0.2}};
    const auto per = period_vector(sl2, bs_section(plane, {x}), canonical_loop_basis(plane));
    CHECK(distance(per.values[0].matrix(), mat_exp(x)) < 1e-8);
}

TEST_CASE("Behnke-Stein section: tangent of the period map")
{
    const Domain plane = Domain::punctured_plane({0.5, -0.5}, cplx(0.0, 1.0));
    const auto sl2 = GroupDescriptor::special_linear(2);
    const auto basis = canonical_loop_basis(plane);
    const std::vector<Matrix> x{Matrix{{0.2, 0.5}, {0.1, -0.2}}, Matrix{{0.0, -0.3}, {0.4, 0.0}}};
    const auto d = period_derivative_along(sl2, bs_section(plane, x), basis);
    for (std::size_t j = 0; j < x.size(); ++j)
        CHECK(distance(d[j], x[j]) < 1e-5);
}

TEST_CASE("abelian periods and component classes")
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto basis = canonical_loop_basis(plane);
    const auto zmod = GroupDescriptor::abelian(1, {{1.0}});
    CHECK(abelian_period(zmod, OneForm::parse(plane, "1/(2*pi*i*z)"), basis.loops[0]).distance_to_identity() < 1e-10);
    CHECK_FALSE(abelian_integrable(zmod, OneForm::parse(plane, "0.5/(2*pi*i*z)"), basis));
    const auto cstar = GroupDescriptor::c_star();
    for (int k = -5; k <= 5; ++k) {
        const auto c = component_class(cstar, OneForm::parse(plane, std::to_string(k) + "/z"), basis);
        CHECK(c.classes == std::vector<std::vector<long long>>{{k}});
    }
    CHECK(component_class(cstar, OneForm::parse(plane, "1 - 1/z^2"), basis).trivial());
    CHECK_THROWS_AS(component_class(cstar, OneForm::parse(plane, "0.5/z"), basis), Error);
}

TEST_CASE("Smith normal form")
{
    SUBCASE("hand example")
    {
        const auto s = smith_normal_form(std::vector<std::vector<long long>>{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
        const auto d = s.invariant_factors();
        CHECK(d[0] == 2);
        CHECK(d[1] == 6);
        CHECK(d[2] == 12);
    }
    SUBCASE("unimodular transforms")
    {
        const std::vector<std::vector<long long>> r{{3, 5, 7, 2}, {1, -4, 0, 8}, {6, 2, -9, 4}};
        const auto s = smith_normal_form(r);
        IntMatrix big;
        for (const auto& row : r) {
            big.emplace_back();
            for (long long x : row)
                big.back().emplace_back(x);
        }
        CHECK(int_multiply(int_multiply(s.U, big), s.V) == s.D);
        CHECK(abs(int_determinant(s.U)) == 1);
        CHECK(abs(int_determinant(s.V)) == 1);
        const auto d = s.invariant_factors();
        for (std::size_t k = 0; k + 1 < d.size(); ++k)
            if (d[k] != 0)
                CHECK(d[k + 1] % d[k] == 0);
    }
    SUBCASE("hom ranks")
    {
        CHECK(hom_rank(AbelianPresentation(2, {})) == 2);
        CHECK(hom_rank(AbelianPresentation(1, {{BigInt(5)}})) == 0);
        const AbelianPresentation a(2, {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(0)}});
        CHECK(hom_rank(a) == 1);
        const auto rep = discreteness_report(a, Lattice(1, {{2.0 * pi * I}}));
        CHECK(rep.invariant_factors == std::vector<BigInt>{2, 0});
        CHECK(rep.discrete);
    }
}
