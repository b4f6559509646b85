#include "mapgrp/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include "mapgrp/calculus.hpp"
#include "mapgrp/errors.hpp"
#include "mapgrp/evolution.hpp"
#include "mapgrp/monodromy.hpp"
#include "mapgrp/pathology.hpp"
#include "mapgrp/smith.hpp"

namespace mapgrp {

namespace {

const double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

class Checks {
public:
    explicit Checks(CriterionResult& r) : r_(r) {}

    void below(const std::string& name, double value, double bound)
    {
        record(name, value, "<", bound, value < bound);
    }
    void at_least(const std::string& name, double value, double bound)
    {
        record(name, value, ">=", bound, value >= bound);
    }
    void within(const std::string& name, double value, double lo, double hi)
    {
        char buf[200];
        const bool ok = value >= lo && value <= hi;
        std::snprintf(buf, sizeof buf, "%s: %.4g in [%.4g, %.4g] -> %s", name.c_str(), value, lo, hi,
                      ok ? "ok" : "FAIL");
        push(buf, ok);
    }
    void expect(const std::string& name, bool ok) { push(name + " -> " + (ok ? "ok" : "FAIL"), ok); }

private:
    void record(const std::string& name, double value, const char* op, double bound, bool ok)
    {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s: %.3e %s %.1e -> %s", name.c_str(), value, op, bound, ok ? "ok" : "FAIL");
        push(buf, ok);
    }
    void push(std::string line, bool ok)
    {
        r_.details.push_back(std::move(line));
        r_.pass = r_.pass && ok;
    }
    CriterionResult& r_;
};

const Matrix kE{{0.0, 1.0}, {0.0, 0.0}};
const Matrix kF{{0.0, 0.0}, {1.0, 0.0}};

Matrix random_sl2(std::mt19937& rng, double norm)
{
    std::normal_distribution<double> g;
    Matrix m{{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}, {cplx(g(rng), g(rng)), 0.0}};
    m(1, 1) = -m(0, 0);
    return (norm / frobenius_norm(m)) * m;
}

std::string label(const char* fmt, double x)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

// ---------------------------------------------------------------- 1, 2

void monodromy_of_a_dz_over_z(Checks& c)
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto basis = canonical_loop_basis(plane);
    const auto gl2 = GroupDescriptor::general_linear(2);

    std::mt19937 rng(314);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<std::string, Matrix>> cases{{"E", kE},
                                                      {"diag(1,2)", Matrix::diagonal(std::vector<cplx>{1.0, 2.0})}};
    for (int k = 0; k < 3; ++k) {
        Matrix b{{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}, {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}};
        Matrix h = 0.5 * (b + Matrix{{std::conj(b(0, 0)), std::conj(b(1, 0))}, {std::conj(b(0, 1)), std::conj(b(1, 1))}});
        cases.emplace_back("random hermitian " + std::to_string(k), (2.0 * std::abs(u(rng)) / frobenius_norm(h)) * h);
        Matrix t{{u(rng), cplx(g(rng), g(rng))}, {0.0, u(rng)}};
        cases.emplace_back("random triangular " + std::to_string(k), (2.0 * std::abs(u(rng)) / frobenius_norm(t)) * t);
    }
    for (const auto& [name, a] : cases) {
        const OneForm alpha = OneForm::complex_form(plane, 2, [a](Point z) { return (1.0 / z) * a; });
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const GroupElement per = period(gl2, alpha, word_loop(basis, {{0, n}}));
            worst = std::max(worst, distance(per.matrix(), mat_exp((2.0 * kPi * n * kI) * a)));
        }
        c.below("A = " + name + ", max_n |per(gamma^n) - exp(2 pi i n A)|", worst, 1e-8);
    }
}

void integrability_dichotomy(Checks& c)
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto gl2 = GroupDescriptor::general_linear(2);
    const BasedMapElement good(gl2, OneForm::parse(plane, "[[1/z, 0], [0, 2/z]]"), 1.0);
    const BasedMapElement checked = verify_integrability(good);
    c.expect("diag(1,2) dz/z integrable", checked.status() == Integrability::verified);
    const FullMapElement f{GroupElement::identity(gl2), checked};
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const cplx z = std::polar(0.4 + 0.3 * k, -2.0 + 0.7 * k);
        const Matrix want = Matrix::diagonal(std::vector<cplx>{z, z * z});
        worst = std::max(worst, distance(evaluate(f, z).matrix(), want));
    }
    c.below("reconstruction vs diag(z, z^2) at 10 points", worst, 1e-8);

    const BasedMapElement bad(gl2, OneForm::parse(plane, "[[0.5/z, 0], [0, (1/3)/z]]"), 1.0);
    c.expect("diag(1/2,1/3) dz/z not integrable", verify_integrability(bad).status() != Integrability::verified);
    const PeriodMap per = period_vector(gl2, bad.form(), canonical_loop_basis(plane));
    c.at_least("diag(1/2,1/3) period distance to identity", per.max_distance_to_identity(), 0.5);
}

// ---------------------------------------------------------------- 3, 4

void behnke_stein_duality(Checks& c)
{
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    int sets = 0;
    for (int r = 1; r <= 4; ++r) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Point> p;
            while (int(p.size()) < r) {
                const Point q(u(rng), u(rng));
                bool ok = true;
                for (Point o : p)
                    ok = ok && std::abs(o - q) > 0.2;
                if (ok)
                    p.push_back(q);
            }
            Point base;
            for (;;) {
                base = Point(1.5 * u(rng), 1.5 * u(rng));
                bool ok = true;
                for (Point o : p)
                    ok = ok && std::abs(o - base) > 0.3;
                if (ok)
                    break;
            }
            const Domain plane = Domain::punctured_plane(p, base);
            const auto d = duality_matrix(behnke_stein_basis(plane), canonical_loop_basis(plane).loops);
            for (std::size_t i = 0; i < d.size(); ++i)
                for (std::size_t j = 0; j < d.size(); ++j)
                    worst = std::max(worst, std::abs(d[i][j] - (i == j ? 1.0 : 0.0)));
            ++sets;
        }
    }
    c.below("max |int_gamma_i beta_j - delta_ij| over " + std::to_string(sets) + " puncture sets (r <= 4)", worst,
            1e-10);
}

void section_identities(Checks& c)
{
    const Domain plane = Domain::punctured_plane({0.5, -0.5}, cplx(0.0, 1.0));
    const auto sl2 = GroupDescriptor::special_linear(2);
    const auto basis = canonical_loop_basis(plane);
    std::mt19937 rng(1618);

    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const std::vector<Matrix> x{random_sl2(rng, 0.5), random_sl2(rng, 0.5)};
        const auto d = period_derivative_along(sl2, bs_section(plane, x), basis);
        for (std::size_t j = 0; j < x.size(); ++j)
            worst = std::max(worst, distance(d[j], x[j]));
    }
    c.below("max |T_0 P(sigma(x)) - x| over 5 random x", worst, 1e-5);

    // f = exp((z - m0) X0): a global map with delta(f) = X0 dz.
    const Matrix x0 = random_sl2(rng, 0.4);
    const BasedMapElement based(sl2, OneForm::complex_form(plane, 2, [x0](Point) { return x0; }), plane.default_base(),
                                Integrability::unverified, {64, false, {}});
    const FullMapElement f{GroupElement::identity(sl2), verify_integrability(based)};
    c.expect("X0 dz is integrable", f.based.status() == Integrability::verified);
    double gap = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
        const std::vector<Matrix> x{random_sl2(rng, 0.5), random_sl2(rng, 0.5)};
        const PeriodMap plain = period_vector(sl2, bs_section(plane, x), basis);
        const PeriodMap dressed = period_vector(sl2, dressed_section(f, x), basis);
        for (std::size_t j = 0; j < x.size(); ++j)
            gap = std::max(gap, group_distance(plain.values[j], dressed.values[j]));
    }
    c.below("max |per(sigma_alpha(x)) - per(sigma(x))|", gap, 1e-6);
}

// ---------------------------------------------------------------- 5

void group_law(Checks& c)
{
    const Domain unit = Domain::interval(0.0, 1.0);
    const auto sl2 = GroupDescriptor::special_linear(2);
    std::mt19937 rng(42);
    auto random_form = [&] {
        const Matrix a0 = random_sl2(rng, 0.4), a1 = random_sl2(rng, 0.4), a2 = random_sl2(rng, 0.4);
        return BasedMapElement(sl2,
                               OneForm::interval_form(unit, 2, [=](double t) { return a0 + t * a1 + (t * t) * a2; }),
                               0.0, Integrability::verified, {64, false, {}});
    };
    double hom = 0.0, inv = 0.0;
    for (int pair = 0; pair < 2; ++pair) {
        const BasedMapElement a = random_form(), b = random_form();
        const BasedMapElement ab = multiply(a, b);
        const BasedMapElement a_ainv = multiply(a, inverse(a));
        for (int k = 1; k <= 10; ++k) {
            const double m = 0.1 * k;
            hom = std::max(hom, distance(ab.evol_at(m), a.evol_at(m) * b.evol_at(m)));
            inv = std::max(inv, frobenius_norm(a_ainv.form()(m, 1.0)));
        }
    }
    c.below("max |Evol(a*b) - Evol(a)Evol(b)| at 10 points", hom, 1e-6);
    c.below("max |(a*a^-1)_m| at 10 points", inv, 1e-6);

    const Domain plane = Domain::punctured_plane({0.0, 1.0}, cplx(0.5, 1.0));
    const auto cstar2 = GroupDescriptor::abelian(2, {{2.0 * kPi * kI, 0.0}, {0.0, 2.0 * kPi * kI}});
    const BasedMapElement a(cstar2, OneForm::parse(plane, "[[2/z, 0], [0, z^2 - 1/(z-1)]]"), cplx(0.5, 1.0));
    const BasedMapElement b(cstar2, OneForm::parse(plane, "[[exp(z), 0], [0, -3/(z-1)]]"), cplx(0.5, 1.0));
    const BasedMapElement ab = multiply(a, b);
    double add = 0.0;
    for (int k = 0; k < 10; ++k) {
        const cplx m = std::polar(0.7 + 0.2 * k, 0.4 * k + 0.3);
        add = std::max(add, distance(ab.form()(m, 1.0), a.form()(m, 1.0) + b.form()(m, 1.0)));
    }
    c.below("abelian |a*b - (a+b)| at 10 points", add, 1e-12);
}

// ---------------------------------------------------------------- 6

void roundtrips(Checks& c)
{
    const auto sl2 = GroupDescriptor::special_linear(2);
    const Domain unit = Domain::interval(0.0, 1.0);
    const Domain circle = Domain::circle();
    const Matrix x{{0.3, 0.8}, {-0.2, -0.3}};
    const Matrix y{{0.1, cplx(0.0, 0.4)}, {0.6, -0.1}};

    // Interval: delta -> Evol.
    {
        auto f = [&](double t) { return mat_exp(t * x) * mat_exp(std::sin(2.0 * t) * y); };
        const auto s = sample_map(unit, sl2, [&](Point p) { return f(p.real()); }, 1001);
        const BasedMapElement e(sl2, log_derivative_from_samples(s), 0.0, Integrability::verified, {1000, false, {}});
        double worst = 0.0;
        for (double t : {0.25, 0.5, 0.75, 1.0})
            worst = std::max(worst, distance(e.evol_at(t), solve(f(0.0), f(t))));
        c.below("interval: Evol(delta f) vs f(0)^-1 f, h = 1e-3", worst, 1e-5);
    }
    // Interval: Evol -> delta.
    {
        auto xi = [&](double t) { return std::cos(3.0 * t) * x + (1.0 + t * t) * y; };
        const OneForm alpha = OneForm::interval_form(unit, 2, xi);
        const auto r = evol_dense(sl2, pullback(alpha, Path::segment(0.0, 1.0)), 1000, {1000, false, {}});
        std::vector<Matrix> values;
        for (const auto& [t, g] : r.dense)
            values.push_back(g.matrix());
        const auto s = sample_map(unit, sl2, [&](Point p) { return values[std::size_t(std::lround(p.real() * 1000))]; },
                                  1001);
        const auto nodes = log_derivative_nodes(s);
        double worst = 0.0;
        for (int k = 0; k < 1001; ++k)
            worst = std::max(worst, distance(nodes[std::size_t(k)].first, xi(k / 1000.0)));
        c.below("interval: delta(Evol alpha) vs alpha at nodes, h = 1e-3", worst, 1e-5);
    }
    // Circle, periodic map f(theta) = exp(cos theta X) exp(sin theta Y).
    auto fc = [&](double th) { return mat_exp(std::cos(th) * x) * mat_exp(std::sin(th) * y); };
    auto xic = [&](double th) {
        return ad_conjugate_inverse(mat_exp(std::sin(th) * y), -std::sin(th) * x) + std::cos(th) * y;
    };
    const int n_circle = int(std::lround(2.0 * kPi / 1e-3));
    {
        const auto s = sample_map(circle, sl2, [&](Point p) { return fc(p.real()); }, n_circle);
        const OneForm alpha = log_derivative_from_samples(s);
        double worst = 0.0;
        for (double th : {1.0, 2.5, 4.0, 2.0 * kPi}) {
            const GroupElement g = transport(sl2, alpha, Path::segment(0.0, th), {8192, false, {}});
            worst = std::max(worst, distance(g.matrix(), solve(fc(0.0), fc(th))));
        }
        c.below("circle: Evol(delta f) vs f(0)^-1 f, h = 1e-3", worst, 1e-5);
    }
    {
        const OneForm alpha = OneForm::interval_form(circle, 2, xic);
        const auto r = evol_dense(sl2, pullback(alpha, Path::segment(0.0, 2.0 * kPi)), n_circle, {n_circle, false, {}});
        std::vector<Matrix> values;
        for (const auto& [t, g] : r.dense)
            values.push_back(g.matrix());
        const double h = 2.0 * kPi / n_circle;
        const auto s = sample_map(
            circle, sl2, [&](Point p) { return values[std::size_t(std::lround(p.real() / h))]; }, n_circle);
        const auto nodes = log_derivative_nodes(s);
        double worst = 0.0;
        for (int k = 0; k < n_circle; ++k)
            worst = std::max(worst, distance(nodes[std::size_t(k)].first, xic(k * h)));
        c.below("circle: delta(Evol alpha) vs alpha at nodes, h ~ 1e-3", worst, 1e-5);
    }
    // Cocycle identity.
    {
        auto f1 = [&](Point t) { return mat_exp(t.real() * kE) * mat_exp(std::sin(t.real()) * x); };
        auto f2 = [&](Point t) { return mat_exp(t.real() * t.real() * y + t.real() * kF); };
        auto fe = [&](Point t) { return mat_exp(t.real() * kE); };
        c.below("cocycle residual, generic pair, h = 1e-3",
                cocycle_residual(sample_map(unit, sl2, f1, 1001), sample_map(unit, sl2, f2, 1001)), 1e-4);
        c.below("cocycle residual, f1 = f2 = exp(tE), h = 1e-3",
                cocycle_residual(sample_map(unit, sl2, fe, 1001), sample_map(unit, sl2, fe, 1001)), 1e-4);
    }
    // Equal logarithmic derivatives differ by a left constant.
    {
        auto g = [&](double t) { return mat_exp(t * x) * mat_exp(t * t * y); };
        auto dg = [&](double t) { return ad_conjugate_inverse(mat_exp(t * t * y), x) + (2.0 * t) * y; };
        const Matrix k{{1.0, 2.0}, {0.5, 2.0}};
        const OneForm alpha = OneForm::interval_form(unit, 2, dg);
        const auto r = evol_dense(sl2, pullback(alpha, Path::segment(0.0, 1.0)), 1000, {1000, false, {}});
        std::vector<Matrix> f2;
        for (const auto& [t, e] : r.dense)
            f2.push_back(k * e.matrix());
        const auto s1 = sample_map(unit, GroupDescriptor::general_linear(2), [&](Point p) { return g(p.real()); }, 1001);
        const auto s2 = sample_map(unit, GroupDescriptor::general_linear(2),
                                   [&](Point p) { return f2[std::size_t(std::lround(p.real() * 1000))]; }, 1001);
        const auto d1 = log_derivative_nodes(s1), d2 = log_derivative_nodes(s2);
        double same = 0.0, defect = 0.0;
        const Matrix c0 = f2[0] * inverse(g(0.0));
        for (int i = 0; i <= 1000; ++i) {
            same = std::max(same, distance(d1[std::size_t(i)].first, d2[std::size_t(i)].first));
            defect = std::max(defect, distance(f2[std::size_t(i)] * inverse(g(i / 1000.0)), c0));
        }
        c.below("left-constant relation: max |delta f1 - delta f2| on samples", same, 1e-5);
        c.below("left-constant relation: constancy defect of f2 f1^-1", defect, 1e-6);
    }
}

// ---------------------------------------------------------------- 7, 8

AlgebraPath noncommuting_benchmark()
{
    AlgebraPath xi;
    xi.dim = 2;
    xi.value = [](double t) {
        return Matrix{{cplx(std::sin(3.0 * t), 0.0), cplx(1.0 + t * t, 0.0)},
                      {cplx(std::cos(2.0 * t), 0.5), cplx(-std::sin(3.0 * t), 0.0)}};
    };
    return xi;
}

void integrator_order(Checks& c)
{
    const AlgebraPath xi = noncommuting_benchmark();
    const Matrix ref = evol_matrix(xi, 4096);
    double prev = distance(evol_matrix(xi, 4), ref);
    for (int steps : {8, 16, 32}) {
        const double err = distance(evol_matrix(xi, steps), ref);
        c.within("error ratio " + std::to_string(steps / 2) + " -> " + std::to_string(steps) + " steps", prev / err,
                 12.0, 20.0);
        prev = err;
    }
    c.below("tangent formula |(evol(eps xi) - 1)/eps - int xi|", tangent_at_zero_check(
                                                                       GroupDescriptor::general_linear(2), xi),
            1e-5);
}

void maurer_cartan(Checks& c)
{
    const Domain chart = Domain::chart(-1.0, 1.0, -1.0, 1.0);
    const Matrix x{{0.4, 0.7}, {-0.3, -0.4}};
    const Matrix y{{0.2, cplx(0.0, 0.5)}, {0.8, -0.2}};
    const Matrix z{{0.0, 0.6}, {0.3, 0.0}};
    // f = exp(xX) exp(yY) exp(xyZ).
    const OneForm alpha = OneForm::chart_form(
        chart, 2,
        [=](Point p) {
            const double px = p.real(), py = p.imag();
            return ad_conjugate_inverse(mat_exp((px * py) * z), ad_conjugate_inverse(mat_exp(py * y), x)) + py * z;
        },
        [=](Point p) {
            const double px = p.real(), py = p.imag();
            return ad_conjugate_inverse(mat_exp((px * py) * z), y) + px * z;
        });
    const std::vector<int> sizes{21, 41, 81, 161};
    std::vector<double> res;
    for (int n : sizes)
        res.push_back(mc_residual(alpha, n, n));
    for (std::size_t k = 0; k + 1 < res.size(); ++k)
        c.within(label("observed order, h = %.4g -> h/2", 2.0 / (sizes[k] - 1)), std::log2(res[k] / res[k + 1]), 1.7,
                 2.3);
    c.below("parallel vs serial residual", std::abs(mc_residual(alpha, 41, 41) - mc_residual_serial(alpha, 41, 41)),
            1e-15);

    const OneForm flat_fail = OneForm::chart_form(
        chart, 2, [](Point) { return Matrix::zero(2); }, [=](Point p) { return p.real() * x; });
    double low = 1e300;
    for (int n : sizes)
        low = std::min(low, mc_residual(flat_fail, n, n));
    c.at_least("x dy X: min residual / |X| under refinement", low / frobenius_norm(x), 0.5);
}

// ---------------------------------------------------------------- 9, 10

void topology_census(Checks& c)
{
    const Domain plane = Domain::punctured_plane({0.0}, 1.0);
    const auto basis = canonical_loop_basis(plane);
    const auto cstar = GroupDescriptor::c_star();
    auto form = [&](int k) { return OneForm::parse(plane, std::to_string(k) + "/z"); };
    bool exact = true;
    for (int k = -5; k <= 5; ++k)
        exact = exact && component_class(cstar, form(k), basis).classes == std::vector<std::vector<long long>>{{k}};
    c.expect("component_class(z^k) = (k) for |k| <= 5", exact);
    bool adds = true;
    for (auto [j, k] : std::vector<std::pair<int, int>>{{1, 3}, {-2, 5}, {4, -4}, {-5, -3}}) {
        const BasedMapElement a(cstar, form(j), 1.0), b(cstar, form(k), 1.0);
        adds = adds && component_class(cstar, multiply(a, b).form(), basis).classes ==
                           std::vector<std::vector<long long>>{{j + k}};
    }
    c.expect("classes add under products", adds);

    const bool free2 = hom_rank(AbelianPresentation(2, {})) == 2;
    const bool z5 = hom_rank(AbelianPresentation(1, {{BigInt(5)}})) == 0;
    const AbelianPresentation p(2, {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(0)}});
    const auto s = smith_normal_form(p.relations);
    const bool factors = s.invariant_factors() == std::vector<BigInt>{2, 0} && hom_rank(p) == 1;
    const bool unimodular = abs(int_determinant(s.U)) == 1 && abs(int_determinant(s.V)) == 1 &&
                            int_multiply(int_multiply(s.U, p.relations), s.V) == s.D;
    c.expect("Z^2 -> hom_rank 2", free2);
    c.expect("Z/5 -> hom_rank 0", z5);
    c.expect("[[2,0],[0,0]] -> invariant factors (2,0), hom_rank 1", factors);
    c.expect("D = U R V with unimodular U, V", unimodular);
}

void exp_pathology_checks(Checks& c)
{
    const auto rows = exp_pathology({5, 10, 15}, 2.0);
    bool monotone = true;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k)
        monotone = monotone && rows[k + 1].sup_deviation < rows[k].sup_deviation;
    for (const auto& r : rows)
        c.expect(label("n = %.0f: ", r.n) + label("sup |h_n - 1| = %.3e", r.sup_deviation), true);
    c.expect("sup deviation decreases in n", monotone);
    c.below("sup_{|z|<=2} |h_10(z) - 1|_F", rows[1].sup_deviation, 1e-3);
    bool outside = true;
    for (const auto& r : rows)
        outside = outside && !r.in_exp_image;
    c.expect("h_n(n) outside exp(sl2) for n = 5, 10, 15", outside);

    const auto grid = disk_grid(2.0, 41, 90);
    const auto h5 = pathology_map(5);
    c.below("parallel vs serial sup", std::abs(sup_deviation(h5, grid) - sup_deviation_serial(h5, grid)), 1e-15);

    const auto xi = parse_expr("[[0.1*z, 0.1 - 0.05*z^2], [0.08*exp(z/2), -0.1*z]]", {"z"});
    std::vector<Point> pts;
    for (int k = 0; k < 50; ++k)
        pts.push_back(std::polar(0.02 * k, 0.9 * k));
    double norm = 0.0;
    for (Point p : pts)
        norm = std::max(norm, frobenius_norm(xi.evaluate(p)));
    const auto back = pointwise_log_lift(pointwise_exp(xi, pts));
    double worst = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
        worst = std::max(worst, distance(back[k], xi.evaluate(pts[k])));
    c.expect(label("roundtrip sample norm max |xi| = %.3f <= 0.3", norm), norm <= 0.3);
    c.below("pointwise log(exp xi) - xi", worst, 1e-10);
}

struct Entry {
    const char* title;
    void (*run)(Checks&);
};

const std::map<int, Entry>& criteria()
{
    static const std::map<int, Entry> table{
        {1, {"monodromy of A dz/z: n -> exp(2 pi i n A)", monodromy_of_a_dz_over_z}},
        {2, {"integrability dichotomy for A dz/z", integrability_dichotomy}},
        {3, {"Behnke-Stein duality", behnke_stein_duality}},
        {4, {"section tangent identity and dressed periods", section_identities}},
        {5, {"group law on logarithmic derivatives", group_law}},
        {6, {"fundamental-theorem roundtrips and cocycle", roundtrips}},
        {7, {"integrator order and tangent formula", integrator_order}},
        {8, {"Maurer-Cartan residual", maurer_cartan}},
        {9, {"topology census", topology_census}},
        {10, {"exponential pathology", exp_pathology_checks}},
    };
    return table;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"example-3-14",  "behnke-stein", "section",  "group-law",
                                                "roundtrips",    "integrator",   "maurer-cartan",
                                                "topology",      "exp-pathology", "all"};
    return names;
}

std::vector<int> suite_criteria(const std::string& suite)
{
    static const std::map<std::string, std::vector<int>> table{
        {"example-3-14", {1, 2}}, {"behnke-stein", {3}}, {"section", {4}},  {"group-law", {5}},
        {"roundtrips", {6}},      {"integrator", {7}},   {"maurer-cartan", {8}}, {"topology", {9}},
        {"exp-pathology", {10}},  {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
    };
    const auto it = table.find(suite);
    if (it == table.end())
        throw_invalid("unknown suite '" + suite + "'");
    return it->second;
}

CriterionResult run_criterion(int id)
{
    const auto it = criteria().find(id);
    if (it == criteria().end())
        throw_invalid("unknown criterion " + std::to_string(id));
    CriterionResult r;
    r.id = id;
    r.title = it->second.title;
    Checks checks(r);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->second.run(checks);
    } catch (const std::exception& e) {
        checks.expect(std::string("unexpected error: ") + e.what(), false);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite)
{
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite))
        out.push_back(run_criterion(id));
    return out;
}

} // namespace mapgrp
