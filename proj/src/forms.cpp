#include "mapgrp/forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/quadrature.hpp"

namespace mapgrp {

OneForm::OneForm(Domain domain, std::size_t dim, FormKind kind, Evaluator eval, std::optional<std::string> text)
    : domain_(std::make_shared<const Domain>(std::move(domain))), dim_(dim), kind_(kind),
      eval_(std::make_shared<const Evaluator>(std::move(eval))), text_(std::move(text))
{
}

Matrix OneForm::operator()(Point m, Point v) const { return (*eval_)(m, v); }

OneForm OneForm::zero(const Domain& domain, std::size_t dim)
{
    const FormKind kind = domain.is_chart()            ? FormKind::chart_form
                          : domain.is_one_dimensional() ? FormKind::interval_form
                                                        : FormKind::complex_form;
    std::string text = "[";
    for (std::size_t i = 0; i < dim; ++i) {
        text += i ? ",[" : "[";
        for (std::size_t j = 0; j < dim; ++j)
            text += j ? ",0" : "0";
        text += "]";
    }
    text += "]";
    return OneForm(domain, dim, kind, [dim](Point, Point) { return Matrix::zero(dim); }, text);
}

std::vector<std::string> form_variables(const Domain& domain)
{
    if (domain.is_chart())
        return {"x", "y"};
    if (domain.is_one_dimensional())
        return {"t"};
    return {"z"};
}

OneForm OneForm::complex_form(const Domain& domain, MatrixExpr xi)
{
    if (xi.variables() != std::vector<std::string>{"z"})
        throw_invalid("complex form expressions must use the variable z");
    std::string text = xi.to_string();
    const std::size_t n = xi.size();
    return OneForm(domain, n, FormKind::complex_form,
                   [xi = std::move(xi)](Point m, Point v) { return xi.evaluate(m) * v; }, std::move(text));
}

OneForm OneForm::complex_form(const Domain& domain, std::size_t dim, std::function<Matrix(Point)> xi)
{
    return OneForm(domain, dim, FormKind::complex_form,
                   [xi = std::move(xi)](Point m, Point v) { return xi(m) * v; });
}

OneForm OneForm::interval_form(const Domain& domain, MatrixExpr xi)
{
    if (xi.variables() != std::vector<std::string>{"t"})
        throw_invalid("interval form expressions must use the variable t");
    std::string text = xi.to_string();
    const std::size_t n = xi.size();
    return OneForm(domain, n, FormKind::interval_form,
                   [xi = std::move(xi)](Point m, Point v) { return xi.evaluate(cplx(m.real(), 0.0)) * v.real(); },
                   std::move(text));
}

OneForm OneForm::interval_form(const Domain& domain, std::size_t dim, std::function<Matrix(double)> xi)
{
    return OneForm(domain, dim, FormKind::interval_form,
                   [xi = std::move(xi)](Point m, Point v) { return xi(m.real()) * v.real(); });
}

OneForm OneForm::chart_form(const Domain& domain, MatrixExpr dx, MatrixExpr dy)
{
    if (dx.size() != dy.size())
        throw_invalid("chart form: dx and dy components differ in size");
    std::string text = "dx:" + dx.to_string() + ";dy:" + dy.to_string();
    const std::size_t n = dx.size();
    return OneForm(domain, n, FormKind::chart_form,
                   [dx = std::move(dx), dy = std::move(dy)](Point m, Point v) {
                       const cplx xy[2] = {m.real(), m.imag()};
                       return dx.evaluate(xy) * v.real() + dy.evaluate(xy) * v.imag();
                   },
                   std::move(text));
}

OneForm OneForm::chart_form(const Domain& domain, std::size_t dim, std::function<Matrix(Point)> dx,
                            std::function<Matrix(Point)> dy)
{
    return OneForm(domain, dim, FormKind::chart_form,
                   [dx = std::move(dx), dy = std::move(dy)](Point m, Point v) {
                       return dx(m) * v.real() + dy(m) * v.imag();
                   });
}

OneForm OneForm::parse(const Domain& domain, const std::string& text)
{
    if (domain.is_chart())
        throw_invalid("chart forms need separate dx and dy expressions");
    auto xi = parse_expr(text, form_variables(domain));
    if (domain.is_one_dimensional())
        return interval_form(domain, std::move(xi));
    return complex_form(domain, std::move(xi));
}

OneForm OneForm::parse_chart(const Domain& domain, const std::string& dx, const std::string& dy)
{
    if (!domain.is_chart())
        throw_invalid("dx/dy form on a non-chart domain");
    return chart_form(domain, parse_expr(dx, {"x", "y"}), parse_expr(dy, {"x", "y"}));
}

OneForm OneForm::dressed(const OneForm& base, std::function<Matrix(Point)> dressing)
{
    auto eval = base.eval_;
    return OneForm(base.domain(), base.dim(), FormKind::dressed,
                   [eval, dressing = std::move(dressing)](Point m, Point v) {
                       return ad_conjugate_inverse(dressing(m), (*eval)(m, v));
                   });
}

OneForm operator+(const OneForm& a, const OneForm& b)
{
    if (a.dim() != b.dim())
        throw_invalid("form sum: dimension mismatch");
    auto ea = a.eval_;
    auto eb = b.eval_;
    return OneForm(a.domain(), a.dim(), FormKind::composite,
                   [ea, eb](Point m, Point v) { return (*ea)(m, v) + (*eb)(m, v); });
}

OneForm operator-(const OneForm& a, const OneForm& b) { return a + (-b); }

OneForm operator*(cplx s, const OneForm& a)
{
    auto ea = a.eval_;
    return OneForm(a.domain(), a.dim(), FormKind::composite, [ea, s](Point m, Point v) { return s * (*ea)(m, v); });
}

OneForm OneForm::operator-() const { return cplx(-1.0) * *this; }

// ---------------------------------------------------------------- AlgebraPath

std::vector<double> AlgebraPath::grid(int steps_per_unit) const
{
    if (steps_per_unit < 1)
        throw_invalid("grid: steps_per_unit must be >= 1");
    std::vector<double> cuts{0.0};
    for (double k : knots)
        if (k > 0.0 && k < 1.0)
            cuts.push_back(k);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> out{0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const double len = b - a;
        if (len <= 1e-15)
            continue;
        double steps = std::ceil(steps_per_unit * len - 1e-9);
        if (max_step) {
            double cap = std::numeric_limits<double>::infinity();
            constexpr int kProbe = 32;
            for (int k = 0; k <= kProbe; ++k) {
                // Probes stay strictly inside the interval so piece endpoints are not
                // evaluated across a knot.
                const double t = a + len * (0.5 + k) / (kProbe + 1.0);
                cap = std::min(cap, max_step(t));
            }
            if (cap > 0.0 && std::isfinite(cap))
                steps = std::max(steps, std::ceil(len / cap));
        }
        const int n = std::max(1, int(steps));
        for (int k = 1; k <= n; ++k)
            out.push_back(k == n ? b : a + len * double(k) / n);
    }
    return out;
}

AlgebraPath constant_algebra_path(const Matrix& x)
{
    return AlgebraPath{[x](double) { return x; }, x.size(), {}, {}};
}

AlgebraPath pullback(const OneForm& alpha, const Path& gamma)
{
    AlgebraPath out;
    out.dim = alpha.dim();
    out.knots = gamma.knots();
    out.value = [alpha, gamma](double t) {
        try {
            return alpha(gamma.point(t), gamma.velocity(t));
        } catch (const EvaluationError& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " at path parameter t=%.12g", t);
            throw EvaluationError(e.what() + std::string(buf), t);
        }
    };
    if (!alpha.domain().poles().empty()) {
        const Domain domain = alpha.domain();
        for (Point p : domain.poles()) {
            const auto [d, t] = gamma.closest_approach(p);
            if (d <= 1e-12 * (1.0 + std::abs(p))) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "pullback: path passes through the pole %.6g%+.6gi at t=%.12g",
                              p.real(), p.imag(), t);
                throw EvaluationError(buf, t);
            }
        }
        out.max_step = [domain, gamma](double t) {
            const double speed = std::abs(gamma.velocity(t));
            if (speed == 0.0)
                return std::numeric_limits<double>::infinity();
            return 0.25 * domain.distance_to_poles(gamma.point(t)) / speed;
        };
    }
    return out;
}

Matrix integrate_form(const OneForm& alpha, const Path& gamma, int steps_per_unit)
{
    const AlgebraPath xi = pullback(alpha, gamma);
    const auto grid = xi.grid(steps_per_unit);
    Matrix sum = Matrix::zero(alpha.dim());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double h = grid[k + 1] - grid[k];
        for (std::size_t q = 0; q < 5; ++q)
            sum += (h * GaussLegendre5::weights[q]) * xi(grid[k] + GaussLegendre5::nodes[q] * h);
    }
    return sum;
}

// ---------------------------------------------------------------- Maurer-Cartan

namespace {

struct ChartGrid {
    double x0, y0, hx, hy;
};

ChartGrid chart_grid(const OneForm& alpha, int nx, int ny)
{
    const auto* c = std::get_if<ChartDomain>(&alpha.domain().variant());
    if (!c)
        throw_invalid("mc_residual: form is not defined on a chart");
    if (nx < 3 || ny < 3)
        throw_invalid("mc_residual: grid must be at least 3 x 3");
    return {c->x0, c->y0, (c->x1 - c->x0) / (nx - 1), (c->y1 - c->y0) / (ny - 1)};
}

double mc_node(const OneForm& alpha, const ChartGrid& g, int i, int j)
{
    const Point p(g.x0 + i * g.hx, g.y0 + j * g.hy);
    try {
        const Point ex(1.0, 0.0), ey(0.0, 1.0);
        const Matrix xi1 = alpha(p, ex);
        const Matrix xi2 = alpha(p, ey);
        const Matrix dx_xi2 = (1.0 / (2.0 * g.hx)) * (alpha(p + Point(g.hx, 0.0), ey) - alpha(p - Point(g.hx, 0.0), ey));
        const Matrix dy_xi1 = (1.0 / (2.0 * g.hy)) * (alpha(p + Point(0.0, g.hy), ex) - alpha(p - Point(0.0, g.hy), ex));
        return frobenius_norm(dx_xi2 - dy_xi1 + bracket(xi1, xi2));
    } catch (const EvaluationError& e) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " at grid node (%d, %d) = (%.9g, %.9g)", i, j, p.real(), p.imag());
        throw EvaluationError(e.what() + std::string(buf));
    }
}

} // namespace

double mc_residual_serial(const OneForm& alpha, int nx, int ny)
{
    if (alpha.domain().is_one_dimensional())
        return 0.0;
    const ChartGrid g = chart_grid(alpha, nx, ny);
    double worst = 0.0;
    for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i)
            worst = std::max(worst, mc_node(alpha, g, i, j));
    return worst;
}

double mc_residual(const OneForm& alpha, int nx, int ny)
{
    if (alpha.domain().is_one_dimensional())
        return 0.0;
    const ChartGrid g = chart_grid(alpha, nx, ny);
    double worst = 0.0;
    std::exception_ptr failure;
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (int j = 1; j < ny - 1; ++j) {
        try {
            for (int i = 1; i < nx - 1; ++i)
                worst = std::max(worst, mc_node(alpha, g, i, j));
        } catch (...) {
#pragma omp critical(mapgrp_mc_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return worst;
}

// ---------------------------------------------------------------- Behnke-Stein

std::vector<OneForm> behnke_stein_basis(const Domain& plane)
{
    if (!plane.is_punctured_plane() || plane.poles().empty())
        throw_invalid("behnke_stein_basis: needs a punctured plane with at least one puncture");
    std::vector<OneForm> out;
    for (const Point& p : plane.poles()) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "1/(2*pi*i*(z-(%.17g+%.17g*i)))", p.real(), p.imag());
        out.push_back(OneForm::complex_form(plane, parse_expr(buf, {"z"})));
    }
    return out;
}

std::vector<std::vector<cplx>> duality_matrix(const std::vector<OneForm>& scalar_forms, const std::vector<Path>& loops,
                                              int steps_per_unit)
{
    std::vector<std::vector<cplx>> d(loops.size(), std::vector<cplx>(scalar_forms.size()));
    for (std::size_t i = 0; i < loops.size(); ++i)
        for (std::size_t j = 0; j < scalar_forms.size(); ++j)
            d[i][j] = integrate_form(scalar_forms[j], loops[i], steps_per_unit)(0, 0);
    return d;
}

OneForm scalar_times(const OneForm& beta, const Matrix& x)
{
    if (beta.dim() != 1)
        throw_invalid("scalar_times: beta must be scalar valued");
    const OneForm b = beta;
    return OneForm(beta.domain(), x.size(), FormKind::composite,
                   [b, x](Point m, Point v) { return b(m, v)(0, 0) * x; });
}

} // namespace mapgrp
