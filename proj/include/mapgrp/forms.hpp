#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapgrp/expr.hpp"
#include "mapgrp/matrix.hpp"
#include "mapgrp/paths.hpp"

namespace mapgrp {

enum class FormKind {
    complex_form,  ///< xi(z) dz on a plane domain
    interval_form, ///< xi(t) dt on an interval or the circle (t is the angle)
    chart_form,    ///< xi1 dx + xi2 dy on a rectangle
    dressed,       ///< Ad(d(m))^{-1} applied to a base form
    composite,     ///< sums, scalings and other black-box combinations
};

/**
 * @brief Matrix-valued 1-form on a model domain.
 *
 * Every variant honors the same contract: `(point, tangent) -> algebra element`,
 * linear in the tangent. Tangents are complex numbers; on 1-D domains only the
 * real part is used, on charts the real and imaginary parts are the dx and dy
 * components.
 */
class OneForm {
public:
    using Evaluator = std::function<Matrix(Point, Point)>;

    OneForm(Domain domain, std::size_t dim, FormKind kind, Evaluator eval, std::optional<std::string> text = {});

    static OneForm zero(const Domain& domain, std::size_t dim);
    /// xi(z) dz with xi an expression in `z`.
    static OneForm complex_form(const Domain& domain, MatrixExpr xi);
    static OneForm complex_form(const Domain& domain, std::size_t dim, std::function<Matrix(Point)> xi);
    /// xi(t) dt with xi an expression in `t`.
    static OneForm interval_form(const Domain& domain, MatrixExpr xi);
    static OneForm interval_form(const Domain& domain, std::size_t dim, std::function<Matrix(double)> xi);
    /// xi1 dx + xi2 dy with expressions in `x`, `y`.
    static OneForm chart_form(const Domain& domain, MatrixExpr dx, MatrixExpr dy);
    static OneForm chart_form(const Domain& domain, std::size_t dim, std::function<Matrix(Point)> dx,
                              std::function<Matrix(Point)> dy);
    /// Parses `text` with the variable appropriate for the domain (z, t, or x,y).
    static OneForm parse(const Domain& domain, const std::string& text);
    static OneForm parse_chart(const Domain& domain, const std::string& dx, const std::string& dy);

    /// m -> Ad(dressing(m))^{-1}.base_m.
    static OneForm dressed(const OneForm& base, std::function<Matrix(Point)> dressing);

    Matrix operator()(Point m, Point v) const;
    const Domain& domain() const noexcept { return *domain_; }
    std::size_t dim() const noexcept { return dim_; }
    FormKind kind() const noexcept { return kind_; }
    /// Source text of an expression-backed form.
    const std::optional<std::string>& text() const noexcept { return text_; }

    friend OneForm operator+(const OneForm& a, const OneForm& b);
    friend OneForm operator-(const OneForm& a, const OneForm& b);
    friend OneForm operator*(cplx s, const OneForm& a);
    OneForm operator-() const;

private:
    std::shared_ptr<const Domain> domain_;
    std::size_t dim_;
    FormKind kind_;
    std::shared_ptr<const Evaluator> eval_;
    std::optional<std::string> text_;
};

/**
 * @brief A curve t -> xi(t) in the Lie algebra over [0,1].
 *
 * Knots are mandatory step boundaries for integrators; `max_step`, when set,
 * caps the parameter step near poles.
 */
struct AlgebraPath {
    std::function<Matrix(double)> value;
    std::size_t dim = 0;
    std::vector<double> knots;
    std::function<double(double)> max_step;

    Matrix operator()(double t) const { return value(t); }

    /// Step breakpoints: uniform inside each knot interval with at least
    /// `steps_per_unit` steps per unit parameter and respecting `max_step`.
    std::vector<double> grid(int steps_per_unit) const;
};

AlgebraPath constant_algebra_path(const Matrix& x);

/// t -> alpha_{gamma(t)}(gamma'(t)). Evaluation failures report the offending t.
AlgebraPath pullback(const OneForm& alpha, const Path& gamma);

/// Integral of alpha along gamma by composite 5-point Gauss-Legendre on the step grid.
Matrix integrate_form(const OneForm& alpha, const Path& gamma, int steps_per_unit = 256);

/**
 * Maurer-Cartan residual max over interior nodes of
 * |d_x xi2 - d_y xi1 + [xi1, xi2]|_F by central differences with the grid spacing
 * as step. Forms on 1-D domains return exactly 0. OpenMP-parallel over rows.
 */
double mc_residual(const OneForm& alpha, int nx, int ny);
/// Serial reference for mc_residual.
double mc_residual_serial(const OneForm& alpha, int nx, int ny);

/// beta_j = dz / (2 pi i (z - p_j)), one scalar form per puncture.
std::vector<OneForm> behnke_stein_basis(const Domain& plane);

/// Matrix of integrals of scalar forms over loops: entry (i, j) = integral over loop i of beta_j.
std::vector<std::vector<cplx>> duality_matrix(const std::vector<OneForm>& scalar_forms, const std::vector<Path>& loops,
                                              int steps_per_unit = 256);

/// beta . x for scalar beta.
OneForm scalar_times(const OneForm& beta, const Matrix& x);

/// Variable names a form expression uses on `domain`.
std::vector<std::string> form_variables(const Domain& domain);

} // namespace mapgrp
