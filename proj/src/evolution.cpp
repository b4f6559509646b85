#include "mapgrp/evolution.hpp"

#include <cmath>

#include "mapgrp/errors.hpp"
#include "mapgrp/quadrature.hpp"

namespace mapgrp {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;

Matrix magnus_step(const AlgebraPath& xi, double t, double h)
{
    const Matrix xi1 = xi(t + kNode1 * h);
    const Matrix xi2 = xi(t + kNode2 * h);
    return (0.5 * h) * (xi1 + xi2) + (kSqrt3 * h * h / 12.0) * bracket(xi1, xi2);
}

std::vector<double> refine(const std::vector<double>& grid)
{
    std::vector<double> fine;
    fine.reserve(2 * grid.size());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        fine.push_back(grid[k]);
        fine.push_back(0.5 * (grid[k] + grid[k + 1]));
    }
    fine.push_back(grid.back());
    return fine;
}

// Integrates along `grid`, calling `record(k, gamma)` after each breakpoint k >= 1.
template <class Record>
Matrix run_magnus(const AlgebraPath& xi, const std::vector<double>& grid, Record&& record)
{
    Matrix gamma = Matrix::identity(xi.dim);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double h = grid[k + 1] - grid[k];
        gamma = gamma * mat_exp(magnus_step(xi, grid[k], h));
        if (!gamma.all_finite())
            throw Error(ErrorKind::numeric_blowup, "evol: non-finite state at step " + std::to_string(k));
        record(k + 1, gamma);
    }
    return gamma;
}

template <class Record>
Matrix run_quadrature(const AlgebraPath& xi, const std::vector<double>& grid, Record&& record)
{
    Matrix sum = Matrix::zero(xi.dim);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double h = grid[k + 1] - grid[k];
        for (std::size_t q = 0; q < 5; ++q)
            sum += (h * GaussLegendre5::weights[q]) * xi(grid[k] + GaussLegendre5::nodes[q] * h);
        if (!sum.all_finite())
            throw Error(ErrorKind::numeric_blowup, "evol: non-finite integral at step " + std::to_string(k));
        record(k + 1, sum);
    }
    return sum;
}

GroupElement wrap(const GroupDescriptor& group, Matrix m)
{
    if (group.is_abelian_quotient())
        return GroupElement(group, Matrix::diagonal(m.diag()));
    return GroupElement(group, std::move(m));
}

EvolutionResult evolve_on_grid(const GroupDescriptor& group, const AlgebraPath& xi, const std::vector<double>& grid,
                               const std::vector<double>& sample_times, const EvolutionControl& control)
{
    if (xi.dim != group.matrix_dim())
        throw_invalid("evol: algebra path dimension does not match " + group.name());
    const bool abelian = group.is_abelian_quotient();

    std::vector<std::pair<double, GroupElement>> dense;
    std::size_t next_sample = 0;
    auto record = [&](std::size_t k, const Matrix& state) {
        while (next_sample < sample_times.size() && std::abs(sample_times[next_sample] - grid[k]) < 1e-13) {
            dense.emplace_back(sample_times[next_sample], wrap(group, state));
            ++next_sample;
        }
    };
    if (!sample_times.empty() && sample_times.front() == 0.0) {
        dense.emplace_back(0.0, GroupElement::identity(group));
        next_sample = 1;
    }

    const Matrix coarse = abelian ? run_quadrature(xi, grid, record) : run_magnus(xi, grid, record);
    EvolutionResult result{wrap(group, coarse), std::move(dense), 0.0, int(grid.size()) - 1, true};
    if (control.estimate_error) {
        const auto fine_grid = refine(grid);
        auto ignore = [](std::size_t, const Matrix&) {};
        const Matrix fine = abelian ? run_quadrature(xi, fine_grid, ignore) : run_magnus(xi, fine_grid, ignore);
        result.error_estimate = distance(coarse, fine);
    }
    if (control.report_tol)
        result.within_report_tol = result.error_estimate <= *control.report_tol;
    return result;
}

} // namespace

EvolutionResult evol(const GroupDescriptor& group, const AlgebraPath& xi, const EvolutionControl& control)
{
    return evolve_on_grid(group, xi, xi.grid(control.steps), {}, control);
}

EvolutionResult evol_dense(const GroupDescriptor& group, const AlgebraPath& xi, int samples,
                           const EvolutionControl& control)
{
    if (samples < 1)
        throw_invalid("evol_dense: samples must be >= 1");
    std::vector<double> times;
    for (int k = 0; k <= samples; ++k)
        times.push_back(double(k) / samples);
    AlgebraPath split = xi;
    for (int k = 1; k < samples; ++k)
        split.knots.push_back(times[std::size_t(k)]);
    return evolve_on_grid(group, split, split.grid(control.steps), times, control);
}

GroupElement transport(const GroupDescriptor& group, const OneForm& alpha, const Path& gamma,
                       const EvolutionControl& control)
{
    return evol(group, pullback(alpha, gamma), control).final;
}

Matrix evol_matrix(const AlgebraPath& xi, int steps)
{
    return run_magnus(xi, xi.grid(steps), [](std::size_t, const Matrix&) {});
}

Matrix integrate_algebra_path(const AlgebraPath& xi, int steps)
{
    return run_quadrature(xi, xi.grid(steps), [](std::size_t, const Matrix&) {});
}

double tangent_at_zero_check(const GroupDescriptor& group, const AlgebraPath& xi, const EvolutionControl& control)
{
    if (group.is_abelian_quotient())
        throw_invalid("tangent_at_zero_check: defined for matrix groups");
    constexpr double eps = 1e-6;
    AlgebraPath scaled = xi;
    scaled.value = [xi](double t) { return eps * xi(t); };
    const Matrix endpoint = evol_matrix(scaled, control.steps);
    const Matrix quotient = (1.0 / eps) * (endpoint - Matrix::identity(xi.dim));
    return distance(quotient, integrate_algebra_path(xi, control.steps));
}

} // namespace mapgrp
