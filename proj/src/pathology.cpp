#include "mapgrp/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "mapgrp/errors.hpp"

namespace mapgrp {

MatrixExpr pathology_map(int n)
{
    const std::string w = "exp(z - " + std::to_string(n) + ")";
    const std::string text = "[[exp(i*pi*" + w + "), " + w + "*exp(i*pi*" + w + ")], [0, exp(-i*pi*" + w + ")]]";
    return parse_expr(text, {"z"});
}

std::vector<cplx> disk_grid(double radius, int per_axis, int boundary)
{
    std::vector<cplx> pts;
    for (int i = 0; i < per_axis; ++i) {
        for (int j = 0; j < per_axis; ++j) {
            const cplx z(radius * (2.0 * i / (per_axis - 1) - 1.0), radius * (2.0 * j / (per_axis - 1) - 1.0));
            if (std::abs(z) <= radius)
                pts.push_back(z);
        }
    }
    for (int k = 0; k < boundary; ++k)
        pts.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / boundary));
    return pts;
}

double sup_deviation(const MatrixExpr& h, const std::vector<cplx>& points)
{
    const Matrix one = Matrix::identity(h.size());
    const long count = long(points.size());
    double worst = 0.0;
    std::exception_ptr failure;
#pragma omp parallel for reduction(max : worst)
    for (long k = 0; k < count; ++k) {
        try {
            worst = std::max(worst, distance(h.evaluate(points[std::size_t(k)]), one));
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return worst;
}

double sup_deviation_serial(const MatrixExpr& h, const std::vector<cplx>& points)
{
    const Matrix one = Matrix::identity(h.size());
    double worst = 0.0;
    for (cplx z : points)
        worst = std::max(worst, distance(h.evaluate(z), one));
    return worst;
}

std::vector<PathologyRow> exp_pathology(const std::vector<int>& n_list, double radius)
{
    if (!(radius >= 1.0))
        throw_invalid("exp_pathology: radius must be >= 1");
    const auto sl2 = GroupDescriptor::special_linear(2);
    const auto grid = disk_grid(radius);
    std::vector<PathologyRow> rows;
    for (int n : n_list) {
        if (n < 1)
            throw_invalid("exp_pathology: n must be >= 1");
        const MatrixExpr h = pathology_map(n);
        PathologyRow row;
        row.n = n;
        row.sup_deviation = sup_deviation(h, grid);
        const Matrix at_n = h.evaluate(cplx(double(n)));
        row.trace_at_n = trace(at_n);
        row.in_exp_image = is_in_exp_image(GroupElement(sl2, at_n)).in_image;
        rows.push_back(row);
    }
    return rows;
}

} // namespace mapgrp
