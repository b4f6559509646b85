#include "mapgrp/quadrature.hpp"

#include <cmath>

namespace mapgrp {

namespace {
// Roots of P_5 mapped from [-1,1] to [0,1].
constexpr double kX1 = 0.5384693101056830910363144;
constexpr double kX2 = 0.9061798459386639927976269;
constexpr double kW0 = 0.5688888888888888888888889;
constexpr double kW1 = 0.4786286704993664680412915;
constexpr double kW2 = 0.2369268850561890875142640;
} // namespace

const std::array<double, 5> GaussLegendre5::nodes = {
    0.5 * (1.0 - kX2), 0.5 * (1.0 - kX1), 0.5, 0.5 * (1.0 + kX1), 0.5 * (1.0 + kX2),
};
const std::array<double, 5> GaussLegendre5::weights = {
    0.5 * kW2, 0.5 * kW1, 0.5 * kW0, 0.5 * kW1, 0.5 * kW2,
};

cplx integrate_scalar(const std::function<cplx(double)>& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    cplx sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double t0 = a + p * h;
        cplx panel = 0.0;
        for (std::size_t k = 0; k < 5; ++k)
            panel += GaussLegendre5::weights[k] * f(t0 + GaussLegendre5::nodes[k] * h);
        sum += h * panel;
    }
    return sum;
}

Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    Matrix sum;
    for (int p = 0; p < panels; ++p) {
        const double t0 = a + p * h;
        for (std::size_t k = 0; k < 5; ++k) {
            Matrix v = (h * GaussLegendre5::weights[k]) * f(t0 + GaussLegendre5::nodes[k] * h);
            if (sum.size() == 0)
                sum = std::move(v);
            else
                sum += v;
        }
    }
    return sum;
}

} // namespace mapgrp
