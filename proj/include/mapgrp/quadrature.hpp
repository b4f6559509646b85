#pragma once

#include <array>
#include <functional>

#include "mapgrp/matrix.hpp"

namespace mapgrp {

/// Five-point Gauss-Legendre rule on [0,1].
struct GaussLegendre5 {
    static const std::array<double, 5> nodes;
    static const std::array<double, 5> weights;
};

/// Composite 5-point Gauss-Legendre over [a,b] with `panels` equal panels.
cplx integrate_scalar(const std::function<cplx(double)>& f, double a, double b, int panels);
Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b, int panels);

} // namespace mapgrp
