#pragma once

#include <vector>

#include "mapgrp/expr.hpp"
#include "mapgrp/group.hpp"

namespace mapgrp {

/// h_n(z) = f(exp(z - n)) with f(w) = exp(i pi w H) exp(w E), H = diag(1,-1), E = [[0,1],[0,0]].
MatrixExpr pathology_map(int n);

struct PathologyRow {
    int n = 0;
    double sup_deviation = 0.0; ///< sup over the disk grid of |h_n(z) - 1|_F
    bool in_exp_image = true;   ///< verdict for h_n(n)
    cplx trace_at_n;
};

/// Sample points of the closed disk |z| <= radius: a square grid clipped to the disk plus the boundary circle.
std::vector<cplx> disk_grid(double radius, int per_axis = 201, int boundary = 720);

/// Max of |h(z) - 1|_F over points, OpenMP-parallel.
double sup_deviation(const MatrixExpr& h, const std::vector<cplx>& points);
double sup_deviation_serial(const MatrixExpr& h, const std::vector<cplx>& points);

std::vector<PathologyRow> exp_pathology(const std::vector<int>& n_list, double radius);

} // namespace mapgrp
