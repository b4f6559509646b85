#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mapgrp/forms.hpp"
#include "mapgrp/group.hpp"

namespace mapgrp {

struct EvolutionControl {
    int steps = 256;                  ///< steps per unit parameter, before knot splitting and pole caps
    bool estimate_error = true;       ///< run the step-doubling pass
    std::optional<double> report_tol; ///< flag results whose error estimate exceeds this
};

struct EvolutionResult {
    GroupElement final;
    std::vector<std::pair<double, GroupElement>> dense;
    double error_estimate = 0.0;
    int steps_used = 0;
    /// False when `report_tol` was set and the error estimate exceeds it.
    bool within_report_tol = true;
};

/**
 * Solves gamma' = gamma xi, gamma(0) = 1 by the two-point Gauss-Magnus method of
 * order four:
 *
 *   Omega = h/2 (xi1 + xi2) + sqrt(3) h^2 / 12 [xi1, xi2],  gamma <- gamma exp(Omega)
 *
 * with xi1, xi2 sampled at the Gauss nodes of each step. Abelian quotients
 * integrate xi directly and reduce modulo the lattice.
 */
EvolutionResult evol(const GroupDescriptor& group, const AlgebraPath& xi, const EvolutionControl& control = {});

/// As `evol`, additionally returning gamma at t = k / samples for k = 0..samples.
EvolutionResult evol_dense(const GroupDescriptor& group, const AlgebraPath& xi, int samples,
                           const EvolutionControl& control = {});

/// evol of the pullback of alpha along gamma.
GroupElement transport(const GroupDescriptor& group, const OneForm& alpha, const Path& gamma,
                       const EvolutionControl& control = {});

/// Endpoint matrix only, without group wrapping or error estimate. Matrix groups.
Matrix evol_matrix(const AlgebraPath& xi, int steps);

/// Integral of xi over [0,1] by composite Gauss-Legendre on the step grid.
Matrix integrate_algebra_path(const AlgebraPath& xi, int steps);

/// | (evol(eps xi) - 1) / eps - integral of xi |_F with eps = 1e-6.
double tangent_at_zero_check(const GroupDescriptor& group, const AlgebraPath& xi, const EvolutionControl& control = {});

} // namespace mapgrp
