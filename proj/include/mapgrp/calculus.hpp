#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mapgrp/evolution.hpp"
#include "mapgrp/forms.hpp"
#include "mapgrp/group.hpp"
#include "mapgrp/paths.hpp"

namespace mapgrp {

enum class Integrability { verified, unverified, relative_to_path };

const char* to_string(Integrability status);

/**
 * @brief A based map f : M -> K with f(m0) = 1, stored as its logarithmic derivative.
 *
 * Interval domains and planes without punctures are simply connected and 1-D or
 * holomorphic, so their forms are integrable and the status is promoted to
 * `verified` on construction.
 */
class BasedMapElement {
public:
    BasedMapElement(GroupDescriptor group, OneForm form, Point base,
                    Integrability status = Integrability::unverified, EvolutionControl control = {});

    const GroupDescriptor& group() const noexcept { return group_; }
    const OneForm& form() const noexcept { return form_; }
    const Domain& domain() const noexcept { return form_.domain(); }
    Point base() const noexcept { return base_; }
    Integrability status() const noexcept { return status_; }
    const EvolutionControl& control() const noexcept { return control_; }

    BasedMapElement with_status(Integrability status) const;
    BasedMapElement with_form(OneForm form) const;

    /// Evol(alpha)(m) along the canonical path from the base point, memoized per point.
    Matrix evol_at(Point m) const;

private:
    struct Cache;
    GroupDescriptor group_;
    OneForm form_;
    Point base_;
    Integrability status_;
    EvolutionControl control_;
    std::shared_ptr<Cache> cache_;
};

/// (k, f_*) in K x| C_*(M, K): the map m -> k f_*(m).
struct FullMapElement {
    GroupElement k;
    BasedMapElement based;
};

/// alpha * beta := beta + Ad(Evol(beta))^{-1}.alpha, so that Evol(alpha * beta) = Evol(alpha) Evol(beta).
BasedMapElement multiply(const BasedMapElement& alpha, const BasedMapElement& beta);
/// alpha^{-1} = -Ad(Evol(alpha)).alpha.
BasedMapElement inverse(const BasedMapElement& alpha);
/// (k1, a1)(k2, a2) = (k1 k2, (Ad(k2)^{-1}.a1) * a2).
FullMapElement multiply(const FullMapElement& f, const FullMapElement& g);

/// The zero form, i.e. the constant map 1.
BasedMapElement identity_element(const GroupDescriptor& group, const Domain& domain, Point base,
                                 const EvolutionControl& control = {});

/**
 * f(m) = k . evol(gamma^* alpha) for a path gamma from the base point to m.
 *
 * Without an explicit path the form must be verified integrable, otherwise the
 * value depends on the path and an ambiguity error is raised.
 */
GroupElement evaluate(const FullMapElement& f, Point m, const std::optional<Path>& path = std::nullopt);

/// Ad(f)^{-1}.alpha + delta(f).
OneForm gauge_action(const OneForm& alpha, const FullMapElement& f);

/**
 * @brief Group-valued samples on a uniform grid.
 *
 * Interval: nx nodes from a to b. Circle: nx nodes at angles 2 pi k / nx
 * (periodic). Chart: nx x ny nodes covering the rectangle, row-major in y.
 */
struct SampledMap {
    Domain domain;
    GroupDescriptor group;
    int nx = 0;
    int ny = 1;
    double x0 = 0.0, hx = 0.0, y0 = 0.0, hy = 0.0;
    bool periodic = false;
    std::vector<Matrix> values;

    const Matrix& at(int i, int j = 0) const { return values[std::size_t(j) * std::size_t(nx) + std::size_t(i)]; }
    Point node(int i, int j = 0) const { return {x0 + i * hx, y0 + j * hy}; }
};

SampledMap sample_map(const Domain& domain, const GroupDescriptor& group, const std::function<Matrix(Point)>& f,
                      int nx, int ny = 1);
SampledMap pointwise_product(const SampledMap& f1, const SampledMap& f2);

/// Logarithmic derivative at each node: first = dx (or dt) component, second = dy component.
std::vector<std::pair<Matrix, Matrix>> log_derivative_nodes(const SampledMap& f);

/**
 * delta(f) = f^{-1} df from samples by central differences of
 * log(f(p)^{-1} f(p +- h e)), second order one-sided at non-periodic ends; the
 * returned form interpolates nodes linearly (bilinearly on charts).
 * Throws sampling-resolution when neighbours differ by 0.5 or more from identity.
 */
OneForm log_derivative_from_samples(const SampledMap& f);

/// max over interior nodes of | delta(f1 f2) - Ad(f2)^{-1} delta(f1) - delta(f2) |_F.
double cocycle_residual(const SampledMap& f1, const SampledMap& f2);

/// exp_K applied at each point.
std::vector<Matrix> pointwise_exp(const MatrixExpr& xi, const std::vector<Point>& points);
/// Principal log at each sample; requires |f(m) - 1|_F < 1.
std::vector<Matrix> pointwise_log_lift(const std::vector<Matrix>& values);

} // namespace mapgrp
