#pragma once

#include <vector>

#include "mapgrp/calculus.hpp"
#include "mapgrp/evolution.hpp"
#include "mapgrp/forms.hpp"
#include "mapgrp/group.hpp"
#include "mapgrp/paths.hpp"

namespace mapgrp {

constexpr double kPeriodTol = 1e-6;
constexpr double kLatticeTol = 1e-7;
constexpr double kRoundingMargin = 0.25;

/// One period per generator of pi_1(M, m0).
struct PeriodMap {
    GroupDescriptor group;
    LoopBasis basis;
    std::vector<GroupElement> values;

    double max_distance_to_identity() const;
    /// alpha is integrable iff every period is the identity.
    bool trivial(double period_tol = kPeriodTol) const;
};

/// Generators of pi_1 for punctured planes and the circle; empty for simply connected domains.
LoopBasis fundamental_loops(const Domain& domain, Point base);

/// evol of the pullback of alpha around a closed loop.
GroupElement period(const GroupDescriptor& group, const OneForm& alpha, const Path& loop,
                    const EvolutionControl& control = {});

/// The period map P, generators in parallel.
PeriodMap period_vector(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                        const EvolutionControl& control = {});
/// Serial reference for period_vector.
PeriodMap period_vector_serial(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                               const EvolutionControl& control = {});

bool is_integrable(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                   double period_tol = kPeriodTol, const EvolutionControl& control = {});

/// Promotes a based element to `verified` when its periods are trivial (and to `unverified` otherwise).
BasedMapElement verify_integrability(const BasedMapElement& element, double period_tol = kPeriodTol);

struct WordLetter {
    std::size_t generator;
    int exponent;
};

/// gamma_{g1}^{e1} then gamma_{g2}^{e2} ..., negative exponents traverse backwards.
Path word_loop(const LoopBasis& basis, const std::vector<WordLetter>& word);

/// | per(word loop) - prod per(gamma_j)^{e_j} |_F, the loop traversed first being the left factor.
double homomorphism_check(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                          const std::vector<WordLetter>& word, const EvolutionControl& control = {});

/// sigma(x) = sum_j beta_j . x_j with the Behnke-Stein forms of the plane.
OneForm bs_section(const Domain& plane, const std::vector<Matrix>& x);
/// sigma_alpha(x) = alpha + Ad(f)^{-1}.sigma(x) for f with delta(f) = alpha.
OneForm dressed_section(const FullMapElement& f, const std::vector<Matrix>& x);

/// (P(eps sigma(x)) - P(-eps sigma(x))) / (2 eps) per generator.
std::vector<Matrix> period_derivative_along(const GroupDescriptor& group, const OneForm& direction,
                                            const LoopBasis& basis, double eps = 1e-4,
                                            const EvolutionControl& control = {});

/// Integral of an abelian-valued form around a loop, as a vector in C^d.
std::vector<cplx> abelian_integral(const OneForm& alpha, const Path& loop, int steps_per_unit = 512);
/// q_K of the loop integral.
GroupElement abelian_period(const GroupDescriptor& group, const OneForm& alpha, const Path& loop,
                            int steps_per_unit = 512);
/// True when v lies within lattice_tol (generator coordinates) of a lattice point.
bool lattice_member(const Lattice& lattice, const std::vector<cplx>& v, double lattice_tol = kLatticeTol);
bool abelian_integrable(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                        double lattice_tol = kLatticeTol);

/// Per generator, the lattice coordinates of the loop integral of alpha.
struct ComponentClass {
    std::vector<std::vector<long long>> classes;

    bool operator==(const ComponentClass&) const = default;
    bool trivial() const;
};

/// Throws a precision error when a coordinate is not within `margin` of an integer.
ComponentClass component_class(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                               double margin = kRoundingMargin);

} // namespace mapgrp
