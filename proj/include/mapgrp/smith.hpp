#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mapgrp/group.hpp"

namespace mapgrp {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// D = U R V with U, V unimodular and D diagonal, d1 | d2 | ... , all d_i >= 0.
struct SmithForm {
    IntMatrix U, D, V;
    /// Diagonal of D, min(rows, cols) entries.
    std::vector<BigInt> invariant_factors() const;
};

/// Exact Smith normal form of an integer matrix (arbitrary precision throughout).
SmithForm smith_normal_form(const IntMatrix& R);
SmithForm smith_normal_form(const std::vector<std::vector<long long>>& R);

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
BigInt int_determinant(const IntMatrix& a);

/// A = Z^n / image(relations), relations an n x m integer matrix (columns are relations).
struct AbelianPresentation {
    std::size_t n = 0;
    IntMatrix relations;

    AbelianPresentation(std::size_t n, IntMatrix relations);
    std::size_t relation_count() const { return relations.empty() ? 0 : relations.front().size(); }
};

/// Rank of Hom(A, Z): n minus the number of nonzero invariant factors.
std::size_t hom_rank(const AbelianPresentation& a);

struct DiscretenessReport {
    std::vector<BigInt> invariant_factors;
    std::size_t hom_rank = 0;
    std::size_t lattice_rank = 0;
    bool hom_z_finitely_generated = true;
    bool discrete = true;
    std::string verdict;
};

/// Decides whether Hom(A, Gamma) is discrete in Hom(A, k) for a finitely presented A.
DiscretenessReport discreteness_report(const AbelianPresentation& a, const Lattice& gamma);

std::string to_string(const BigInt& x);

} // namespace mapgrp
