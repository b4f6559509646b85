#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mapgrp/matrix.hpp"

namespace mapgrp {

enum class Field { real, complex };

/// Discrete subgroup of C^d spanned by R-linearly independent generators.
class Lattice {
public:
    Lattice(std::size_t dim, std::vector<std::vector<cplx>> generators);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::vector<cplx>>& generators() const noexcept { return generators_; }
    std::size_t rank() const noexcept { return generators_.size(); }

    /// Real coordinates of the orthogonal projection of v onto the real span of the generators.
    std::vector<double> coordinates(const std::vector<cplx>& v) const;
    std::vector<cplx> combination(const std::vector<double>& coeffs) const;

private:
    std::size_t dim_;
    std::vector<std::vector<cplx>> generators_;
    std::vector<double> gram_inverse_; // rank x rank, row-major
};

/// v minus the nearest lattice point in generator coordinates (ties round half up).
std::vector<cplx> quotient_reduce(const Lattice& lattice, const std::vector<cplx>& v);

struct GeneralLinear {
    std::size_t n;
    Field field;
};
struct SpecialLinear {
    std::size_t n;
};
struct AbelianQuotient {
    Lattice lattice;
};

/**
 * @brief The target group K.
 *
 * Abelian quotients k/Gamma with k = C^d embed their algebra as diagonal d x d
 * matrices, so forms with values in k are ordinary matrix-valued forms.
 */
class GroupDescriptor {
public:
    using Variant = std::variant<GeneralLinear, SpecialLinear, AbelianQuotient>;

    static GroupDescriptor general_linear(std::size_t n, Field field = Field::complex);
    static GroupDescriptor special_linear(std::size_t n);
    static GroupDescriptor abelian(std::size_t dim, std::vector<std::vector<cplx>> lattice_generators);
    /// C^x realized as C / 2 pi i Z.
    static GroupDescriptor c_star();

    const Variant& variant() const noexcept { return v_; }
    bool is_abelian_quotient() const noexcept { return std::holds_alternative<AbelianQuotient>(v_); }
    const Lattice& lattice() const;
    /// Matrix size used for algebra values.
    std::size_t matrix_dim() const;
    std::string name() const;

    /// Throws invalid-argument unless x lies in the Lie algebra.
    void require_algebra(const Matrix& x, const Tolerances& tol = {}) const;
    bool in_algebra(const Matrix& x, const Tolerances& tol = {}) const;

    bool operator==(const GroupDescriptor& o) const;

private:
    explicit GroupDescriptor(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// An element of K. Matrix groups carry the matrix; abelian quotients carry the
/// reduced representative as a diagonal matrix.
class GroupElement {
public:
    GroupElement(GroupDescriptor group, Matrix payload, const Tolerances& tol = {});

    static GroupElement identity(const GroupDescriptor& group);

    const GroupDescriptor& group() const noexcept { return group_; }
    const Matrix& matrix() const noexcept { return payload_; }
    /// Coset representative of an abelian element.
    std::vector<cplx> vector() const { return payload_.diag(); }

    double distance_to_identity() const;

private:
    GroupDescriptor group_;
    Matrix payload_;
};

GroupElement group_multiply(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& a);
double group_distance(const GroupElement& a, const GroupElement& b);

/// exp_K(x). For abelian quotients x is reduced modulo the lattice.
GroupElement exp_to_group(const GroupDescriptor& group, const Matrix& x, const Tolerances& tol = {});

struct ExpImageResult {
    bool in_image = false;
    std::optional<Matrix> witness;
};

/**
 * Decides g in exp_K(k) for the catalog groups.
 *
 * GL_n(C) and abelian quotients: always true. SL_2(C): false exactly when
 * tr g = -2 and g != -I. Other SL_n and GL_n(R) raise an unsupported error.
 */
ExpImageResult is_in_exp_image(const GroupElement& g, const Tolerances& tol = {});

} // namespace mapgrp
