#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mapgrp {

using cplx = std::complex<double>;

/// Numerical thresholds shared by the kernel and everything built on it.
struct Tolerances {
    double eq_tol = 1e-9;       ///< Frobenius distance below which two elements are equal
    double exp_log_tol = 1e-13; ///< truncation target for exp/log series
};

/**
 * @brief Dense square complex matrix.
 *
 * Holds group elements of K <= GL_n(C) as well as Lie algebra elements.
 * Storage is row-major. A default constructed matrix has dimension 0.
 */
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
    Matrix(std::size_t n, std::vector<cplx> entries);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t n) { return Matrix(n); }
    static Matrix diagonal(std::span<const cplx> d);
    static Matrix scalar(cplx s) { return Matrix(1, {s}); }

    std::size_t size() const noexcept { return n_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const cplx> entries() const noexcept { return a_; }
    std::span<cplx> entries() noexcept { return a_; }

    bool all_finite() const noexcept;
    std::vector<cplx> diag() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);
    Matrix operator-() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(Matrix a, cplx s);

cplx trace(const Matrix& a);
double frobenius_norm(const Matrix& a);
double distance(const Matrix& a, const Matrix& b);
inline bool is_close(const Matrix& a, const Matrix& b, double tol) { return distance(a, b) < tol; }

cplx determinant(const Matrix& a);
/// Throws invalid-argument if `a` is numerically singular.
Matrix inverse(const Matrix& a);
/// Solves a * X = b by LU with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);

/// Matrix exponential by scaling and squaring with a diagonal [8/8] Pade approximant.
Matrix mat_exp(const Matrix& x);

/// Principal square root (Denman-Beavers). Spectrum must avoid the closed negative axis.
Matrix mat_sqrt_principal(const Matrix& g);

/**
 * Principal logarithm by inverse scaling and squaring: repeated principal square
 * roots until the matrix is close to the identity, then the Mercator series.
 * The result has spectrum in the strip |Im| < pi.
 *
 * Throws branch-cut error when an eigenvalue lies on the closed negative real axis
 * and invalid-argument when `g` is singular.
 */
Matrix mat_log_principal(const Matrix& g, const Tolerances& tol = {});

/// Ad(g)x = g x g^{-1}.
Matrix ad_conjugate(const Matrix& g, const Matrix& x);
/// Ad(g)^{-1}x = g^{-1} x g.
Matrix ad_conjugate_inverse(const Matrix& g, const Matrix& x);

/// [x, y] = xy - yx.
Matrix bracket(const Matrix& x, const Matrix& y);

/// Coefficients c_0..c_n of det(lambda I - a), c_n = 1 (Faddeev-LeVerrier).
std::vector<cplx> characteristic_polynomial(const Matrix& a);
/// Eigenvalues from the characteristic polynomial, polished by Newton steps.
std::vector<cplx> eigenvalues(const Matrix& a);

} // namespace mapgrp
