#include "mapgrp/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "mapgrp/errors.hpp"

namespace mapgrp {

namespace {

void require_same_size(const Matrix& a, const Matrix& b, const char* op)
{
    if (a.size() != b.size())
        throw_invalid(std::string(op) + ": dimension mismatch " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
}

struct LU {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

LU lu_decompose(const Matrix& a)
{
    const std::size_t n = a.size();
    LU f{a, std::vector<std::size_t>(n), 1, false};
    for (std::size_t i = 0; i < n; ++i)
        f.perm[i] = i;
    const double scale = std::max(frobenius_norm(a), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(f.lu(i, k)) > best) {
                best = std::abs(f.lu(i, k));
                piv = i;
            }
        }
        if (best <= 1e-14 * scale) {
            f.singular = true;
            return f;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j)
                f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

Matrix lu_solve(const LU& f, const Matrix& b)
{
    const std::size_t n = b.size();
    Matrix x(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<cplx> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = b(f.perm[i], col);
            for (std::size_t j = 0; j < i; ++j)
                s -= f.lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j)
                s -= f.lu(ii, j) * x(j, col);
            x(ii, col) = s / f.lu(ii, ii);
        }
    }
    return x;
}

// [8/8] diagonal Pade coefficients c_k = (16-k)! 8! / (16! k! (8-k)!).
constexpr std::array<double, 9> kPade8 = {
    1.0,
    1.0 / 2.0,
    7.0 / 60.0,
    1.0 / 60.0,
    1.0 / 624.0,
    1.0 / 9360.0,
    1.0 / 205920.0,
    1.0 / 7207200.0,
    1.0 / 518918400.0,
};

std::vector<cplx> poly_roots(const std::vector<cplx>& c)
{
    // Aberth-Ehrlich iteration on the monic polynomial sum c_k x^k.
    const std::size_t n = c.size() - 1;
    auto eval = [&](cplx x, cplx& dp) {
        cplx p = c[n];
        dp = 0.0;
        for (std::size_t k = n; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        return p;
    };
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        radius = std::max(radius, std::abs(c[k]));
    radius = 1.0 + radius;
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * (double(k) + 0.25) / double(n) + 0.4;
        z[k] = std::polar(0.5 * radius, angle);
    }
    for (int iter = 0; iter < 500; ++iter) {
        double change = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx dp;
            const cplx p = eval(z[k], dp);
            if (p == 0.0)
                continue;
            const cplx ratio = p / dp;
            cplx sum = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            const cplx w = ratio / (1.0 - ratio * sum);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                z[k] -= w;
                change = std::max(change, std::abs(w) / std::max(1.0, std::abs(z[k])));
            }
        }
        if (change < 1e-16)
            break;
    }
    return z;
}

} // namespace

Matrix::Matrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries))
{
    if (a_.size() != n * n)
        throw_invalid("Matrix: expected " + std::to_string(n * n) + " entries, got " +
                      std::to_string(a_.size()));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size())
{
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw_invalid("Matrix: literal is not square");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d)
{
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

bool Matrix::all_finite() const noexcept
{
    return std::all_of(a_.begin(), a_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

std::vector<cplx> Matrix::diag() const
{
    std::vector<cplx> d(n_);
    for (std::size_t i = 0; i < n_; ++i)
        d[i] = (*this)(i, i);
    return d;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
    require_same_size(*this, o, "operator+");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o)
{
    require_same_size(*this, o, "operator-");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s)
{
    for (auto& z : a_)
        z *= s;
    return *this;
}

Matrix Matrix::operator-() const
{
    Matrix r(*this);
    r *= -1.0;
    return r;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, cplx s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require_same_size(a, b, "operator*");
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

cplx trace(const Matrix& a)
{
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        t += a(i, i);
    return t;
}

double frobenius_norm(const Matrix& a)
{
    double s = 0.0;
    for (const auto& z : a.entries())
        s += std::norm(z);
    return std::sqrt(s);
}

double distance(const Matrix& a, const Matrix& b)
{
    require_same_size(a, b, "distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        s += std::norm(a.entries()[k] - b.entries()[k]);
    return std::sqrt(s);
}

cplx determinant(const Matrix& a)
{
    if (a.size() == 0)
        return 1.0;
    const LU f = lu_decompose(a);
    if (f.singular)
        return 0.0;
    cplx d = double(f.sign);
    for (std::size_t i = 0; i < a.size(); ++i)
        d *= f.lu(i, i);
    return d;
}

Matrix solve(const Matrix& a, const Matrix& b)
{
    require_same_size(a, b, "solve");
    const LU f = lu_decompose(a);
    if (f.singular)
        throw_invalid("solve: matrix is singular");
    return lu_solve(f, b);
}

Matrix inverse(const Matrix& a)
{
    if (!a.all_finite())
        throw_invalid("inverse: non-finite entries");
    const LU f = lu_decompose(a);
    if (f.singular)
        throw_invalid("inverse: matrix is singular");
    return lu_solve(f, Matrix::identity(a.size()));
}

Matrix mat_exp(const Matrix& x)
{
    if (!x.all_finite())
        throw_invalid("mat_exp: non-finite entries");
    const std::size_t n = x.size();
    const double norm = frobenius_norm(x);
    int squarings = 0;
    if (norm >= 0.5)
        squarings = int(std::floor(std::log2(norm / 0.5))) + 1;
    const Matrix a = std::ldexp(1.0, -squarings) * x;

    // Even/odd split: N = V + U, D = V - U.
    const Matrix a2 = a * a;
    Matrix power = Matrix::identity(n);
    Matrix even = Matrix::identity(n);
    Matrix odd = kPade8[1] * a;
    for (int k = 2; k <= 8; k += 2) {
        power = power * a2;
        even += kPade8[std::size_t(k)] * power;
        if (k + 1 <= 8)
            odd += kPade8[std::size_t(k + 1)] * (power * a);
    }
    Matrix result = solve(even - odd, even + odd);
    for (int s = 0; s < squarings; ++s)
        result = result * result;
    return result;
}

Matrix mat_sqrt_principal(const Matrix& g)
{
    const std::size_t n = g.size();
    Matrix y = g;
    Matrix z = Matrix::identity(n);
    for (int iter = 0; iter < 100; ++iter) {
        const Matrix y_inv = inverse(y);
        const Matrix z_inv = inverse(z);
        Matrix y_next = 0.5 * (y + z_inv);
        Matrix z_next = 0.5 * (z + y_inv);
        const double change = distance(y_next, y);
        y = std::move(y_next);
        z = std::move(z_next);
        if (!y.all_finite())
            break;
        if (change <= 1e-15 * std::max(1.0, frobenius_norm(y)))
            return y;
    }
    throw Error(ErrorKind::branch_cut, "mat_sqrt_principal: Denman-Beavers iteration did not converge");
}

Matrix mat_log_principal(const Matrix& g, const Tolerances& tol)
{
    if (!g.all_finite())
        throw_invalid("mat_log_principal: non-finite entries");
    const std::size_t n = g.size();
    if (lu_decompose(g).singular)
        throw_invalid("mat_log_principal: matrix is singular");
    for (const cplx& lambda : eigenvalues(g)) {
        if (lambda.real() < 0.0 && std::abs(lambda.imag()) <= 1e-10 * std::abs(lambda))
            throw Error(ErrorKind::branch_cut,
                        "mat_log_principal: eigenvalue on the closed negative real axis");
    }

    const Matrix id = Matrix::identity(n);
    Matrix z = g;
    int roots = 0;
    while (distance(z, id) > 0.25) {
        if (roots > 60)
            throw Error(ErrorKind::branch_cut, "mat_log_principal: square roots failed to approach identity");
        z = mat_sqrt_principal(z);
        ++roots;
    }

    const Matrix e = z - id;
    Matrix term = e;
    Matrix sum = e;
    for (int j = 2; j < 400; ++j) {
        term = term * e;
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        const Matrix add = (sign / double(j)) * term;
        sum += add;
        if (frobenius_norm(add) < 1e-3 * tol.exp_log_tol * std::max(1e-3, frobenius_norm(sum)))
            break;
    }
    return std::ldexp(1.0, roots) * sum;
}

Matrix ad_conjugate(const Matrix& g, const Matrix& x)
{
    return g * x * inverse(g);
}

Matrix ad_conjugate_inverse(const Matrix& g, const Matrix& x)
{
    return solve(g, x * g);
}

Matrix bracket(const Matrix& x, const Matrix& y)
{
    require_same_size(x, y, "bracket");
    return x * y - y * x;
}

std::vector<cplx> characteristic_polynomial(const Matrix& a)
{
    const std::size_t n = a.size();
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    Matrix m(n);
    const Matrix id = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        c[n - k] = -trace(a * m) / double(k);
    }
    return c;
}

std::vector<cplx> eigenvalues(const Matrix& a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return {};
    if (n == 1)
        return {a(0, 0)};
    if (n == 2) {
        const cplx b = -trace(a);
        const cplx c = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        cplx s = std::sqrt(b * b - 4.0 * c);
        if (std::abs(b - s) > std::abs(b + s))
            s = -s;
        const cplx q = -0.5 * (b + s);
        if (q == 0.0)
            return {0.0, 0.0};
        return {q, c / q};
    }
    auto roots = poly_roots(characteristic_polynomial(a));
    std::sort(roots.begin(), roots.end(), [](cplx l, cplx r) {
        return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
    });
    return roots;
}

} // namespace mapgrp
