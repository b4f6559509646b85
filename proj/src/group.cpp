#include "mapgrp/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mapgrp/errors.hpp"

namespace mapgrp {

namespace {

double real_inner(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += (std::conj(a[k]) * b[k]).real();
    return s;
}

bool is_diagonal(const Matrix& x, double tol)
{
    double off = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (i != j)
                off += std::norm(x(i, j));
    return std::sqrt(off) < tol;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Lattice::Lattice(std::size_t dim, std::vector<std::vector<cplx>> generators)
    : dim_(dim), generators_(std::move(generators))
{
    for (const auto& g : generators_)
        if (g.size() != dim_)
            throw_invalid("Lattice: generator dimension mismatch");
    const std::size_t r = generators_.size();
    if (r > 2 * dim_)
        throw_invalid("Lattice: more generators than the real dimension allows");
    if (r == 0)
        return;
    Matrix gram(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            gram(i, j) = real_inner(generators_[i], generators_[j]);
    // Independence over R: the Gram matrix must be well conditioned enough to invert.
    double scale = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        scale = std::max(scale, gram(i, i).real());
    if (scale <= 0.0 || std::abs(determinant(gram)) <= 1e-12 * std::pow(scale, double(r)))
        throw_invalid("Lattice: generators are not linearly independent over R");
    const Matrix inv = inverse(gram);
    gram_inverse_.resize(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            gram_inverse_[i * r + j] = inv(i, j).real();
}

std::vector<double> Lattice::coordinates(const std::vector<cplx>& v) const
{
    if (v.size() != dim_)
        throw_invalid("Lattice::coordinates: dimension mismatch");
    const std::size_t r = generators_.size();
    std::vector<double> rhs(r);
    for (std::size_t i = 0; i < r; ++i)
        rhs[i] = real_inner(generators_[i], v);
    std::vector<double> c(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            c[i] += gram_inverse_[i * r + j] * rhs[j];
    return c;
}

std::vector<cplx> Lattice::combination(const std::vector<double>& coeffs) const
{
    std::vector<cplx> v(dim_, 0.0);
    for (std::size_t i = 0; i < generators_.size(); ++i)
        for (std::size_t k = 0; k < dim_; ++k)
            v[k] += coeffs[i] * generators_[i][k];
    return v;
}

std::vector<cplx> quotient_reduce(const Lattice& lattice, const std::vector<cplx>& v)
{
    auto c = lattice.coordinates(v);
    for (auto& x : c)
        x = std::floor(x + 0.5);
    const auto shift = lattice.combination(c);
    std::vector<cplx> out(v);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] -= shift[k];
    return out;
}

GroupDescriptor GroupDescriptor::general_linear(std::size_t n, Field field)
{
    if (n < 1)
        throw_invalid("GL_n: n must be >= 1");
    return GroupDescriptor(GeneralLinear{n, field});
}

GroupDescriptor GroupDescriptor::special_linear(std::size_t n)
{
    if (n < 1)
        throw_invalid("SL_n: n must be >= 1");
    return GroupDescriptor(SpecialLinear{n});
}

GroupDescriptor GroupDescriptor::abelian(std::size_t dim, std::vector<std::vector<cplx>> lattice_generators)
{
    if (dim < 1)
        throw_invalid("abelian quotient: dimension must be >= 1");
    return GroupDescriptor(AbelianQuotient{Lattice(dim, std::move(lattice_generators))});
}

GroupDescriptor GroupDescriptor::c_star()
{
    return abelian(1, {{cplx(0.0, 2.0 * std::numbers::pi)}});
}

const Lattice& GroupDescriptor::lattice() const
{
    if (const auto* a = std::get_if<AbelianQuotient>(&v_))
        return a->lattice;
    throw_invalid("group " + name() + " has no lattice");
}

std::size_t GroupDescriptor::matrix_dim() const
{
    return std::visit(overloaded{
                          [](const GeneralLinear& g) { return g.n; },
                          [](const SpecialLinear& g) { return g.n; },
                          [](const AbelianQuotient& a) { return a.lattice.dim(); },
                      },
                      v_);
}

std::string GroupDescriptor::name() const
{
    return std::visit(overloaded{
                          [](const GeneralLinear& g) {
                              return "GL_" + std::to_string(g.n) + (g.field == Field::real ? "(R)" : "(C)");
                          },
                          [](const SpecialLinear& g) { return "SL_" + std::to_string(g.n) + "(C)"; },
                          [](const AbelianQuotient& a) {
                              return "C^" + std::to_string(a.lattice.dim()) + "/Z^" +
                                     std::to_string(a.lattice.rank());
                          },
                      },
                      v_);
}

bool GroupDescriptor::in_algebra(const Matrix& x, const Tolerances& tol) const
{
    if (x.size() != matrix_dim() || !x.all_finite())
        return false;
    return std::visit(overloaded{
                          [&](const GeneralLinear& g) {
                              if (g.field == Field::complex)
                                  return true;
                              for (const auto& z : x.entries())
                                  if (std::abs(z.imag()) >= tol.eq_tol)
                                      return false;
                              return true;
                          },
                          [&](const SpecialLinear&) { return std::abs(trace(x)) < tol.eq_tol; },
                          [&](const AbelianQuotient&) { return is_diagonal(x, tol.eq_tol); },
                      },
                      v_);
}

void GroupDescriptor::require_algebra(const Matrix& x, const Tolerances& tol) const
{
    if (!in_algebra(x, tol))
        throw_invalid("element is not in the Lie algebra of " + name());
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const
{
    if (v_.index() != o.v_.index())
        return false;
    return std::visit(overloaded{
                          [&](const GeneralLinear& g) {
                              const auto& h = std::get<GeneralLinear>(o.v_);
                              return g.n == h.n && g.field == h.field;
                          },
                          [&](const SpecialLinear& g) { return g.n == std::get<SpecialLinear>(o.v_).n; },
                          [&](const AbelianQuotient& a) {
                              const auto& b = std::get<AbelianQuotient>(o.v_);
                              return a.lattice.dim() == b.lattice.dim() &&
                                     a.lattice.generators() == b.lattice.generators();
                          },
                      },
                      v_);
}

GroupElement::GroupElement(GroupDescriptor group, Matrix payload, const Tolerances& tol)
    : group_(std::move(group)), payload_(std::move(payload))
{
    if (payload_.size() != group_.matrix_dim())
        throw_invalid("GroupElement: payload dimension does not match " + group_.name());
    if (!payload_.all_finite())
        throw_invalid("GroupElement: non-finite payload");
    std::visit(overloaded{
                   [&](const GeneralLinear& g) {
                       if (std::abs(determinant(payload_)) == 0.0)
                           throw_invalid("GroupElement: singular matrix is not in " + group_.name());
                       if (g.field == Field::real)
                           for (const auto& z : payload_.entries())
                               if (std::abs(z.imag()) >= tol.eq_tol)
                                   throw_invalid("GroupElement: complex entry in a real group");
                   },
                   [&](const SpecialLinear&) {
                       if (std::abs(determinant(payload_) - 1.0) >= tol.eq_tol)
                           throw_invalid("GroupElement: determinant is not 1");
                   },
                   [&](const AbelianQuotient& a) {
                       if (!is_diagonal(payload_, tol.eq_tol))
                           throw_invalid("GroupElement: abelian payload must be diagonal");
                       const auto reduced = quotient_reduce(a.lattice, payload_.diag());
                       payload_ = Matrix::diagonal(reduced);
                   },
               },
               group_.variant());
}

GroupElement GroupElement::identity(const GroupDescriptor& group)
{
    const std::size_t n = group.matrix_dim();
    return GroupElement(group, group.is_abelian_quotient() ? Matrix::zero(n) : Matrix::identity(n));
}

double GroupElement::distance_to_identity() const
{
    if (group_.is_abelian_quotient())
        return frobenius_norm(payload_);
    return distance(payload_, Matrix::identity(payload_.size()));
}

GroupElement group_multiply(const GroupElement& a, const GroupElement& b)
{
    if (!(a.group() == b.group()))
        throw_invalid("group_multiply: descriptor mismatch");
    if (a.group().is_abelian_quotient())
        return GroupElement(a.group(), a.matrix() + b.matrix());
    return GroupElement(a.group(), a.matrix() * b.matrix(), Tolerances{1e-6, 1e-13});
}

GroupElement group_inverse(const GroupElement& a)
{
    if (a.group().is_abelian_quotient())
        return GroupElement(a.group(), -a.matrix());
    return GroupElement(a.group(), inverse(a.matrix()), Tolerances{1e-6, 1e-13});
}

double group_distance(const GroupElement& a, const GroupElement& b)
{
    if (!(a.group() == b.group()))
        throw_invalid("group_distance: descriptor mismatch");
    if (a.group().is_abelian_quotient()) {
        const auto d = quotient_reduce(a.group().lattice(), (a.matrix() - b.matrix()).diag());
        double s = 0.0;
        for (const auto& z : d)
            s += std::norm(z);
        return std::sqrt(s);
    }
    return distance(a.matrix(), b.matrix());
}

GroupElement exp_to_group(const GroupDescriptor& group, const Matrix& x, const Tolerances& tol)
{
    group.require_algebra(x, tol);
    if (group.is_abelian_quotient())
        return GroupElement(group, Matrix::diagonal(x.diag()), tol);
    Matrix g = mat_exp(x);
    if (std::holds_alternative<GeneralLinear>(group.variant()) &&
        std::get<GeneralLinear>(group.variant()).field == Field::real) {
        for (auto& z : g.entries())
            z = z.real();
    }
    return GroupElement(group, std::move(g), Tolerances{1e-6, tol.exp_log_tol});
}

namespace {

// Logarithm of an arbitrary invertible complex matrix: rotate the spectrum so the
// widest angular gap sits on the negative axis, take the principal log there and
// add back the scalar rotation.
Matrix shifted_branch_log(const Matrix& g, const Tolerances& tol)
{
    const auto lambdas = eigenvalues(g);
    std::vector<double> args;
    for (const auto& l : lambdas)
        args.push_back(std::arg(l));
    std::sort(args.begin(), args.end());
    double best_gap = -1.0;
    double center = std::numbers::pi;
    for (std::size_t k = 0; k < args.size(); ++k) {
        const double lo = args[k];
        const double hi = (k + 1 < args.size()) ? args[k + 1] : args[0] + 2.0 * std::numbers::pi;
        if (hi - lo > best_gap) {
            best_gap = hi - lo;
            center = 0.5 * (lo + hi);
        }
    }
    const double theta = center - std::numbers::pi;
    if (std::abs(std::remainder(theta, 2.0 * std::numbers::pi)) < 1e-300)
        return mat_log_principal(g, tol);
    const Matrix h = std::polar(1.0, -theta) * g;
    return mat_log_principal(h, tol) + cplx(0.0, theta) * Matrix::identity(g.size());
}

Matrix sl2_log(const Matrix& g)
{
    const cplx c = 0.5 * trace(g);
    const cplx mu = std::acosh(c);
    cplx factor;
    if (std::abs(mu) < 1e-6)
        factor = 1.0 - mu * mu / 6.0;
    else
        factor = mu / std::sinh(mu);
    return factor * (g - c * Matrix::identity(2));
}

} // namespace

ExpImageResult is_in_exp_image(const GroupElement& g, const Tolerances& tol)
{
    const auto& group = g.group();
    return std::visit(
        overloaded{
            [&](const GeneralLinear& gl) -> ExpImageResult {
                if (gl.field == Field::real)
                    throw Error(ErrorKind::unsupported,
                                "is_in_exp_image: classification for GL_n(R) is not supported");
                return {true, shifted_branch_log(g.matrix(), tol)};
            },
            [&](const SpecialLinear& sl) -> ExpImageResult {
                if (sl.n == 1)
                    return {true, Matrix::zero(1)};
                if (sl.n != 2)
                    throw Error(ErrorKind::unsupported,
                                "is_in_exp_image: classification only for SL_2(C) among SL_n");
                const Matrix& m = g.matrix();
                const Matrix id = Matrix::identity(2);
                if (std::abs(trace(m) + 2.0) < tol.eq_tol) {
                    if (distance(m, -id) < tol.eq_tol) {
                        const std::vector<cplx> d{cplx(0, std::numbers::pi), cplx(0, -std::numbers::pi)};
                        return {true, Matrix::diagonal(d)};
                    }
                    return {false, std::nullopt};
                }
                return {true, sl2_log(m)};
            },
            [&](const AbelianQuotient&) -> ExpImageResult { return {true, g.matrix()}; },
        },
        group.variant());
}

} // namespace mapgrp
