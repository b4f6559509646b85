#include "mapgrp/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

#include "mapgrp/errors.hpp"

namespace mapgrp {

double PeriodMap::max_distance_to_identity() const
{
    double d = 0.0;
    for (const auto& g : values)
        d = std::max(d, g.distance_to_identity());
    return d;
}

bool PeriodMap::trivial(double period_tol) const { return max_distance_to_identity() <= period_tol; }

LoopBasis fundamental_loops(const Domain& domain, Point base)
{
    if (const auto* d = std::get_if<PuncturedPlaneDomain>(&domain.variant())) {
        if (std::abs(base - d->base) > 1e-12)
            return canonical_loop_basis(Domain::punctured_plane(d->punctures, base));
        return canonical_loop_basis(domain);
    }
    if (domain.is_circle())
        return circle_loop_basis(base.real());
    return LoopBasis{base, {}, {}, {}};
}

GroupElement period(const GroupDescriptor& group, const OneForm& alpha, const Path& loop,
                    const EvolutionControl& control)
{
    if (std::abs(loop.start() - loop.end()) > 1e-9)
        throw_invalid("period: loop is not closed");
    return transport(group, alpha, loop, control);
}

PeriodMap period_vector(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                        const EvolutionControl& control)
{
    const long r = long(basis.loops.size());
    std::vector<std::optional<GroupElement>> slots(basis.loops.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < r; ++j) {
        try {
            slots[std::size_t(j)] = period(group, alpha, basis.loops[std::size_t(j)], control);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    PeriodMap out{group, basis, {}};
    for (auto& s : slots)
        out.values.push_back(std::move(*s));
    return out;
}

PeriodMap period_vector_serial(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                               const EvolutionControl& control)
{
    PeriodMap out{group, basis, {}};
    for (const auto& loop : basis.loops)
        out.values.push_back(period(group, alpha, loop, control));
    return out;
}

bool is_integrable(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis, double period_tol,
                   const EvolutionControl& control)
{
    return period_vector(group, alpha, basis, control).trivial(period_tol);
}

BasedMapElement verify_integrability(const BasedMapElement& element, double period_tol)
{
    const LoopBasis basis = fundamental_loops(element.domain(), element.base());
    const bool ok = element.group().is_abelian_quotient()
                        ? abelian_integrable(element.group(), element.form(), basis)
                        : is_integrable(element.group(), element.form(), basis, period_tol, element.control());
    return element.with_status(ok ? Integrability::verified : Integrability::unverified);
}

Path word_loop(const LoopBasis& basis, const std::vector<WordLetter>& word)
{
    std::vector<Path> pieces;
    for (const auto& letter : word) {
        if (letter.generator >= basis.loops.size())
            throw_invalid("word_loop: generator index out of range");
        const Path& g = basis.loops[letter.generator];
        for (int e = 0; e < std::abs(letter.exponent); ++e)
            pieces.push_back(letter.exponent > 0 ? g : g.reversed());
    }
    if (pieces.empty())
        return Path::constant(basis.base);
    if (pieces.size() == 1)
        return pieces.front();
    return Path::concatenation(std::move(pieces));
}

double homomorphism_check(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                          const std::vector<WordLetter>& word, const EvolutionControl& control)
{
    const GroupElement direct = period(group, alpha, word_loop(basis, word), control);
    const PeriodMap per = period_vector(group, alpha, basis, control);
    GroupElement product = GroupElement::identity(group);
    for (const auto& letter : word) {
        const GroupElement& g = per.values[letter.generator];
        const GroupElement step = letter.exponent >= 0 ? g : group_inverse(g);
        for (int e = 0; e < std::abs(letter.exponent); ++e)
            product = group_multiply(product, step);
    }
    return group_distance(direct, product);
}

OneForm bs_section(const Domain& plane, const std::vector<Matrix>& x)
{
    const auto beta = behnke_stein_basis(plane);
    if (x.size() != beta.size())
        throw_invalid("bs_section: need one algebra element per puncture");
    if (x.empty())
        throw_invalid("bs_section: the plane has no punctures");
    OneForm sigma = scalar_times(beta[0], x[0]);
    for (std::size_t j = 1; j < beta.size(); ++j)
        sigma = sigma + scalar_times(beta[j], x[j]);
    return sigma;
}

OneForm dressed_section(const FullMapElement& f, const std::vector<Matrix>& x)
{
    return gauge_action(bs_section(f.based.domain(), x), f);
}

std::vector<Matrix> period_derivative_along(const GroupDescriptor& group, const OneForm& direction,
                                            const LoopBasis& basis, double eps, const EvolutionControl& control)
{
    const PeriodMap plus = period_vector(group, eps * direction, basis, control);
    const PeriodMap minus = period_vector(group, -eps * direction, basis, control);
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < plus.values.size(); ++j)
        out.push_back((0.5 / eps) * (plus.values[j].matrix() - minus.values[j].matrix()));
    return out;
}

// ---------------------------------------------------------------- abelian targets

std::vector<cplx> abelian_integral(const OneForm& alpha, const Path& loop, int steps_per_unit)
{
    return integrate_form(alpha, loop, steps_per_unit).diag();
}

GroupElement abelian_period(const GroupDescriptor& group, const OneForm& alpha, const Path& loop, int steps_per_unit)
{
    if (!group.is_abelian_quotient())
        throw_invalid("abelian_period: target must be an abelian quotient");
    return GroupElement(group, Matrix::diagonal(abelian_integral(alpha, loop, steps_per_unit)));
}

namespace {

// Generator coordinates plus the distance of v from the real span of the lattice.
std::pair<std::vector<double>, double> lattice_coordinates(const Lattice& lattice, const std::vector<cplx>& v)
{
    auto c = lattice.coordinates(v);
    const auto back = lattice.combination(c);
    double off = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        off += std::norm(v[k] - back[k]);
    return {std::move(c), std::sqrt(off)};
}

} // namespace

bool lattice_member(const Lattice& lattice, const std::vector<cplx>& v, double lattice_tol)
{
    const auto [c, off] = lattice_coordinates(lattice, v);
    if (off > lattice_tol)
        return false;
    return std::all_of(c.begin(), c.end(), [&](double x) { return std::abs(x - std::round(x)) <= lattice_tol; });
}

bool abelian_integrable(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                        double lattice_tol)
{
    if (!group.is_abelian_quotient())
        throw_invalid("abelian_integrable: target must be an abelian quotient");
    for (const auto& loop : basis.loops)
        if (!lattice_member(group.lattice(), abelian_integral(alpha, loop), lattice_tol))
            return false;
    return true;
}

bool ComponentClass::trivial() const
{
    for (const auto& c : classes)
        for (long long x : c)
            if (x != 0)
                return false;
    return true;
}

ComponentClass component_class(const GroupDescriptor& group, const OneForm& alpha, const LoopBasis& basis,
                               double margin)
{
    if (!group.is_abelian_quotient())
        throw_invalid("component_class: target must be an abelian quotient");
    ComponentClass out;
    for (std::size_t j = 0; j < basis.loops.size(); ++j) {
        const auto [c, off] = lattice_coordinates(group.lattice(), abelian_integral(alpha, basis.loops[j]));
        if (off >= margin)
            throw Error(ErrorKind::precision, "component_class: integral over generator " + std::to_string(j) +
                                                  " leaves the span of the lattice by " + std::to_string(off));
        std::vector<long long> row;
        for (double x : c) {
            const double r = std::round(x);
            if (std::abs(x - r) >= margin)
                throw Error(ErrorKind::precision, "component_class: coordinate " + std::to_string(x) +
                                                      " on generator " + std::to_string(j) +
                                                      " is not within the rounding margin of an integer");
            row.push_back((long long)r);
        }
        out.classes.push_back(std::move(row));
    }
    return out;
}

} // namespace mapgrp
