#include "mapgrp/smith.hpp"

#include <utility>

#include "mapgrp/errors.hpp"

namespace mapgrp {

namespace {

IntMatrix int_identity(std::size_t n)
{
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

// Floor division, so remainders are non-negative for positive divisors.
BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

struct Reducer {
    IntMatrix D, U, V;
    std::size_t rows, cols;

    void swap_rows(std::size_t i, std::size_t j)
    {
        std::swap(D[i], D[j]);
        std::swap(U[i], U[j]);
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        for (auto& r : D)
            std::swap(r[i], r[j]);
        for (auto& r : V)
            std::swap(r[i], r[j]);
    }
    // row_i -= q * row_j
    void row_sub(std::size_t i, std::size_t j, const BigInt& q)
    {
        for (std::size_t c = 0; c < cols; ++c)
            D[i][c] -= q * D[j][c];
        for (std::size_t c = 0; c < rows; ++c)
            U[i][c] -= q * U[j][c];
    }
    // col_i -= q * col_j
    void col_sub(std::size_t i, std::size_t j, const BigInt& q)
    {
        for (std::size_t r = 0; r < rows; ++r)
            D[r][i] -= q * D[r][j];
        for (std::size_t r = 0; r < cols; ++r)
            V[r][i] -= q * V[r][j];
    }
    void negate_row(std::size_t i)
    {
        for (auto& x : D[i])
            x = -x;
        for (auto& x : U[i])
            x = -x;
    }

    // Moves the smallest nonzero |entry| of the trailing block to (t, t); false if the block is zero.
    bool bring_pivot(std::size_t t)
    {
        bool found = false;
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (D[i][j] != 0 && (!found || abs(D[i][j]) < best)) {
                    found = true;
                    best = abs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (!found)
            return false;
        if (pi != t)
            swap_rows(pi, t);
        if (pj != t)
            swap_cols(pj, t);
        return true;
    }

    void reduce()
    {
        const std::size_t k = std::min(rows, cols);
        for (std::size_t t = 0; t < k; ++t) {
            if (!bring_pivot(t))
                break;
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (D[i][t] == 0)
                        continue;
                    row_sub(i, t, floor_div(D[i][t], D[t][t]));
                    if (D[i][t] != 0)
                        dirty = true;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (D[t][j] == 0)
                        continue;
                    col_sub(j, t, floor_div(D[t][j], D[t][t]));
                    if (D[t][j] != 0)
                        dirty = true;
                }
                if (dirty) {
                    bring_pivot(t);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the trailing block.
                std::size_t bad = rows;
                for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (D[i][j] % D[t][t] != 0) {
                            bad = i;
                            break;
                        }
                if (bad == rows)
                    break;
                row_sub(t, bad, BigInt(-1));
            }
            if (D[t][t] < 0)
                negate_row(t);
        }
    }
};

} // namespace

std::vector<BigInt> SmithForm::invariant_factors() const
{
    std::vector<BigInt> out;
    const std::size_t k = D.empty() ? 0 : std::min(D.size(), D.front().size());
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(D[i][i]);
    return out;
}

SmithForm smith_normal_form(const IntMatrix& R)
{
    const std::size_t rows = R.size();
    const std::size_t cols = rows ? R.front().size() : 0;
    for (const auto& r : R)
        if (r.size() != cols)
            throw_invalid("smith_normal_form: ragged matrix");
    Reducer red{R, int_identity(rows), int_identity(cols), rows, cols};
    red.reduce();
    return {std::move(red.U), std::move(red.D), std::move(red.V)};
}

SmithForm smith_normal_form(const std::vector<std::vector<long long>>& R)
{
    IntMatrix big;
    for (const auto& r : R) {
        std::vector<BigInt> row;
        for (long long x : r)
            row.emplace_back(x);
        big.push_back(std::move(row));
    }
    return smith_normal_form(big);
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b)
{
    const std::size_t n = a.size(), k = b.size(), m = k ? b.front().size() : 0;
    if (n && a.front().size() != k)
        throw_invalid("int_multiply: shape mismatch");
    IntMatrix c(n, std::vector<BigInt>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j)
                    c[i][j] += a[i][l] * b[l][j];
    return c;
}

// Bareiss fraction-free elimination.
BigInt int_determinant(const IntMatrix& a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

AbelianPresentation::AbelianPresentation(std::size_t n_, IntMatrix relations_)
    : n(n_), relations(std::move(relations_))
{
    if (!relations.empty() && relations.size() != n)
        throw_invalid("AbelianPresentation: relation matrix must have n rows");
    for (const auto& r : relations)
        if (r.size() != relations.front().size())
            throw_invalid("AbelianPresentation: ragged relation matrix");
    const BigInt limit = BigInt(1) << 31;
    for (const auto& r : relations)
        for (const auto& x : r)
            if (abs(x) > limit)
                throw_invalid("AbelianPresentation: entries must satisfy |x| <= 2^31");
}

std::size_t hom_rank(const AbelianPresentation& a)
{
    if (a.relation_count() == 0)
        return a.n;
    std::size_t nonzero = 0;
    for (const auto& d : smith_normal_form(a.relations).invariant_factors())
        if (d != 0)
            ++nonzero;
    return a.n - nonzero;
}

DiscretenessReport discreteness_report(const AbelianPresentation& a, const Lattice& gamma)
{
    DiscretenessReport rep;
    if (a.relation_count() > 0)
        rep.invariant_factors = smith_normal_form(a.relations).invariant_factors();
    rep.hom_rank = hom_rank(a);
    rep.lattice_rank = gamma.rank();
    // A finitely presented group has finitely generated Hom(A, Z), so Hom(A, Gamma) = Gamma^rank is discrete.
    rep.hom_z_finitely_generated = true;
    rep.discrete = rep.lattice_rank == 0 || rep.hom_z_finitely_generated;
    rep.verdict = "Hom(A,Z) is free of rank " + std::to_string(rep.hom_rank) + "; Hom(A,Gamma) = Gamma^" +
                  std::to_string(rep.hom_rank) + " with Gamma of rank " + std::to_string(rep.lattice_rank) +
                  (rep.discrete ? " is discrete" : " is not discrete");
    return rep;
}

std::string to_string(const BigInt& x) { return x.str(); }

} // namespace mapgrp
