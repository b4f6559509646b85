#include "mapgrp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>

#include "mapgrp/errors.hpp"

namespace mapgrp {

namespace {

constexpr double kKeyScale = 1e12;

struct PointKey {
    long long re, im;
    bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const noexcept
    {
        return std::hash<long long>()(k.re) * 1000003u ^ std::hash<long long>()(k.im);
    }
};

// Point -> matrix memo; concurrent readers, one writer at a time.
class Memo {
public:
    explicit Memo(std::function<Matrix(Point)> f) : f_(std::move(f)) {}

    Matrix operator()(Point m)
    {
        if (std::abs(m.real()) > 1e6 || std::abs(m.imag()) > 1e6)
            return f_(m);
        const PointKey key{std::llround(m.real() * kKeyScale), std::llround(m.imag() * kKeyScale)};
        {
            std::shared_lock lock(mutex_);
            if (auto it = map_.find(key); it != map_.end())
                return it->second;
        }
        Matrix value = f_(m);
        std::unique_lock lock(mutex_);
        map_.emplace(key, value);
        return value;
    }

private:
    std::function<Matrix(Point)> f_;
    std::shared_mutex mutex_;
    std::unordered_map<PointKey, Matrix, PointKeyHash> map_;
};

// Ad(g).x as a form: m -> g(m) alpha_m g(m)^{-1}.
OneForm conjugated(const OneForm& alpha, std::function<Matrix(Point)> g)
{
    return OneForm(alpha.domain(), alpha.dim(), FormKind::dressed,
                   [alpha, g = std::move(g)](Point m, Point v) { return ad_conjugate(g(m), alpha(m, v)); });
}

bool simply_connected_holomorphic(const Domain& d)
{
    return d.is_interval() || (d.is_punctured_plane() && d.poles().empty());
}

Integrability weaker(Integrability a, Integrability b)
{
    if (a == Integrability::verified && b == Integrability::verified)
        return Integrability::verified;
    if (a == Integrability::unverified || b == Integrability::unverified)
        return Integrability::unverified;
    return Integrability::relative_to_path;
}

void require_compatible(const BasedMapElement& a, const BasedMapElement& b)
{
    if (!(a.group() == b.group()))
        throw_invalid("multiply: group mismatch");
    if (a.form().dim() != b.form().dim())
        throw_invalid("multiply: dimension mismatch");
    if (std::abs(a.base() - b.base()) > 1e-12)
        throw_invalid("multiply: base points differ");
    if (a.domain().variant().index() != b.domain().variant().index())
        throw_invalid("multiply: domain mismatch");
}

} // namespace

const char* to_string(Integrability status)
{
    switch (status) {
    case Integrability::verified: return "verified";
    case Integrability::unverified: return "unverified";
    case Integrability::relative_to_path: return "relative-to-path";
    }
    return "?";
}

// ---------------------------------------------------------------- BasedMapElement

struct BasedMapElement::Cache {
    explicit Cache(std::function<Matrix(Point)> f) : memo(std::move(f)) {}
    Memo memo;
};

BasedMapElement::BasedMapElement(GroupDescriptor group, OneForm form, Point base, Integrability status,
                                 EvolutionControl control)
    : group_(std::move(group)), form_(std::move(form)), base_(base), status_(status), control_(control)
{
    if (form_.dim() != group_.matrix_dim())
        throw_invalid("BasedMapElement: form dimension does not match " + group_.name());
    if (!form_.domain().contains(base_))
        throw_invalid("BasedMapElement: base point is not in the domain");
    group_.require_algebra(form_(base_, 1.0));
    if (form_.domain().is_chart())
        group_.require_algebra(form_(base_, cplx(0.0, 1.0)));
    if (simply_connected_holomorphic(form_.domain()))
        status_ = Integrability::verified;

    EvolutionControl quiet = control_;
    quiet.estimate_error = false;
    cache_ = std::make_shared<Cache>([group = group_, form = form_, base = base_, quiet](Point m) {
        if (m == base)
            return Matrix::identity(group.matrix_dim());
        return transport(group, form, canonical_path(form.domain(), base, m), quiet).matrix();
    });
}

BasedMapElement BasedMapElement::with_status(Integrability status) const
{
    BasedMapElement out = *this;
    out.status_ = status;
    return out;
}

BasedMapElement BasedMapElement::with_form(OneForm form) const
{
    return BasedMapElement(group_, std::move(form), base_, status_, control_);
}

Matrix BasedMapElement::evol_at(Point m) const { return cache_->memo(m); }

BasedMapElement identity_element(const GroupDescriptor& group, const Domain& domain, Point base,
                                 const EvolutionControl& control)
{
    return BasedMapElement(group, OneForm::zero(domain, group.matrix_dim()), base, Integrability::verified, control);
}

// ---------------------------------------------------------------- group law

BasedMapElement multiply(const BasedMapElement& alpha, const BasedMapElement& beta)
{
    require_compatible(alpha, beta);
    const Integrability status = weaker(alpha.status(), beta.status());
    if (alpha.group().is_abelian_quotient())
        return BasedMapElement(beta.group(), beta.form() + alpha.form(), beta.base(), status, beta.control());
    OneForm dressed = OneForm::dressed(alpha.form(), [beta](Point m) { return beta.evol_at(m); });
    return BasedMapElement(beta.group(), beta.form() + dressed, beta.base(), status, beta.control());
}

BasedMapElement inverse(const BasedMapElement& alpha)
{
    if (alpha.group().is_abelian_quotient())
        return alpha.with_form(-alpha.form());
    return alpha.with_form(-conjugated(alpha.form(), [alpha](Point m) { return alpha.evol_at(m); }));
}

FullMapElement multiply(const FullMapElement& f, const FullMapElement& g)
{
    GroupElement k = group_multiply(f.k, g.k);
    if (f.based.group().is_abelian_quotient())
        return {std::move(k), multiply(f.based, g.based)};
    const Matrix k2 = g.k.matrix();
    const BasedMapElement shifted =
        f.based.with_form(OneForm::dressed(f.based.form(), [k2](Point) { return k2; }));
    return {std::move(k), multiply(shifted, g.based)};
}

GroupElement evaluate(const FullMapElement& f, Point m, const std::optional<Path>& path)
{
    const BasedMapElement& a = f.based;
    if (!a.domain().contains(m))
        throw_invalid("evaluate: point is not in the domain");
    if (path) {
        if (std::abs(path->start() - a.base()) > 1e-9 || std::abs(path->end() - m) > 1e-9)
            throw_invalid("evaluate: path must run from the base point to the evaluation point");
        return group_multiply(f.k, transport(a.group(), a.form(), *path, a.control()));
    }
    if (a.status() != Integrability::verified)
        throw Error(ErrorKind::ambiguity,
                    std::string("evaluate: form is ") + to_string(a.status()) +
                        "; value depends on the path, supply one explicitly");
    return group_multiply(f.k, GroupElement(a.group(), a.group().is_abelian_quotient()
                                                           ? Matrix::diagonal(a.evol_at(m).diag())
                                                           : a.evol_at(m),
                                            Tolerances{1e-6, 1e-13}));
}

OneForm gauge_action(const OneForm& alpha, const FullMapElement& f)
{
    if (alpha.dim() != f.based.form().dim())
        throw_invalid("gauge_action: dimension mismatch");
    if (f.based.group().is_abelian_quotient())
        return f.based.form() + alpha;
    auto memo = std::make_shared<Memo>([f](Point m) { return evaluate(f, m).matrix(); });
    return f.based.form() + OneForm::dressed(alpha, [memo](Point m) { return (*memo)(m); });
}

// ---------------------------------------------------------------- sampled maps

SampledMap sample_map(const Domain& domain, const GroupDescriptor& group, const std::function<Matrix(Point)>& f,
                      int nx, int ny)
{
    SampledMap s{domain, group, 0, 1, 0.0, 0.0, 0.0, 0.0, false, {}};
    s.nx = nx;
    s.ny = 1;
    if (const auto* d = std::get_if<IntervalDomain>(&domain.variant())) {
        if (nx < 3)
            throw_invalid("sample_map: need at least 3 samples");
        s.x0 = d->a;
        s.hx = (d->b - d->a) / (nx - 1);
    } else if (domain.is_circle()) {
        if (nx < 3)
            throw_invalid("sample_map: need at least 3 samples");
        s.x0 = 0.0;
        s.hx = 2.0 * std::numbers::pi / nx;
        s.periodic = true;
    } else if (const auto* c = std::get_if<ChartDomain>(&domain.variant())) {
        if (nx < 3 || ny < 3)
            throw_invalid("sample_map: chart grids need at least 3 x 3 nodes");
        s.ny = ny;
        s.x0 = c->x0;
        s.hx = (c->x1 - c->x0) / (nx - 1);
        s.y0 = c->y0;
        s.hy = (c->y1 - c->y0) / (ny - 1);
    } else {
        throw_invalid("sample_map: sampled maps live on intervals, the circle or charts");
    }
    s.values.reserve(std::size_t(s.nx) * std::size_t(s.ny));
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i)
            s.values.push_back(f(s.node(i, j)));
    return s;
}

SampledMap pointwise_product(const SampledMap& f1, const SampledMap& f2)
{
    if (f1.nx != f2.nx || f1.ny != f2.ny || f1.values.size() != f2.values.size())
        throw_invalid("pointwise_product: sample grids differ");
    SampledMap out = f1;
    const bool abelian = f1.group.is_abelian_quotient();
    for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] = abelian ? f1.values[k] + f2.values[k] : f1.values[k] * f2.values[k];
    return out;
}

namespace {

// log(f(p)^{-1} f(q)), or the reduced difference for abelian quotients.
Matrix relative_log(const SampledMap& s, const Matrix& fp, const Matrix& fq)
{
    Matrix step;
    double jump;
    if (s.group.is_abelian_quotient()) {
        std::vector<cplx> diff = (fq - fp).diag();
        step = Matrix::diagonal(quotient_reduce(s.group.lattice(), diff));
        jump = frobenius_norm(step);
    } else {
        const Matrix rel = solve(fp, fq);
        jump = distance(rel, Matrix::identity(rel.size()));
        if (jump < 0.5)
            step = mat_log_principal(rel);
    }
    if (!(jump < 0.5))
        throw Error(ErrorKind::sampling_resolution,
                    "log_derivative_from_samples: neighbouring samples differ by " + std::to_string(jump) +
                        " from identity; refine the grid");
    return step;
}

// Derivative along one grid line of values v[0..n-1] at spacing h.
std::vector<Matrix> line_derivative(const SampledMap& s, const std::vector<const Matrix*>& v, double h, bool periodic)
{
    const int n = int(v.size());
    std::vector<Matrix> out(static_cast<std::size_t>(n));
    auto at = [&](int i) -> const Matrix& { return *v[std::size_t(((i % n) + n) % n)]; };
    for (int i = 0; i < n; ++i) {
        const Matrix& fp = at(i);
        if (periodic || (i > 0 && i + 1 < n)) {
            out[std::size_t(i)] = (1.0 / (2.0 * h)) * (relative_log(s, fp, at(i + 1)) - relative_log(s, fp, at(i - 1)));
        } else if (i == 0) {
            out[0] = (1.0 / (2.0 * h)) * (4.0 * relative_log(s, fp, at(1)) - relative_log(s, fp, at(2)));
        } else {
            out[std::size_t(i)] =
                (-1.0 / (2.0 * h)) * (4.0 * relative_log(s, fp, at(i - 1)) - relative_log(s, fp, at(i - 2)));
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<Matrix, Matrix>> log_derivative_nodes(const SampledMap& f)
{
    const std::size_t dim = f.group.matrix_dim();
    std::vector<std::pair<Matrix, Matrix>> out(f.values.size(), {Matrix::zero(dim), Matrix::zero(dim)});
    for (int j = 0; j < f.ny; ++j) {
        std::vector<const Matrix*> row;
        for (int i = 0; i < f.nx; ++i)
            row.push_back(&f.at(i, j));
        auto d = line_derivative(f, row, f.hx, f.periodic);
        for (int i = 0; i < f.nx; ++i)
            out[std::size_t(j) * std::size_t(f.nx) + std::size_t(i)].first = std::move(d[std::size_t(i)]);
    }
    if (f.ny > 1) {
        for (int i = 0; i < f.nx; ++i) {
            std::vector<const Matrix*> col;
            for (int j = 0; j < f.ny; ++j)
                col.push_back(&f.at(i, j));
            auto d = line_derivative(f, col, f.hy, false);
            for (int j = 0; j < f.ny; ++j)
                out[std::size_t(j) * std::size_t(f.nx) + std::size_t(i)].second = std::move(d[std::size_t(j)]);
        }
    }
    return out;
}

OneForm log_derivative_from_samples(const SampledMap& f)
{
    auto nodes = std::make_shared<const std::vector<std::pair<Matrix, Matrix>>>(log_derivative_nodes(f));
    const std::size_t dim = f.group.matrix_dim();
    const int nx = f.nx, ny = f.ny;
    const double x0 = f.x0, hx = f.hx, y0 = f.y0, hy = f.hy;
    const bool periodic = f.periodic;

    // Cell index and weight along one axis.
    auto locate = [](double s, int n, bool wrap) {
        if (wrap) {
            s = std::fmod(s, double(n));
            if (s < 0)
                s += n;
            const int i = std::min(int(s), n - 1);
            return std::pair{i, s - i};
        }
        s = std::clamp(s, 0.0, double(n - 1));
        const int i = std::min(int(s), n - 2);
        return std::pair{i, s - i};
    };

    OneForm::Evaluator eval;
    if (ny == 1) {
        eval = [=](Point m, Point v) {
            const auto [i, w] = locate((m.real() - x0) / hx, nx, periodic);
            const int i1 = periodic ? (i + 1) % nx : i + 1;
            const Matrix& a = (*nodes)[std::size_t(i)].first;
            const Matrix& b = (*nodes)[std::size_t(i1)].first;
            return v.real() * ((1.0 - w) * a + w * b);
        };
    } else {
        eval = [=](Point m, Point v) {
            const auto [i, wx] = locate((m.real() - x0) / hx, nx, false);
            const auto [j, wy] = locate((m.imag() - y0) / hy, ny, false);
            auto node = [&](int a, int b) -> const std::pair<Matrix, Matrix>& {
                return (*nodes)[std::size_t(b) * std::size_t(nx) + std::size_t(a)];
            };
            const double w00 = (1 - wx) * (1 - wy), w10 = wx * (1 - wy), w01 = (1 - wx) * wy, w11 = wx * wy;
            const Matrix dx = w00 * node(i, j).first + w10 * node(i + 1, j).first + w01 * node(i, j + 1).first +
                              w11 * node(i + 1, j + 1).first;
            const Matrix dy = w00 * node(i, j).second + w10 * node(i + 1, j).second + w01 * node(i, j + 1).second +
                              w11 * node(i + 1, j + 1).second;
            return v.real() * dx + v.imag() * dy;
        };
    }
    return OneForm(f.domain, dim, FormKind::composite, std::move(eval));
}

double cocycle_residual(const SampledMap& f1, const SampledMap& f2)
{
    const auto d1 = log_derivative_nodes(f1);
    const auto d2 = log_derivative_nodes(f2);
    const auto d12 = log_derivative_nodes(pointwise_product(f1, f2));
    const bool abelian = f1.group.is_abelian_quotient();
    const int ilo = f1.periodic ? 0 : 1, ihi = f1.periodic ? f1.nx : f1.nx - 1;
    const int jlo = f1.ny > 1 ? 1 : 0, jhi = f1.ny > 1 ? f1.ny - 1 : 1;
    double worst = 0.0;
    for (int j = jlo; j < jhi; ++j) {
        for (int i = ilo; i < ihi; ++i) {
            const std::size_t k = std::size_t(j) * std::size_t(f1.nx) + std::size_t(i);
            const Matrix& g2 = f2.values[k];
            auto ad = [&](const Matrix& x) { return abelian ? x : ad_conjugate_inverse(g2, x); };
            worst = std::max(worst, frobenius_norm(d12[k].first - ad(d1[k].first) - d2[k].first));
            if (f1.ny > 1)
                worst = std::max(worst, frobenius_norm(d12[k].second - ad(d1[k].second) - d2[k].second));
        }
    }
    return worst;
}

// ---------------------------------------------------------------- pointwise exp / log

std::vector<Matrix> pointwise_exp(const MatrixExpr& xi, const std::vector<Point>& points)
{
    std::vector<Matrix> out;
    out.reserve(points.size());
    for (Point p : points) {
        if (xi.variables().size() == 2) {
            const cplx xy[2] = {p.real(), p.imag()};
            out.push_back(mat_exp(xi.evaluate(std::span<const cplx>(xy, 2))));
        } else {
            out.push_back(mat_exp(xi.evaluate(p)));
        }
    }
    return out;
}

std::vector<Matrix> pointwise_log_lift(const std::vector<Matrix>& values)
{
    std::vector<Matrix> out;
    out.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double d = distance(values[k], Matrix::identity(values[k].size()));
        if (!(d < 1.0))
            throw Error(ErrorKind::branch_cut, "pointwise_log_lift: sample " + std::to_string(k) +
                                                   " lies outside the local chart (|f - 1| = " +
                                                   std::to_string(d) + ")");
        out.push_back(mat_log_principal(values[k]));
    }
    return out;
}

} // namespace mapgrp
