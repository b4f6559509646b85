#include "mapgrp/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mapgrp/errors.hpp"
#include "mapgrp/quadrature.hpp"

namespace mapgrp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

// ---------------------------------------------------------------- Domain

Domain Domain::interval(double a, double b)
{
    if (!(a < b))
        throw_invalid("interval domain requires a < b");
    return Domain(IntervalDomain{a, b});
}

Domain Domain::circle() { return Domain(CircleDomain{}); }

Domain Domain::punctured_plane(std::vector<Point> punctures, Point base)
{
    for (std::size_t i = 0; i < punctures.size(); ++i) {
        for (std::size_t j = i + 1; j < punctures.size(); ++j)
            if (punctures[i] == punctures[j])
                throw_invalid("punctured plane: punctures must be distinct");
        if (punctures[i] == base)
            throw_invalid("punctured plane: base point is a puncture");
    }
    return Domain(PuncturedPlaneDomain{std::move(punctures), base});
}

Domain Domain::chart(double x0, double x1, double y0, double y1)
{
    if (!(x0 < x1) || !(y0 < y1))
        throw_invalid("chart domain: degenerate rectangle");
    return Domain(ChartDomain{x0, x1, y0, y1});
}

bool Domain::is_one_dimensional() const noexcept
{
    return std::holds_alternative<IntervalDomain>(v_) || std::holds_alternative<CircleDomain>(v_);
}

const std::vector<Point>& Domain::poles() const noexcept
{
    static const std::vector<Point> none;
    if (const auto* p = std::get_if<PuncturedPlaneDomain>(&v_))
        return p->punctures;
    return none;
}

bool Domain::contains(Point p, double tol) const
{
    return std::visit(overloaded{
                          [&](const IntervalDomain& d) {
                              return std::abs(p.imag()) <= tol && p.real() >= d.a - tol && p.real() <= d.b + tol;
                          },
                          [&](const CircleDomain&) { return std::abs(p.imag()) <= tol; },
                          [&](const PuncturedPlaneDomain& d) {
                              return std::none_of(d.punctures.begin(), d.punctures.end(),
                                                  [&](Point q) { return std::abs(q - p) <= tol; });
                          },
                          [&](const ChartDomain& d) {
                              return p.real() >= d.x0 - tol && p.real() <= d.x1 + tol && p.imag() >= d.y0 - tol &&
                                     p.imag() <= d.y1 + tol;
                          },
                      },
                      v_);
}

Point Domain::default_base() const
{
    return std::visit(overloaded{
                          [](const IntervalDomain& d) { return Point(d.a, 0.0); },
                          [](const CircleDomain&) { return Point(0.0, 0.0); },
                          [](const PuncturedPlaneDomain& d) { return d.base; },
                          [](const ChartDomain& d) { return Point(0.5 * (d.x0 + d.x1), 0.5 * (d.y0 + d.y1)); },
                      },
                      v_);
}

double Domain::distance_to_poles(Point p) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : poles())
        best = std::min(best, std::abs(p - q));
    return best;
}

// ---------------------------------------------------------------- Path

Path Path::segment(Point z0, Point z1) { return Path(Segment{z0, z1}); }

Path Path::arc(Point center, double radius, double theta_start, double theta_end)
{
    if (!(radius > 0.0))
        throw_invalid("arc: radius must be positive");
    return Path(Arc{center, radius, theta_start, theta_end});
}

Path Path::concatenation(std::vector<Path> pieces)
{
    if (pieces.empty())
        throw_invalid("concatenation: no pieces");
    if (pieces.size() == 1)
        return pieces.front();
    return Path(Concat{std::move(pieces)});
}

Point Path::point(double t) const
{
    return std::visit(overloaded{
                          [&](const Segment& s) { return s.z0 + t * (s.z1 - s.z0); },
                          [&](const Arc& a) {
                              return a.center + std::polar(a.radius, a.theta0 + t * (a.theta1 - a.theta0));
                          },
                          [&](const Concat& c) {
                              const double k = double(c.pieces.size());
                              const std::size_t idx = std::min(c.pieces.size() - 1, std::size_t(std::max(0.0, t * k)));
                              return c.pieces[idx].point(t * k - double(idx));
                          },
                      },
                      *node_);
}

std::pair<double, double> Path::closest_approach(Point p) const
{
    return std::visit(overloaded{
                          [&](const Segment& s) {
                              const Point d = s.z1 - s.z0;
                              const double len2 = std::norm(d);
                              const double t = len2 == 0.0 ? 0.0
                                                           : std::clamp(std::real(std::conj(d) * (p - s.z0)) / len2,
                                                                        0.0, 1.0);
                              return std::pair{std::abs(point(t) - p), t};
                          },
                          [&](const Arc& a) {
                              // Closest point on the full circle, else the nearer end.
                              std::pair best{std::abs(point(0.0) - p), 0.0};
                              if (const double d1 = std::abs(point(1.0) - p); d1 < best.first)
                                  best = {d1, 1.0};
                              const double span = a.theta1 - a.theta0;
                              if (span != 0.0 && p != a.center) {
                                  const double phi = std::arg(p - a.center);
                                  for (double shift = -3.0; shift <= 3.0; shift += 1.0) {
                                      const double t = (phi + shift * kTwoPi - a.theta0) / span;
                                      if (t >= 0.0 && t <= 1.0) {
                                          const double d = std::abs(point(t) - p);
                                          if (d < best.first)
                                              best = {d, t};
                                      }
                                  }
                              }
                              return best;
                          },
                          [&](const Concat& c) {
                              const double k = double(c.pieces.size());
                              std::pair best{std::numeric_limits<double>::infinity(), 0.0};
                              for (std::size_t i = 0; i < c.pieces.size(); ++i) {
                                  const auto [d, t] = c.pieces[i].closest_approach(p);
                                  if (d < best.first)
                                      best = {d, (double(i) + t) / k};
                              }
                              return best;
                          },
                      },
                      *node_);
}

Point Path::velocity(double t) const
{
    return std::visit(overloaded{
                          [&](const Segment& s) { return s.z1 - s.z0; },
                          [&](const Arc& a) {
                              const double dtheta = a.theta1 - a.theta0;
                              return Point(0.0, a.radius * dtheta) * std::polar(1.0, a.theta0 + t * dtheta);
                          },
                          [&](const Concat& c) {
                              const double k = double(c.pieces.size());
                              const std::size_t idx = std::min(c.pieces.size() - 1, std::size_t(std::max(0.0, t * k)));
                              return k * c.pieces[idx].velocity(t * k - double(idx));
                          },
                      },
                      *node_);
}

void Path::collect_knots(double offset, double scale, std::vector<double>& out) const
{
    if (const auto* c = std::get_if<Concat>(node_.get())) {
        const double k = double(c->pieces.size());
        for (std::size_t i = 0; i < c->pieces.size(); ++i) {
            if (i > 0)
                out.push_back(offset + scale * double(i) / k);
            c->pieces[i].collect_knots(offset + scale * double(i) / k, scale / k, out);
        }
    }
}

std::vector<double> Path::knots() const
{
    std::vector<double> out;
    collect_knots(0.0, 1.0, out);
    std::sort(out.begin(), out.end());
    return out;
}

Path Path::reversed() const
{
    return std::visit(overloaded{
                          [](const Segment& s) { return Path::segment(s.z1, s.z0); },
                          [](const Arc& a) { return Path::arc(a.center, a.radius, a.theta1, a.theta0); },
                          [](const Concat& c) {
                              std::vector<Path> rev;
                              rev.reserve(c.pieces.size());
                              for (auto it = c.pieces.rbegin(); it != c.pieces.rend(); ++it)
                                  rev.push_back(it->reversed());
                              return Path(Concat{std::move(rev)});
                          },
                      },
                      *node_);
}

std::size_t Path::piece_count() const
{
    if (const auto* c = std::get_if<Concat>(node_.get()))
        return c->pieces.size();
    return 1;
}

Path concatenate(const Path& first, const Path& second, double tol)
{
    if (std::abs(first.end() - second.start()) >= tol)
        throw_invalid("concatenate: endpoint mismatch");
    return Path::concatenation({first, second});
}

Path reverse(const Path& p) { return p.reversed(); }

// ---------------------------------------------------------------- winding

cplx winding_integral(const Path& path, Point p)
{
    std::vector<double> cuts{0.0};
    for (double k : path.knots())
        cuts.push_back(k);
    cuts.push_back(1.0);
    auto integrand = [&](double t) { return path.velocity(t) / (path.point(t) - p); };
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i])
            continue;
        int panels = 32;
        cplx prev = integrate_scalar(integrand, cuts[i], cuts[i + 1], panels);
        for (;;) {
            panels *= 2;
            const cplx next = integrate_scalar(integrand, cuts[i], cuts[i + 1], panels);
            const bool done = std::abs(next - prev) < 1e-12 * std::max(1.0, std::abs(next)) || panels >= (1 << 15);
            prev = next;
            if (done)
                break;
        }
        total += prev;
    }
    return total / cplx(0.0, kTwoPi);
}

int winding_number(const Path& loop, Point p, double tol)
{
    if (std::abs(loop.end() - loop.start()) >= tol)
        throw_invalid("winding_number: path is not closed");
    double closest = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 4096; ++k)
        closest = std::min(closest, std::abs(loop.point(k / 4096.0) - p));
    if (closest <= tol)
        throw_invalid("winding_number: point lies on the path");
    const cplx w = winding_integral(loop, p);
    const double rounded = std::round(w.real());
    if (std::abs(w - rounded) > 0.25)
        throw Error(ErrorKind::precision, "winding_number: quadrature value is not near an integer");
    return int(rounded);
}

// ---------------------------------------------------------------- loops

std::vector<double> puncture_radii(const std::vector<Point>& punctures, Point base)
{
    std::vector<double> radii;
    radii.reserve(punctures.size());
    for (std::size_t j = 0; j < punctures.size(); ++j) {
        double d = std::abs(base - punctures[j]);
        for (std::size_t k = 0; k < punctures.size(); ++k)
            if (k != j)
                d = std::min(d, std::abs(punctures[k] - punctures[j]));
        radii.push_back(0.5 * d);
    }
    return radii;
}

Path detoured_segment(Point a, Point b, const std::vector<Point>& punctures, const std::vector<double>& radii,
                      const std::vector<double>& trigger)
{
    const double length = std::abs(b - a);
    if (length == 0.0)
        return Path::segment(a, b);
    const Point dir = (b - a) / length;

    struct Detour {
        double entry, exit;
        Point center;
        double radius;
    };
    std::vector<Detour> detours;
    for (std::size_t k = 0; k < punctures.size(); ++k) {
        const Point rel = std::conj(dir) * (punctures[k] - a);
        const double along = rel.real();
        const double off = std::abs(rel.imag());
        if (along <= 0.0 || along >= length || off >= trigger[k])
            continue;
        const double r = std::min({radii[k], 0.5 * std::abs(punctures[k] - a), 0.5 * std::abs(punctures[k] - b)});
        if (r <= off)
            continue;
        const double half = std::sqrt(r * r - off * off);
        detours.push_back({along - half, along + half, punctures[k], r});
    }
    if (detours.empty())
        return Path::segment(a, b);
    std::sort(detours.begin(), detours.end(), [](const Detour& l, const Detour& r) { return l.entry < r.entry; });

    std::vector<Path> pieces;
    Point cursor = a;
    for (const auto& d : detours) {
        const Point in = a + d.entry * dir;
        const Point out = a + d.exit * dir;
        if (std::abs(in - cursor) > 0.0)
            pieces.push_back(Path::segment(cursor, in));
        const double t0 = std::arg(in - d.center);
        double sweep = std::arg(out - d.center) - t0;
        while (sweep <= 0.0)
            sweep += kTwoPi;
        while (sweep > kTwoPi)
            sweep -= kTwoPi;
        pieces.push_back(Path::arc(d.center, d.radius, t0, t0 + sweep));
        cursor = out;
    }
    if (std::abs(b - cursor) > 0.0)
        pieces.push_back(Path::segment(cursor, b));
    return Path::concatenation(std::move(pieces));
}

LoopBasis canonical_loop_basis(const Domain& plane)
{
    const auto* d = std::get_if<PuncturedPlaneDomain>(&plane.variant());
    if (!d)
        throw_invalid("canonical_loop_basis: domain is not a punctured plane");
    if (d->punctures.empty())
        throw_invalid("canonical_loop_basis: at least one puncture is required");
    for (const auto& p : d->punctures)
        if (std::abs(p - d->base) == 0.0)
            throw_invalid("canonical_loop_basis: base point is a puncture");

    LoopBasis basis{d->base, d->punctures, {}, puncture_radii(d->punctures, d->base)};
    std::vector<double> detour_radii;
    for (double r : basis.radii) {
        if (r < 1e-12)
            throw Error(ErrorKind::geometry, "canonical_loop_basis: punctures too close together");
        detour_radii.push_back(0.5 * r);
    }
    for (std::size_t j = 0; j < d->punctures.size(); ++j) {
        const Point p = d->punctures[j];
        const double rho = basis.radii[j];
        const Point u = (d->base - p) / std::abs(d->base - p);
        const Point foot = p + rho * u;
        // The own puncture never triggers a detour: the segment stops at its circle.
        std::vector<double> trig(detour_radii);
        trig[j] = 0.0;
        const Path out = detoured_segment(d->base, foot, d->punctures, detour_radii, trig);
        const double theta = std::arg(u);
        const Path turn = Path::arc(p, rho, theta, theta + kTwoPi);
        basis.loops.push_back(Path::concatenation({out, turn, out.reversed()}));
    }
    for (std::size_t i = 0; i < basis.loops.size(); ++i)
        for (std::size_t j = 0; j < basis.punctures.size(); ++j)
            if (winding_number(basis.loops[i], basis.punctures[j]) != (i == j ? 1 : 0))
                throw Error(ErrorKind::geometry, "canonical_loop_basis: winding matrix is not the identity");
    return basis;
}

LoopBasis circle_loop_basis(double base_angle)
{
    LoopBasis basis;
    basis.base = Point(base_angle, 0.0);
    basis.loops.push_back(Path::segment(Point(base_angle, 0.0), Point(base_angle + kTwoPi, 0.0)));
    return basis;
}

Path radial_path(const Domain& chart, Point center, Point x)
{
    if (!chart.contains(x))
        throw_invalid("radial_path: point outside the chart");
    return Path::segment(center, x);
}

Path canonical_path(const Domain& domain, Point m0, Point m, double trigger)
{
    if (const auto* d = std::get_if<PuncturedPlaneDomain>(&domain.variant())) {
        if (!domain.contains(m))
            throw_invalid("canonical_path: target is a puncture");
        const auto radii = puncture_radii(d->punctures, m0);
        std::vector<double> detour_radii;
        for (double r : radii)
            detour_radii.push_back(0.5 * r);
        return detoured_segment(m0, m, d->punctures, detour_radii, std::vector<double>(radii.size(), trigger));
    }
    if (domain.is_circle())
        return Path::segment(Point(m0.real(), 0.0), Point(m.real(), 0.0));
    return radial_path(domain, m0, m);
}

} // namespace mapgrp
