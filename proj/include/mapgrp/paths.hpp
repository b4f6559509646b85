#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "mapgrp/matrix.hpp"

namespace mapgrp {

/// Points of every model domain live in C: t + 0i on intervals, the angle on the
/// circle, z in the plane, x + iy on a chart.
using Point = cplx;

struct IntervalDomain {
    double a;
    double b;
};
struct CircleDomain {};
struct PuncturedPlaneDomain {
    std::vector<Point> punctures;
    Point base;
};
struct ChartDomain {
    double x0, x1, y0, y1;
};

class Domain {
public:
    using Variant = std::variant<IntervalDomain, CircleDomain, PuncturedPlaneDomain, ChartDomain>;

    static Domain interval(double a, double b);
    static Domain circle();
    static Domain punctured_plane(std::vector<Point> punctures, Point base);
    static Domain chart(double x0, double x1, double y0, double y1);

    const Variant& variant() const noexcept { return v_; }
    bool is_one_dimensional() const noexcept;
    bool is_punctured_plane() const noexcept { return std::holds_alternative<PuncturedPlaneDomain>(v_); }
    bool is_chart() const noexcept { return std::holds_alternative<ChartDomain>(v_); }
    bool is_circle() const noexcept { return std::holds_alternative<CircleDomain>(v_); }
    bool is_interval() const noexcept { return std::holds_alternative<IntervalDomain>(v_); }

    /// Punctures of a punctured plane, empty otherwise.
    const std::vector<Point>& poles() const noexcept;
    bool contains(Point p, double tol = 1e-12) const;
    /// Natural base point: the declared m0, the left end, angle 0, or the chart center.
    Point default_base() const;
    /// Distance from p to the nearest puncture (infinity when there are none).
    double distance_to_poles(Point p) const;

private:
    explicit Domain(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/**
 * @brief Piecewise smooth curve parameterized over [0,1].
 *
 * A path is a segment, a circular arc, or a concatenation of paths with a uniform
 * parameter split. Evaluators are exact; `knots()` lists the parameters where
 * smoothness may fail.
 */
class Path {
public:
    static Path segment(Point z0, Point z1);
    static Path constant(Point z) { return segment(z, z); }
    static Path arc(Point center, double radius, double theta_start, double theta_end);
    static Path concatenation(std::vector<Path> pieces);

    Point point(double t) const;
    Point velocity(double t) const;
    Point start() const { return point(0.0); }
    Point end() const { return point(1.0); }
    /// Interior parameters where pieces meet, sorted.
    std::vector<double> knots() const;
    Path reversed() const;
    std::size_t piece_count() const;
    /// Exact minimum of |point(t) - p| over [0,1] and a parameter attaining it.
    std::pair<double, double> closest_approach(Point p) const;

private:
    struct Segment {
        Point z0, z1;
    };
    struct Arc {
        Point center;
        double radius, theta0, theta1;
    };
    struct Concat {
        std::vector<Path> pieces;
    };
    using Node = std::variant<Segment, Arc, Concat>;

    explicit Path(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
    void collect_knots(double offset, double scale, std::vector<double>& out) const;

    std::shared_ptr<const Node> node_;
};

/// Concatenation gamma1 then gamma2, split at t = 1/2. Endpoints must agree.
Path concatenate(const Path& first, const Path& second, double tol = 1e-9);
Path reverse(const Path& p);

/// Generators of pi_1 of a punctured plane at its base point, one lasso per puncture.
struct LoopBasis {
    Point base;
    std::vector<Point> punctures;
    std::vector<Path> loops;
    std::vector<double> radii;
};

/// Winding number of a closed path around p by quadrature of dz / (z - p).
int winding_number(const Path& loop, Point p, double tol = 1e-9);
/// Unrounded quadrature value of (1/2 pi i) integral dz / (z - p).
cplx winding_integral(const Path& path, Point p);

/// Lassos: segment out to a circle of radius rho_j around p_j, a full counterclockwise
/// turn, and the reversed segment back. Segments detour around other punctures.
LoopBasis canonical_loop_basis(const Domain& plane);

/// Circle domains have a single generator: the full turn of the angle from base.
LoopBasis circle_loop_basis(double base_angle);

/// Straight segment from the chart center m to x.
Path radial_path(const Domain& chart, Point center, Point x);

/**
 * Canonical evaluation path from m0 to m: radial on intervals and charts, the angle
 * segment on the circle, and on punctured planes a straight segment with a
 * counterclockwise detour arc of radius rho/2 around any puncture that the segment
 * passes within `trigger` of.
 */
Path canonical_path(const Domain& domain, Point m0, Point m, double trigger = 1e-6);

/// Straight segment with detours around `punctures`; each puncture p_k with
/// disc radius radii[k] triggers when the segment enters within trigger[k].
Path detoured_segment(Point a, Point b, const std::vector<Point>& punctures, const std::vector<double>& radii,
                      const std::vector<double>& trigger);

/// Basis radius of each puncture: half the distance to the other punctures and to m0.
std::vector<double> puncture_radii(const std::vector<Point>& punctures, Point base);

} // namespace mapgrp
