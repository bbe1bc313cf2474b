#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "liftlab/errors.hpp"

namespace liftlab {

/// Point of a target geometry.  Fixed-length tuple; 1D targets use c[0] only.
using TargetPoint = std::array<double, 2>;

inline TargetPoint pt1(double x) { return {x, 0.0}; }
inline TargetPoint pt2(double x, double y) { return {x, y}; }

enum class TargetKind { RealLine, Circle, RealPlane, FlatTorus2 };

/// Flat model targets: the real line, a circle of given circumference, the
/// plane, and a flat 2-torus.  Injectivity radius and diameter are stored in
/// closed form, never estimated.
class TargetGeometry {
  public:
    TargetGeometry() = default;

    static TargetGeometry real_line() { return TargetGeometry(TargetKind::RealLine, 1, {0.0, 0.0}); }
    static TargetGeometry circle(double circumference) {
        return TargetGeometry(TargetKind::Circle, 1, {circumference, 0.0});
    }
    static TargetGeometry real_plane() { return TargetGeometry(TargetKind::RealPlane, 2, {0.0, 0.0}); }
    static TargetGeometry flat_torus2(double lx, double ly) {
        return TargetGeometry(TargetKind::FlatTorus2, 2, {lx, ly});
    }

    TargetKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double period(int axis) const { return periods_[static_cast<std::size_t>(axis)]; }

    double injectivity_radius() const {
        switch (kind_) {
            case TargetKind::RealLine:
            case TargetKind::RealPlane: return std::numeric_limits<double>::infinity();
            case TargetKind::Circle: return periods_[0] / 2.0;
            case TargetKind::FlatTorus2: return std::min(periods_[0], periods_[1]) / 2.0;
        }
        return 0.0;
    }

    double diameter() const {
        switch (kind_) {
            case TargetKind::RealLine:
            case TargetKind::RealPlane: return std::numeric_limits<double>::infinity();
            case TargetKind::Circle: return periods_[0] / 2.0;
            case TargetKind::FlatTorus2:
                return std::hypot(periods_[0] / 2.0, periods_[1] / 2.0);
        }
        return 0.0;
    }

    /// Reduce to canonical coordinates: circle/torus coordinates in [0, L).
    TargetPoint canonical(TargetPoint p) const {
        switch (kind_) {
            case TargetKind::RealLine: return {p[0], 0.0};
            case TargetKind::RealPlane: return p;
            case TargetKind::Circle: return {wrap(p[0], periods_[0]), 0.0};
            case TargetKind::FlatTorus2: return {wrap(p[0], periods_[0]), wrap(p[1], periods_[1])};
        }
        return p;
    }

    double distance(const TargetPoint& a, const TargetPoint& b) const {
        switch (kind_) {
            case TargetKind::RealLine: return std::abs(a[0] - b[0]);
            case TargetKind::RealPlane: return std::hypot(a[0] - b[0], a[1] - b[1]);
            case TargetKind::Circle: return circle_dist(a[0], b[0], periods_[0]);
            case TargetKind::FlatTorus2: {
                double dx = circle_dist(a[0], b[0], periods_[0]);
                double dy = circle_dist(a[1], b[1], periods_[1]);
                return std::hypot(dx, dy);
            }
        }
        return 0.0;
    }

    bool operator==(const TargetGeometry& o) const {
        return kind_ == o.kind_ && periods_ == o.periods_;
    }

    std::string name() const {
        switch (kind_) {
            case TargetKind::RealLine: return "R";
            case TargetKind::Circle: return "S1(" + std::to_string(periods_[0]) + ")";
            case TargetKind::RealPlane: return "R2";
            case TargetKind::FlatTorus2:
                return "T2(" + std::to_string(periods_[0]) + "," + std::to_string(periods_[1]) + ")";
        }
        return "?";
    }

    static double wrap(double x, double period) {
        double r = std::fmod(x, period);
        if (r < 0.0) r += period;
        if (r >= period) r = 0.0;  // fmod can land exactly on the period
        return r;
    }

  private:
    TargetGeometry(TargetKind k, int d, std::array<double, 2> periods) : kind_(k), dim_(d), periods_(periods) {}

    static double circle_dist(double a, double b, double period) {
        double d = std::abs(a - b);
        d = std::fmod(d, period);
        return std::min(d, period - d);
    }

    TargetKind kind_ = TargetKind::RealLine;
    int dim_ = 1;
    std::array<double, 2> periods_ = {0.0, 0.0};
};

}  // namespace liftlab
