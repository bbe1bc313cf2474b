#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "liftlab/errors.hpp"

namespace liftlab {

enum class DomainKind { Interval, Cube, Torus };

inline const char* domain_kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::Interval: return "interval";
        case DomainKind::Cube: return "cube";
        case DomainKind::Torus: return "torus";
    }
    return "?";
}

/// One maximal 1D index path along a grid axis.  Closed when the axis is
/// periodic (the last index is an axis-neighbor of the first).
struct LineSection {
    std::vector<std::size_t> indices;
    bool closed = false;
};

/// Uniform midpoint grid on a flat domain: an interval, a square, or a flat
/// torus.  Points sit at cell midpoints x_i = (i + 1/2) h with h = side/n and
/// carry measure h^m, so the singular pair kernels of the energies are never
/// evaluated at coincident points.
class GridDomain {
  public:
    GridDomain() = default;

    static GridDomain make(DomainKind kind, int m, int n, double side) {
        if (m < 1 || m > 2) throw Error(ErrorCode::InvalidDimension, "m must be 1 or 2, got " + std::to_string(m));
        if (kind == DomainKind::Interval && m != 1)
            throw Error(ErrorCode::InvalidDimension, "interval domain is one-dimensional");
        if (kind == DomainKind::Cube && m != 2)
            throw Error(ErrorCode::InvalidDimension, "cube domain is two-dimensional");
        if (n < 2) throw Error(ErrorCode::InvalidResolution, "n must be >= 2, got " + std::to_string(n));
        if (!(side > 0.0)) throw Error(ErrorCode::InvalidResolution, "side must be positive");
        GridDomain d;
        d.kind_ = kind;
        d.m_ = m;
        d.n_ = n;
        d.side_ = side;
        d.h_ = side / n;
        d.periodic_ = (kind == DomainKind::Torus);
        d.size_ = 1;
        for (int a = 0; a < m; ++a) d.size_ *= static_cast<std::size_t>(n);
        return d;
    }

    DomainKind kind() const { return kind_; }
    int dim() const { return m_; }
    int points_per_axis() const { return n_; }
    double side() const { return side_; }
    double spacing() const { return h_; }
    bool periodic() const { return periodic_; }
    std::size_t size() const { return size_; }

    /// Cell measure; uniform over the grid.
    double weight() const { return m_ == 1 ? h_ : h_ * h_; }

    double total_measure() const { return m_ == 1 ? side_ : side_ * side_; }

    /// Continuum diameter of the underlying domain.
    double diameter() const {
        switch (kind_) {
            case DomainKind::Interval: return side_;
            case DomainKind::Cube: return side_ * std::sqrt(2.0);
            case DomainKind::Torus: return m_ == 1 ? side_ / 2.0 : side_ * std::sqrt(2.0) / 2.0;
        }
        return 0.0;
    }

    std::array<int, 2> coords(std::size_t i) const {
        check_index(i);
        if (m_ == 1) return {static_cast<int>(i), 0};
        return {static_cast<int>(i % static_cast<std::size_t>(n_)),
                static_cast<int>(i / static_cast<std::size_t>(n_))};
    }

    std::size_t index_of(int cx, int cy) const {
        return static_cast<std::size_t>(cx) + static_cast<std::size_t>(n_) * static_cast<std::size_t>(cy);
    }

    std::array<double, 2> point(std::size_t i) const {
        auto c = coords(i);
        return {(c[0] + 0.5) * h_, m_ == 2 ? (c[1] + 0.5) * h_ : 0.0};
    }

    double geodesic_distance(std::size_t i, std::size_t j) const {
        check_index(i);
        check_index(j);
        auto a = coords(i);
        auto b = coords(j);
        double acc = 0.0;
        for (int ax = 0; ax < m_; ++ax) {
            double d = std::abs(a[ax] - b[ax]) * h_;
            if (periodic_) d = std::min(d, side_ - d);
            acc += d * d;
        }
        return std::sqrt(acc);
    }

    /// Axis neighbor in the +1 direction; npos at a non-periodic boundary.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t axis_neighbor(std::size_t i, int axis) const { return axis_step(i, axis, +1); }

    /// Signed axis step (dir = +1 or -1); npos past a non-periodic boundary.
    std::size_t axis_step(std::size_t i, int axis, int dir) const {
        check_index(i);
        if (axis < 0 || axis >= m_) throw Error(ErrorCode::IndexOutOfRange, "axis out of range");
        auto c = coords(i);
        int v = c[axis] + dir;
        if (v == n_ || v < 0) {
            if (!periodic_) return npos;
            v = (v + n_) % n_;
        }
        c[axis] = v;
        return m_ == 1 ? static_cast<std::size_t>(c[0]) : index_of(c[0], c[1]);
    }

    /// All maximal 1D paths along `axis`; every index appears in exactly one
    /// path.  Loops are marked closed on periodic axes.
    std::vector<LineSection> line_sections(int axis) const {
        if (axis < 0 || axis >= m_) throw Error(ErrorCode::IndexOutOfRange, "axis out of range");
        std::vector<LineSection> out;
        if (m_ == 1) {
            LineSection sec;
            sec.closed = periodic_;
            sec.indices.reserve(size_);
            for (std::size_t i = 0; i < size_; ++i) sec.indices.push_back(i);
            out.push_back(std::move(sec));
            return out;
        }
        const int other = 1 - axis;
        for (int fixed = 0; fixed < n_; ++fixed) {
            LineSection sec;
            sec.closed = periodic_;
            sec.indices.reserve(static_cast<std::size_t>(n_));
            for (int v = 0; v < n_; ++v) {
                int cx = axis == 0 ? v : fixed;
                int cy = axis == 0 ? fixed : v;
                (void)other;
                sec.indices.push_back(index_of(cx, cy));
            }
            out.push_back(std::move(sec));
        }
        return out;
    }

    bool operator==(const GridDomain& o) const {
        return kind_ == o.kind_ && m_ == o.m_ && n_ == o.n_ && side_ == o.side_;
    }

  private:
    void check_index(std::size_t i) const {
        if (i >= size_) throw Error(ErrorCode::IndexOutOfRange, "grid index " + std::to_string(i));
    }

    DomainKind kind_ = DomainKind::Interval;
    int m_ = 1;
    int n_ = 2;
    double side_ = 1.0;
    double h_ = 0.5;
    bool periodic_ = false;
    std::size_t size_ = 2;
};

inline GridDomain make_domain(DomainKind kind, int m, int n, double side) {
    return GridDomain::make(kind, m, n, side);
}

}  // namespace liftlab
