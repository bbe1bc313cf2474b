#pragma once

#include <functional>
#include <vector>

#include "liftlab/covering.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/grid_domain.hpp"
#include "liftlab/target_geometry.hpp"

namespace liftlab {

/// Sampled map from a grid domain into a target geometry.
struct Field {
    GridDomain domain;
    TargetGeometry space;
    std::vector<TargetPoint> values;

    std::size_t size() const { return values.size(); }

    const TargetPoint& operator[](std::size_t i) const { return values[i]; }

    bool is_real() const { return space.kind() == TargetKind::RealLine; }

    double target_distance(std::size_t i, std::size_t j) const {
        return space.distance(values[i], values[j]);
    }

    void require_nonempty() const {
        if (values.empty()) throw Error(ErrorCode::EmptyField, "field has no samples");
    }
};

/// Real-valued field from a scalar function of the grid point.
inline Field make_real_field(const GridDomain& dom, const std::function<double(double, double)>& f) {
    Field out{dom, TargetGeometry::real_line(), {}};
    out.values.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        out.values.push_back(pt1(f(p[0], p[1])));
    }
    return out;
}

inline Field make_constant_field(const GridDomain& dom, const TargetGeometry& space, TargetPoint v) {
    Field out{dom, space, {}};
    out.values.assign(dom.size(), space.canonical(v));
    return out;
}

/// Push a total-space field down to the base through the covering.
inline Field project_field(const CoveringChart& cov, const Field& total_field) {
    Field out{total_field.domain, cov.base(), {}};
    out.values.reserve(total_field.size());
    for (const auto& v : total_field.values) out.values.push_back(cov.project(v));
    return out;
}

/// Interpret a real field as total-space values of a covering (coordinates
/// reduced to the canonical range where the total space is compact).
inline Field as_total_field(const CoveringChart& cov, const Field& real_field) {
    if (cov.total().dim() != real_field.space.dim())
        throw Error(ErrorCode::DomainMismatch, "field dimension does not match total space");
    Field out{real_field.domain, cov.total(), {}};
    out.values.reserve(real_field.size());
    for (const auto& v : real_field.values) out.values.push_back(cov.total().canonical(v));
    return out;
}

/// Apply one deck transformation pointwise.
inline Field deck_apply_field(const CoveringChart& cov, const DeckElement& elem, const Field& total_field) {
    Field out{total_field.domain, total_field.space, {}};
    out.values.reserve(total_field.size());
    for (const auto& v : total_field.values) out.values.push_back(cov.deck_apply(elem, v));
    return out;
}

}  // namespace liftlab
