#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "liftlab/covering.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/field.hpp"

namespace liftlab {

/// Holonomy residuals below this are floating-point noise; at or above it the
/// closure defect of a grid cycle is a genuine deck jump (the smallest
/// possible jump is 2*pi times a covering constant).
inline constexpr double holonomy_tolerance = 1e-9;

struct LiftResult {
    Field lifted;
    std::size_t seed_index = 0;
    TargetPoint seed_sheet{0.0, 0.0};
    double max_holonomy_residual = 0.0;
};

struct WindingResult {
    long count = 0;
    double residual = 0.0;  // distance of the raw turn count to the integer
};

/// Outcome of matching two liftings by a single deck transformation.  The
/// dichotomy is all-or-nothing: either one element works everywhere or the
/// liftings are not deck-related.
struct AlignResult {
    bool related = false;
    DeckElement tau;
    double mismatch_fraction = 0.0;
};

// ============================================================================
// Path lifting
// ============================================================================

/// Nearest-sheet continuation along a sampled path.  lifted[0] is the local
/// lift of values[0] at the seed sheet; each further sample is lifted next to
/// its predecessor.  Throws StepTooLarge(k) when the base distance from
/// sample k to k+1 reaches the injectivity radius.
inline std::vector<TargetPoint> lift_path(const std::vector<TargetPoint>& values, const CoveringChart& cov,
                                          TargetPoint seed_sheet) {
    if (values.empty()) throw Error(ErrorCode::EmptyField, "empty path");
    std::vector<TargetPoint> lifted;
    lifted.reserve(values.size());
    lifted.push_back(cov.local_lift(values[0], seed_sheet));
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        try {
            lifted.push_back(cov.local_lift(values[k + 1], lifted[k]));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::AmbiguousLift)
                throw StepTooLargeError(k, "path step " + std::to_string(k) + " reaches the injectivity radius");
            throw;
        }
    }
    return lifted;
}

// ============================================================================
// Field lifting with holonomy certificate
// ============================================================================

namespace detail {

inline std::vector<std::size_t> cycle_witness(const std::vector<std::size_t>& parent, std::size_t i, std::size_t j) {
    auto chain = [&](std::size_t v) {
        std::vector<std::size_t> c{v};
        while (parent[v] != v) {
            v = parent[v];
            c.push_back(v);
        }
        return c;
    };
    std::vector<std::size_t> ci = chain(i), cj = chain(j);
    std::reverse(cj.begin(), cj.end());
    ci.insert(ci.end(), cj.begin(), cj.end());
    ci.push_back(i);
    return ci;
}

}  // namespace detail

/// Lift a base field over the covering by breadth-first nearest-sheet
/// propagation from the seed, then certify the lift by checking the closure
/// defect of every non-tree grid edge.  A residual above holonomy_tolerance
/// means the field wraps a nontrivial loop and has no lift; the offending
/// cycle is reported in the error.
inline LiftResult lift_field(const Field& base, const CoveringChart& cov, std::size_t seed_index,
                             TargetPoint seed_sheet) {
    base.require_nonempty();
    if (seed_index >= base.size()) throw Error(ErrorCode::IndexOutOfRange, "seed index");
    const GridDomain& dom = base.domain;
    const double inj = cov.base().injectivity_radius();
    const auto& bd = cov.base();

    // every grid edge must be shorter than the injectivity radius in the base
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (int a = 0; a < dom.dim(); ++a) {
            std::size_t j = dom.axis_step(i, a, +1);
            if (j == GridDomain::npos || j == i) continue;
            if (!(bd.distance(base.values[i], base.values[j]) < inj))
                throw StepTooLargeError(i, "grid edge (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") reaches the injectivity radius");
        }
    }

    std::vector<TargetPoint> lifted(base.size(), TargetPoint{0.0, 0.0});
    std::vector<char> visited(base.size(), 0);
    std::vector<std::size_t> parent(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) parent[i] = i;

    lifted[seed_index] = cov.local_lift(base.values[seed_index], seed_sheet);
    visited[seed_index] = 1;
    std::deque<std::size_t> queue{seed_index};
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (int a = 0; a < dom.dim(); ++a) {
            for (int dir : {+1, -1}) {
                std::size_t j = dom.axis_step(i, a, dir);
                if (j == GridDomain::npos || j == i || visited[j]) continue;
                lifted[j] = cov.local_lift(base.values[j], lifted[i]);
                parent[j] = i;
                visited[j] = 1;
                queue.push_back(j);
            }
        }
    }

    // holonomy certificate over all grid edges
    double max_residual = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (int a = 0; a < dom.dim(); ++a) {
            std::size_t j = dom.axis_step(i, a, +1);
            if (j == GridDomain::npos || j == i) continue;
            TargetPoint cand = cov.local_lift(base.values[j], lifted[i]);
            double r = cov.total().distance(cand, lifted[j]);
            if (r > max_residual) max_residual = r;
            if (r > holonomy_tolerance)
                throw HolonomyError(detail::cycle_witness(parent, i, j), r,
                                    "closure defect " + std::to_string(r) + " on edge (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        }
    }

    LiftResult out;
    out.lifted = Field{dom, cov.total(), std::move(lifted)};
    out.seed_index = seed_index;
    out.seed_sheet = seed_sheet;
    out.max_holonomy_residual = max_residual;
    return out;
}

// ============================================================================
// Winding number
// ============================================================================

/// Winding number of a closed loop of circle values: lift the loop through
/// the universal covering of the circle and divide the endpoint gap by 2*pi.
inline WindingResult winding(const std::vector<TargetPoint>& loop) {
    if (loop.empty()) throw Error(ErrorCode::EmptyField, "empty loop");
    CoveringChart cov = CoveringChart::line_over_circle();
    auto lifted = lift_path(loop, cov, loop[0]);
    // closing step back to the first sample
    TargetPoint closing;
    try {
        closing = cov.local_lift(loop[0], lifted.back());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AmbiguousLift)
            throw StepTooLargeError(loop.size() - 1, "closing step reaches the injectivity radius");
        throw;
    }
    double turns = (closing[0] - lifted[0][0]) / two_pi;
    WindingResult out;
    out.count = std::lround(turns);
    out.residual = std::abs(turns - static_cast<double>(out.count));
    return out;
}

// ============================================================================
// Deck alignment and the chain rule
// ============================================================================

namespace detail {

inline void check_same_projection(const Field& a, const Field& b, const CoveringChart& cov, double tol) {
    if (!(a.domain == b.domain)) throw Error(ErrorCode::DomainMismatch, "liftings live on different domains");
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = cov.base().distance(cov.project(a.values[i]), cov.project(b.values[i]));
        if (!(d <= tol))
            throw Error(ErrorCode::ProjectionMismatch,
                        "inputs are not liftings of the same field (index " + std::to_string(i) + ")");
    }
}

}  // namespace detail

/// Find the deck transformation tau with deck(tau) . lift_a = lift_b at every
/// grid point (sup distance <= 1e-9).  When no single element works the
/// result carries the fraction of mismatched points for the candidate read
/// off at the first grid point.
inline AlignResult deck_align(const Field& lift_a, const Field& lift_b, const CoveringChart& cov) {
    lift_a.require_nonempty();
    detail::check_same_projection(lift_a, lift_b, cov, 1e-9);
    const double tol = 1e-9;

    DeckElement tau;
    switch (cov.family()) {
        case CoveringFamily::LineOverCircle:
            tau.j0 = std::lround((lift_b.values[0][0] - lift_a.values[0][0]) / two_pi);
            break;
        case CoveringFamily::KFoldCircle: {
            long k = cov.sheets();
            long j = std::lround((lift_b.values[0][0] - lift_a.values[0][0]) / two_pi);
            tau.j0 = ((j % k) + k) % k;
            break;
        }
        case CoveringFamily::PlaneOverTorus:
            tau.j0 = std::lround((lift_b.values[0][0] - lift_a.values[0][0]) / two_pi);
            tau.j1 = std::lround((lift_b.values[0][1] - lift_a.values[0][1]) / two_pi);
            break;
    }

    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < lift_a.size(); ++i) {
        double d = cov.total().distance(cov.deck_apply(tau, lift_a.values[i]), lift_b.values[i]);
        if (!(d <= tol)) ++mismatched;
    }
    AlignResult out;
    out.tau = tau;
    out.related = mismatched == 0;
    out.mismatch_fraction = static_cast<double>(mismatched) / static_cast<double>(lift_a.size());
    return out;
}

/// Local-isometry defect of a lifting: the largest difference, over grid
/// edges, between the total and base distances of the edge values.  Edges of
/// a nearest-sheet lift sit below the injectivity radius where the covering
/// is an isometry, so genuine lifts satisfy this to 1e-12 and first-order
/// energies transport through the covering; an edge that jumped sheets shows
/// up with a defect of at least 2 pi - inj.
inline double chain_rule_residual(const Field& base, const Field& lift, const CoveringChart& cov) {
    base.require_nonempty();
    if (!(base.domain == lift.domain)) throw Error(ErrorCode::DomainMismatch, "base and lift domains differ");
    for (std::size_t i = 0; i < base.size(); ++i) {
        double d = cov.base().distance(cov.project(lift.values[i]), cov.base().canonical(base.values[i]));
        if (!(d <= 1e-9))
            throw Error(ErrorCode::ProjectionMismatch, "lift does not project to the field (index " + std::to_string(i) + ")");
    }
    const GridDomain& dom = base.domain;
    double worst = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (int a = 0; a < dom.dim(); ++a) {
            std::size_t j = dom.axis_step(i, a, +1);
            if (j == GridDomain::npos || j == i) continue;
            double dt = cov.total().distance(lift.values[i], lift.values[j]);
            double db = cov.base().distance(cov.base().canonical(base.values[i]), cov.base().canonical(base.values[j]));
            worst = std::max(worst, std::abs(dt - db));
        }
    }
    return worst;
}

}  // namespace liftlab
