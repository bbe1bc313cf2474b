#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "liftlab/errors.hpp"
#include "liftlab/target_geometry.hpp"

namespace liftlab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class CoveringFamily { LineOverCircle, KFoldCircle, PlaneOverTorus };

/// Element of the deck transformation group.  j0 alone for rank-1 groups
/// (Z for the line, Z/k for the k-fold circle), the pair (j0, j1) for Z^2.
struct DeckElement {
    long j0 = 0;
    long j1 = 0;

    bool operator==(const DeckElement&) const = default;
};

/// An analytic Riemannian covering pi : total -> base from the hardcoded
/// family: the universal covering of the circle, the k-fold self-covering of
/// the circle, and the universal covering of the flat 2-torus.  Projection,
/// nearest-sheet inverse and deck action are exact formulas.
///
/// local_lift returns a value that depends only on the canonical base
/// coordinate and an integer sheet datum, so nearest-sheet continuations are
/// reproducible bit for bit along any path that selects the same sheets.
class CoveringChart {
  public:
    static CoveringChart line_over_circle() {
        CoveringChart c;
        c.family_ = CoveringFamily::LineOverCircle;
        c.base_ = TargetGeometry::circle(two_pi);
        c.total_ = TargetGeometry::real_line();
        return c;
    }

    static CoveringChart k_fold_circle(int k) {
        if (k < 1) throw Error(ErrorCode::InvalidDeckElement, "k-fold covering needs k >= 1");
        CoveringChart c;
        c.family_ = CoveringFamily::KFoldCircle;
        c.sheets_ = k;
        c.base_ = TargetGeometry::circle(two_pi);
        c.total_ = TargetGeometry::circle(two_pi * k);
        return c;
    }

    static CoveringChart plane_over_torus() {
        CoveringChart c;
        c.family_ = CoveringFamily::PlaneOverTorus;
        c.base_ = TargetGeometry::flat_torus2(two_pi, two_pi);
        c.total_ = TargetGeometry::real_plane();
        return c;
    }

    /// CLI / config identifiers: "r-over-s1", "kfold:<k>", "r2-over-t2".
    static CoveringChart from_id(const std::string& id) {
        if (id == "r-over-s1") return line_over_circle();
        if (id == "r2-over-t2") return plane_over_torus();
        if (id.rfind("kfold:", 0) == 0) {
            int k = 0;
            try {
                k = std::stoi(id.substr(6));
            } catch (...) {
                throw Error(ErrorCode::SchemaError, "bad covering id '" + id + "'");
            }
            return k_fold_circle(k);
        }
        throw Error(ErrorCode::SchemaError, "unknown covering id '" + id + "'");
    }

    std::string id() const {
        switch (family_) {
            case CoveringFamily::LineOverCircle: return "r-over-s1";
            case CoveringFamily::KFoldCircle: return "kfold:" + std::to_string(sheets_);
            case CoveringFamily::PlaneOverTorus: return "r2-over-t2";
        }
        return "?";
    }

    CoveringFamily family() const { return family_; }
    const TargetGeometry& base() const { return base_; }
    const TargetGeometry& total() const { return total_; }
    int sheets() const { return sheets_; }

    /// Rank of the deck group as a free abelian group (0 for the finite Z/k).
    int deck_rank() const { return family_ == CoveringFamily::PlaneOverTorus ? 2 : (family_ == CoveringFamily::LineOverCircle ? 1 : 0); }

    /// Order of the deck group; 0 means infinite.
    long deck_order() const { return family_ == CoveringFamily::KFoldCircle ? sheets_ : 0; }

    TargetPoint project(const TargetPoint& total_point) const {
        switch (family_) {
            case CoveringFamily::LineOverCircle:
                return {TargetGeometry::wrap(total_point[0], two_pi), 0.0};
            case CoveringFamily::KFoldCircle:
                return {TargetGeometry::wrap(total_point[0], two_pi), 0.0};
            case CoveringFamily::PlaneOverTorus:
                return {TargetGeometry::wrap(total_point[0], two_pi), TargetGeometry::wrap(total_point[1], two_pi)};
        }
        return total_point;
    }

    /// Unique preimage of base_point at distance < inj(base) from reference.
    /// Throws AmbiguousLift when the base distance reaches the injectivity
    /// radius, which tells the caller to subdivide its path.
    TargetPoint local_lift(const TargetPoint& base_point, const TargetPoint& reference) const {
        const double inj = base_.injectivity_radius();
        switch (family_) {
            case CoveringFamily::LineOverCircle: {
                const double theta = TargetGeometry::wrap(base_point[0], two_pi);
                // integer sheet nearest to the reference
                const double k = std::round((reference[0] - theta) / two_pi);
                const double lifted = theta + two_pi * k;
                if (!(std::abs(lifted - reference[0]) < inj))
                    throw Error(ErrorCode::AmbiguousLift, "base distance >= injectivity radius");
                return {lifted, 0.0};
            }
            case CoveringFamily::KFoldCircle: {
                const double theta = TargetGeometry::wrap(base_point[0], two_pi);
                const double period = two_pi * sheets_;
                // preimages are theta + 2*pi*j, j = 0..k-1; pick the sheet
                // closest to the reference on the total circle
                long best = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (long j = 0; j < sheets_; ++j) {
                    double cand = theta + two_pi * static_cast<double>(j);
                    double d = circle_dist(cand, reference[0], period);
                    if (d < best_d) {
                        best_d = d;
                        best = j;
                    }
                }
                if (!(best_d < inj))
                    throw Error(ErrorCode::AmbiguousLift, "base distance >= injectivity radius");
                return {theta + two_pi * static_cast<double>(best), 0.0};
            }
            case CoveringFamily::PlaneOverTorus: {
                const double tx = TargetGeometry::wrap(base_point[0], two_pi);
                const double ty = TargetGeometry::wrap(base_point[1], two_pi);
                const double kx = std::round((reference[0] - tx) / two_pi);
                const double ky = std::round((reference[1] - ty) / two_pi);
                TargetPoint lifted = {tx + two_pi * kx, ty + two_pi * ky};
                if (!(total_.distance(lifted, reference) < inj))
                    throw Error(ErrorCode::AmbiguousLift, "base distance >= injectivity radius");
                return lifted;
            }
        }
        return base_point;
    }

    TargetPoint deck_apply(const DeckElement& elem, const TargetPoint& total_point) const {
        switch (family_) {
            case CoveringFamily::LineOverCircle:
                return {total_point[0] + two_pi * static_cast<double>(elem.j0), 0.0};
            case CoveringFamily::KFoldCircle: {
                if (elem.j0 < 0 || elem.j0 >= sheets_)
                    throw Error(ErrorCode::InvalidDeckElement,
                                "index " + std::to_string(elem.j0) + " outside Z/" + std::to_string(sheets_));
                const double period = two_pi * sheets_;
                return {TargetGeometry::wrap(total_point[0] + two_pi * static_cast<double>(elem.j0), period), 0.0};
            }
            case CoveringFamily::PlaneOverTorus:
                return {total_point[0] + two_pi * static_cast<double>(elem.j0),
                        total_point[1] + two_pi * static_cast<double>(elem.j1)};
        }
        return total_point;
    }

    /// Group law index arithmetic (reduced mod k for the finite group).
    DeckElement deck_compose(const DeckElement& a, const DeckElement& b) const {
        DeckElement r{a.j0 + b.j0, a.j1 + b.j1};
        if (family_ == CoveringFamily::KFoldCircle) r.j0 = ((r.j0 % sheets_) + sheets_) % sheets_;
        if (deck_rank() < 2) r.j1 = 0;
        return r;
    }

  private:
    static double circle_dist(double a, double b, double period) {
        double d = std::fmod(std::abs(a - b), period);
        return std::min(d, period - d);
    }

    CoveringFamily family_ = CoveringFamily::LineOverCircle;
    int sheets_ = 1;
    TargetGeometry base_;
    TargetGeometry total_;
};

}  // namespace liftlab
