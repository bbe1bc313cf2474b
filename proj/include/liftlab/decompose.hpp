#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "liftlab/energy.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/field.hpp"

namespace liftlab {

struct DecompositionResult {
    Field g;  // fractional part
    Field h;  // first-order part
    double objective = 0.0;
    double scale_chosen = 0.0;
    int refine_iterations = 0;
};

// ============================================================================
// Mollification
// ============================================================================

/// Discrete convolution with the normalized bump (1 - |z|^2)^3_+ of radius
/// `scale`.  Periodic wrap on torus domains, reflection at interval/cube
/// boundaries; scale = 0 is the identity.
inline Field mollify(const Field& f, double scale) {
    f.require_nonempty();
    if (!f.is_real()) throw Error(ErrorCode::NonRealField, "mollify needs a real-valued field");
    if (!(scale >= 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "scale must be >= 0");
    const GridDomain& dom = f.domain;
    const double h = dom.spacing();
    const int n = dom.points_per_axis();
    const int radius = scale > 0.0 ? static_cast<int>(std::floor(scale / h)) : 0;
    if (radius == 0) return f;

    auto fold = [&](int idx) {
        if (dom.periodic()) {
            idx %= n;
            if (idx < 0) idx += n;
            return idx;
        }
        while (idx < 0 || idx >= n) {  // mirror reflection
            if (idx < 0) idx = -idx - 1;
            if (idx >= n) idx = 2 * n - 1 - idx;
        }
        return idx;
    };

    Field out{dom, f.space, std::vector<TargetPoint>(f.size(), TargetPoint{0.0, 0.0})};
    if (dom.dim() == 1) {
        std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
        double total = 0.0;
        for (int o = -radius; o <= radius; ++o) {
            double z = (o * h) / scale;
            double v = std::max(0.0, 1.0 - z * z);
            w[static_cast<std::size_t>(o + radius)] = v * v * v;
            total += v * v * v;
        }
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int o = -radius; o <= radius; ++o)
                acc += w[static_cast<std::size_t>(o + radius)] * f.values[static_cast<std::size_t>(fold(i + o))][0];
            out.values[static_cast<std::size_t>(i)][0] = acc / total;
        }
    } else {
        std::vector<double> w;
        std::vector<std::pair<int, int>> offs;
        double total = 0.0;
        for (int ox = -radius; ox <= radius; ++ox)
            for (int oy = -radius; oy <= radius; ++oy) {
                double z2 = (ox * ox + oy * oy) * h * h / (scale * scale);
                if (z2 >= 1.0) continue;
                double v = 1.0 - z2;
                v = v * v * v;
                offs.emplace_back(ox, oy);
                w.push_back(v);
                total += v;
            }
        for (std::size_t i = 0; i < dom.size(); ++i) {
            auto c = dom.coords(i);
            double acc = 0.0;
            for (std::size_t k = 0; k < offs.size(); ++k) {
                int cx = fold(c[0] + offs[k].first);
                int cy = fold(c[1] + offs[k].second);
                acc += w[k] * f.values[dom.index_of(cx, cy)][0];
            }
            out.values[i][0] = acc / total;
        }
    }
    return out;
}

// ============================================================================
// Sum-space objective
// ============================================================================

/// Objective of a candidate splitting f = g + h: fractional energy of g plus
/// first-order energy of h at exponent sp.
inline double sum_objective(const Field& g, const Field& h, double s, double p, int threads = 0) {
    if (!(g.domain == h.domain)) throw Error(ErrorCode::DomainMismatch, "split parts on different domains");
    if (!g.is_real() || !h.is_real()) throw Error(ErrorCode::NonRealField, "split parts must be real");
    if (!(s * p > 1.0)) throw Error(ErrorCode::SubcriticalExponent, "sum space needs sp > 1");
    return gagliardo(g, s, p, threads).value + dirichlet(h, s * p).value;
}

/// Truncated-seminorm membership functional of the sum space; requires the
/// characterizing window 0 < q < sp.
inline double sum_membership_functional(const Field& f, double s, double p, double q, int threads = 0) {
    if (!(q > 0.0 && q < s * p)) throw Error(ErrorCode::ExponentOutOfRange, "membership needs 0 < q < sp");
    return truncated(f, s, p, q, threads).value;
}

namespace detail {

/// Contribution of cell i to dirichlet(h, r); recomputed locally during the
/// coordinate-descent line search.
inline double cell_dirichlet_term(const Field& h, std::size_t i, double r) {
    const GridDomain& dom = h.domain;
    const double hs = dom.spacing();
    double g2 = 0.0;
    for (int a = 0; a < dom.dim(); ++a) {
        std::size_t j = dom.axis_step(i, a, +1);
        double d;
        if (j == GridDomain::npos) {
            std::size_t k = dom.axis_step(i, a, -1);
            d = std::abs(h.values[i][0] - h.values[k][0]);
        } else {
            d = std::abs(h.values[j][0] - h.values[i][0]);
        }
        double gr = d / hs;
        g2 += gr * gr;
    }
    return pow_pos(std::sqrt(g2), r) * dom.weight();
}

}  // namespace detail

struct SplitOptions {
    int ladder_scales = 16;
    int refine_steps = 200;
    int line_search_iters = 40;
    int threads = 0;
};

/// Minimize gagliardo(g,s,p) + dirichlet(h,sp) over splittings f = g + h.
///
/// Candidates h = mollify(f, scale) over a geometric ladder of scales from
/// the grid spacing to the domain diameter, plus the two trivial splits
/// (h = mean f and h = f); the best candidate is then refined by cellwise
/// coordinate descent with an exact line search on the convex objective.
inline DecompositionResult split_sum_space(const Field& f, double s, double p, SplitOptions opt = {}) {
    f.require_nonempty();
    if (!f.is_real()) throw Error(ErrorCode::NonRealField, "split needs a real-valued field");
    if (!(s * p > 1.0)) throw Error(ErrorCode::SubcriticalExponent, "sum space needs sp > 1");
    const GridDomain& dom = f.domain;
    const double r = s * p;
    const std::size_t n = f.size();

    double mean = 0.0;
    for (const auto& v : f.values) mean += v[0];
    mean /= static_cast<double>(n);

    struct Candidate {
        Field h;
        double scale;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({make_constant_field(dom, TargetGeometry::real_line(), pt1(mean)), dom.diameter() * 2.0});
    candidates.push_back({f, 0.0});
    const double lo = dom.spacing(), hi = dom.diameter();
    for (int k = 0; k < opt.ladder_scales; ++k) {
        double scale = lo * std::pow(hi / lo, opt.ladder_scales == 1 ? 0.0 : static_cast<double>(k) / (opt.ladder_scales - 1));
        candidates.push_back({mollify(f, scale), scale});
    }

    double best_obj = std::numeric_limits<double>::infinity();
    Field best_h;
    double best_scale = 0.0;
    for (const auto& c : candidates) {
        Field g{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(n)};
        for (std::size_t i = 0; i < n; ++i) g.values[i] = pt1(f.values[i][0] - c.h.values[i][0]);
        double obj = sum_objective(g, c.h, s, p, opt.threads);
        if (obj < best_obj) {
            best_obj = obj;
            best_h = c.h;
            best_scale = c.scale;
        }
    }

    Field g{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(n)};
    for (std::size_t i = 0; i < n; ++i) g.values[i] = pt1(f.values[i][0] - best_h.values[i][0]);
    Field h = best_h;

    // cellwise coordinate descent; perturbing g_i by delta moves h_i by
    // -delta, so the objective change is O(n) in the fractional part and
    // local in the first-order part
    detail::DomGeom geo(dom);
    const double w2 = dom.weight() * dom.weight();
    const double kex = dom.dim() + s * p;
    const double span = [&] {
        double vlo = f.values[0][0], vhi = f.values[0][0];
        for (const auto& v : f.values) {
            vlo = std::min(vlo, v[0]);
            vhi = std::max(vhi, v[0]);
        }
        return (vhi - vlo) + 1.0;
    }();

    auto affected_cells = [&](std::size_t i) {
        std::vector<std::size_t> cells{i};
        for (int a = 0; a < dom.dim(); ++a) {
            std::size_t back = dom.axis_step(i, a, -1);
            if (back != GridDomain::npos && back != i) cells.push_back(back);
            // a boundary cell uses its backward neighbor in the one-sided
            // stencil, so the forward neighbor's term can also change
            std::size_t fwd = dom.axis_step(i, a, +1);
            if (fwd != GridDomain::npos && fwd != i && dom.axis_step(fwd, a, +1) == GridDomain::npos)
                cells.push_back(fwd);
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        return cells;
    };

    int steps = 0;
    for (int step = 0; step < opt.refine_steps; ++step, ++steps) {
        std::size_t i = static_cast<std::size_t>(step) % n;
        auto cells = affected_cells(i);

        // objective delta as a function of the perturbation
        auto delta_obj = [&](double delta) {
            double d_frac = 0.0;
            double gi = g.values[i][0];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double base = std::abs(gi - g.values[j][0]);
                double pert = std::abs(gi + delta - g.values[j][0]);
                d_frac += (detail::pow_pos(pert, p) - detail::pow_pos(base, p)) / detail::pow_pos(geo.dist(i, j), kex);
            }
            d_frac *= 2.0 * w2;
            double d_dir = 0.0;
            for (std::size_t c : cells) d_dir -= detail::cell_dirichlet_term(h, c, r);
            h.values[i][0] -= delta;
            for (std::size_t c : cells) d_dir += detail::cell_dirichlet_term(h, c, r);
            h.values[i][0] += delta;
            return d_frac + d_dir;
        };

        // ternary search on the convex 1D section
        double a = -span, b = span;
        for (int it = 0; it < opt.line_search_iters; ++it) {
            double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (delta_obj(m1) <= delta_obj(m2))
                b = m2;
            else
                a = m1;
        }
        double delta = (a + b) / 2.0;
        double gain = delta_obj(delta);
        if (gain < 0.0) {
            g.values[i][0] += delta;
            h.values[i][0] -= delta;
        }
    }

    DecompositionResult out;
    out.objective = sum_objective(g, h, s, p, opt.threads);
    // refinement never worsens the ladder optimum; guard against quadrature
    // round-off by keeping the better of the two
    if (out.objective > best_obj) {
        for (std::size_t i = 0; i < n; ++i) {
            g.values[i] = pt1(f.values[i][0] - best_h.values[i][0]);
        }
        h = best_h;
        out.objective = best_obj;
    }
    out.g = std::move(g);
    out.h = std::move(h);
    out.scale_chosen = best_scale;
    out.refine_iterations = steps;
    return out;
}

}  // namespace liftlab
