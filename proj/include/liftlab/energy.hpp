#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "liftlab/covering.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/field.hpp"
#include "liftlab/pair_sum.hpp"

namespace liftlab {

/// Exponent tuple shared by the energies.  q = 0 encodes the "∧ 1" cap.
struct EnergyParams {
    double s = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double threshold = std::numeric_limits<double>::quiet_NaN();
    double gamma = std::numeric_limits<double>::quiet_NaN();
};

struct EnergyValue {
    double value = 0.0;
    std::uint64_t pair_count = 0;
    EnergyParams params;
};

/// Worker count used by the pair-sum quadratures when a caller passes 0.
/// The result does not depend on it; only the wall time does.
inline int& default_threads() {
    static int t = 2;
    return t;
}

namespace detail {

inline int resolve_threads(int threads) { return threads > 0 ? threads : default_threads(); }

/// x^e for x >= 0 with fast paths for the hot exponents.
inline double pow_pos(double x, double e) {
    if (e == 2.0) return x * x;
    if (e == 1.0) return x;
    if (e == 3.0) return x * x * x;
    if (e == 1.5) return x * std::sqrt(x);
    if (e == 0.5) return std::sqrt(x);
    if (e == 0.0) return 1.0;
    return std::pow(x, e);
}

/// Flat geometry of a grid domain, unpacked for the pair kernels.
struct DomGeom {
    int m;
    int n;
    double h;
    double side;
    bool periodic;
    std::vector<double> px, py;

    explicit DomGeom(const GridDomain& dom)
        : m(dom.dim()), n(dom.points_per_axis()), h(dom.spacing()), side(dom.side()), periodic(dom.periodic()) {
        px.resize(dom.size());
        py.resize(dom.size());
        for (std::size_t i = 0; i < dom.size(); ++i) {
            auto p = dom.point(i);
            px[i] = p[0];
            py[i] = p[1];
        }
    }

    double dist(std::size_t i, std::size_t j) const {
        double dx = std::abs(px[i] - px[j]);
        if (periodic && dx > side - dx) dx = side - dx;
        if (m == 1) return dx;
        double dy = std::abs(py[i] - py[j]);
        if (periodic && dy > side - dy) dy = side - dy;
        return std::sqrt(dx * dx + dy * dy);
    }
};

/// Target distance specialized once per energy evaluation.
struct TargetDist {
    TargetKind kind;
    double l0, l1;

    explicit TargetDist(const TargetGeometry& g)
        : kind(g.kind()), l0(g.dim() >= 1 && g.kind() != TargetKind::RealLine && g.kind() != TargetKind::RealPlane ? g.period(0) : 0.0),
          l1(g.kind() == TargetKind::FlatTorus2 ? g.period(1) : 0.0) {}

    static double circ(double a, double b, double period) {
        double d = std::fmod(std::abs(a - b), period);
        return std::min(d, period - d);
    }

    double operator()(const TargetPoint& a, const TargetPoint& b) const {
        switch (kind) {
            case TargetKind::RealLine: return std::abs(a[0] - b[0]);
            case TargetKind::RealPlane: return std::hypot(a[0] - b[0], a[1] - b[1]);
            case TargetKind::Circle: return circ(a[0], b[0], l0);
            case TargetKind::FlatTorus2: return std::hypot(circ(a[0], b[0], l0), circ(a[1], b[1], l1));
        }
        return 0.0;
    }
};

inline void check_sp(double s, double p) {
    if (!(s > 0.0 && s < 1.0)) throw Error(ErrorCode::ExponentOutOfRange, "s must lie in (0,1)");
    if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::ExponentOutOfRange, "p must lie in (1,inf)");
}

}  // namespace detail

// ============================================================================
// Nonlocal pair-sum energies
// All pair sums share the quadrature E = sum_{i != j} K(...) w_i w_j with the
// diagonal excluded and blocked fixed-order accumulation (see pair_sum.hpp).
// ============================================================================

/// Gagliardo seminorm quadrature: kernel d_N(u_i,u_j)^p / d_M(x_i,x_j)^{m+sp}.
inline EnergyValue gagliardo(const Field& f, double s, double p, int threads = 0) {
    f.require_nonempty();
    detail::check_sp(s, p);
    detail::DomGeom geo(f.domain);
    detail::TargetDist td(f.space);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = f.domain.dim() + s * p;
    auto res = detail::pair_sum(f.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(f.values[i], f.values[j]);
                                    double dd = geo.dist(i, j);
                                    acc.add(0, detail::pow_pos(dt, p) / detail::pow_pos(dd, kex) * w2);
                                    acc.count();
                                });
    return {res.sums[0], res.pair_count, {s, p}};
}

/// Truncated seminorm: kernel min(d^p, d^q), with d^0 := 1.
inline EnergyValue truncated(const Field& f, double s, double p, double q, int threads = 0) {
    f.require_nonempty();
    detail::check_sp(s, p);
    if (!(q >= 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "q must be >= 0");
    detail::DomGeom geo(f.domain);
    detail::TargetDist td(f.space);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = f.domain.dim() + s * p;
    auto res = detail::pair_sum(f.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(f.values[i], f.values[j]);
                                    double num = std::min(detail::pow_pos(dt, p), detail::pow_pos(dt, q));
                                    double dd = geo.dist(i, j);
                                    acc.add(0, num / detail::pow_pos(dd, kex) * w2);
                                    acc.count();
                                });
    return {res.sums[0], res.pair_count, {s, p, q}};
}

/// Gap energy: pairs with d >= lambda, kernel (d - lambda)^q / d_M^{m+gamma}.
inline EnergyValue gap_energy(const Field& f, double lambda, double q, double gamma, int threads = 0) {
    f.require_nonempty();
    if (!(lambda >= 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "lambda must be >= 0");
    if (!(q >= 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "q must be >= 0");
    if (!(f.domain.dim() + gamma > 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "m + gamma must be positive");
    detail::DomGeom geo(f.domain);
    detail::TargetDist td(f.space);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = f.domain.dim() + gamma;
    auto res = detail::pair_sum(f.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(f.values[i], f.values[j]);
                                    if (dt < lambda) return;
                                    double dd = geo.dist(i, j);
                                    acc.add(0, detail::pow_pos(dt - lambda, q) / detail::pow_pos(dd, kex) * w2);
                                    acc.count();
                                });
    EnergyValue out{res.sums[0], res.pair_count, {}};
    out.params.q = q;
    out.params.threshold = lambda;
    out.params.gamma = gamma;
    return out;
}

/// Membership functional of the lifting space: pairs separated by at least
/// inj(base)/2 in the total space, kernel 1 / d_M^{m+1}.
inline EnergyValue x_energy(const Field& total_field, const CoveringChart& cov, int threads = 0) {
    total_field.require_nonempty();
    detail::DomGeom geo(total_field.domain);
    detail::TargetDist td(total_field.space);
    const double w2 = total_field.domain.weight() * total_field.domain.weight();
    const double thr = cov.base().injectivity_radius() / 2.0;
    const double kex = total_field.domain.dim() + 1.0;
    auto res = detail::pair_sum(total_field.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(total_field.values[i], total_field.values[j]);
                                    if (dt < thr) return;
                                    acc.add(0, w2 / detail::pow_pos(geo.dist(i, j), kex));
                                    acc.count();
                                });
    EnergyValue out{res.sums[0], res.pair_count, {}};
    out.params.threshold = thr;
    return out;
}

/// Large-oscillation energy: pairs with d >= delta, kernel d^{p*}/d_M^{m+s*p*}.
inline EnergyValue large_osc_energy(const Field& f, double delta, double s_star, double p_star, int threads = 0) {
    f.require_nonempty();
    if (!(delta > 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "delta must be positive");
    detail::DomGeom geo(f.domain);
    detail::TargetDist td(f.space);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = f.domain.dim() + s_star * p_star;
    auto res = detail::pair_sum(f.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(f.values[i], f.values[j]);
                                    if (dt < delta) return;
                                    acc.add(0, detail::pow_pos(dt, p_star) / detail::pow_pos(geo.dist(i, j), kex) * w2);
                                    acc.count();
                                });
    EnergyValue out{res.sums[0], res.pair_count, {s_star, p_star}};
    out.params.threshold = delta;
    return out;
}

/// Convexified truncation Phi(t) = |t|^p for |t| <= 1, 1 + p(|t|-1) beyond,
/// integrated against the Gagliardo kernel.  Mollification contracts this
/// energy on periodic domains, which is what the density device needs.
inline double phi_truncated_energy(const Field& f, double s, double p, int threads = 0) {
    f.require_nonempty();
    detail::check_sp(s, p);
    detail::DomGeom geo(f.domain);
    detail::TargetDist td(f.space);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = f.domain.dim() + s * p;
    auto res = detail::pair_sum(f.size(), detail::resolve_threads(threads), 1,
                                [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
                                    double dt = td(f.values[i], f.values[j]);
                                    double num = dt <= 1.0 ? detail::pow_pos(dt, p) : 1.0 + p * (dt - 1.0);
                                    acc.add(0, num / detail::pow_pos(geo.dist(i, j), kex) * w2);
                                });
    return res.sums[0];
}

// ============================================================================
// Local energies
// ============================================================================

/// First-order energy: forward-difference gradient magnitude per cell raised
/// to r, times the cell weight.  Periodic wrap on torus axes; one-sided
/// differences at interval/cube boundaries keep linear fields exact.
inline EnergyValue dirichlet(const Field& f, double r) {
    f.require_nonempty();
    if (!(r >= 1.0)) throw Error(ErrorCode::ExponentOutOfRange, "r must be >= 1");
    const GridDomain& dom = f.domain;
    detail::TargetDist td(f.space);
    const double h = dom.spacing();
    const double w = dom.weight();
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        double g2 = 0.0;
        for (int a = 0; a < dom.dim(); ++a) {
            std::size_t j = dom.axis_step(i, a, +1);
            double d;
            if (j == GridDomain::npos) {
                std::size_t k = dom.axis_step(i, a, -1);
                d = td(f.values[i], f.values[k]);
            } else {
                d = td(f.values[j], f.values[i]);
            }
            double g = d / h;
            g2 += g * g;
        }
        double v = detail::pow_pos(std::sqrt(g2), r) * w;
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    EnergyValue out{sum + comp, static_cast<std::uint64_t>(dom.size()), {}};
    out.params.p = r;
    return out;
}

// ============================================================================
// Segment quadrature energies (1D interval only)
// ============================================================================

namespace detail {

inline void check_segment_domain(const Field& f) {
    if (f.domain.dim() != 1 || f.domain.kind() != DomainKind::Interval)
        throw Error(ErrorCode::NotOneDimensional, "segment energies need a 1D interval domain");
}

/// Midpoint nodes on [0,1] for the inner segment grid.
inline std::vector<double> inner_nodes(int K) {
    std::vector<double> t(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) t[static_cast<std::size_t>(k)] = (k + 0.5) / K;
    return t;
}

}  // namespace detail

/// Double-segment energy: for every pair (x, y) the inner (t, r) quadrature of
///   d(u((1-t)x + ty), u((1-r)x + ry))^p / |t-r|^{1+sigma p}
/// against the outer kernel 1 / |y-x|^{m+sp}.  Segment points are evaluated by
/// nearest-grid-sample lookup; the inner diagonal is excluded.  For mu > 0 the
/// numerator distance is replaced by the truncated gap (d - mu |w-v|^s)_+ with
/// |w-v| the physical separation of the two segment points.
inline EnergyValue segment_double_energy(const Field& f, double s, double p, double sigma, double mu, int K = 64,
                                         int threads = 0) {
    f.require_nonempty();
    detail::check_segment_domain(f);
    detail::check_sp(s, p);
    if (!(sigma > 0.0 && sigma < s)) throw Error(ErrorCode::BadSigma, "sigma must lie in (0, s)");
    if (!(mu >= 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "mu must be >= 0");
    if (K < 2) throw Error(ErrorCode::InvalidResolution, "inner grid needs K >= 2");

    const std::size_t n = f.size();
    const double h = f.domain.spacing();
    detail::TargetDist td(f.space);
    const auto t = detail::inner_nodes(K);

    // inner kernel weights 1/|t_k - t_l|^{1+sigma p} / K^2, k < l
    std::vector<double> wkl(static_cast<std::size_t>(K) * K, 0.0);
    for (int k = 0; k < K; ++k)
        for (int l = k + 1; l < K; ++l)
            wkl[static_cast<std::size_t>(k) * K + l] =
                1.0 / detail::pow_pos(t[static_cast<std::size_t>(l)] - t[static_cast<std::size_t>(k)], 1.0 + sigma * p) /
                (static_cast<double>(K) * K);

    detail::DomGeom geo(f.domain);
    const double w2 = f.domain.weight() * f.domain.weight();
    const double kex = 1.0 + s * p;

    auto res = detail::pair_sum(
        n, detail::resolve_threads(threads), 1, [&](std::size_t i, std::size_t j, detail::PairAccumulator& acc) {
            const double xi = geo.px[i], xj = geo.px[j];
            const double dij = std::abs(xj - xi);
            // nearest-sample values along the segment [x_i, x_j]
            std::vector<TargetPoint> vp(static_cast<std::size_t>(K));
            for (int k = 0; k < K; ++k) {
                double pos = (1.0 - t[static_cast<std::size_t>(k)]) * xi + t[static_cast<std::size_t>(k)] * xj;
                long idx = std::lround(pos / h - 0.5);
                if (idx < 0) idx = 0;
                if (idx >= static_cast<long>(n)) idx = static_cast<long>(n) - 1;
                vp[static_cast<std::size_t>(k)] = f.values[static_cast<std::size_t>(idx)];
            }
            double inner = 0.0;
            if (mu == 0.0) {
                for (int k = 0; k < K; ++k)
                    for (int l = k + 1; l < K; ++l) {
                        double d = td(vp[static_cast<std::size_t>(k)], vp[static_cast<std::size_t>(l)]);
                        if (d == 0.0) continue;
                        inner += detail::pow_pos(d, p) * wkl[static_cast<std::size_t>(k) * K + l];
                    }
            } else {
                for (int k = 0; k < K; ++k)
                    for (int l = k + 1; l < K; ++l) {
                        double d = td(vp[static_cast<std::size_t>(k)], vp[static_cast<std::size_t>(l)]);
                        double sep = (t[static_cast<std::size_t>(l)] - t[static_cast<std::size_t>(k)]) * dij;
                        double g = d - mu * detail::pow_pos(sep, s);
                        if (g <= 0.0) continue;
                        inner += detail::pow_pos(g, p) * wkl[static_cast<std::size_t>(k) * K + l];
                    }
            }
            acc.add(0, 2.0 * inner * w2 / detail::pow_pos(dij, kex));
            acc.count();
        });
    EnergyValue out{res.sums[0], res.pair_count, {s, p}};
    out.params.threshold = mu;
    out.params.gamma = sigma;
    return out;
}

/// Inner truncated-Morrey integral over the segment [x_i, x_j]:
///   iint_{[x,y]^2} ((d(u(w),u(v)) / |w-v|^s) - mu)_+^p  dw dv / |w-v|
/// by the same nearest-sample midpoint rule (diagonal excluded).
inline double segment_morrey_integral(const Field& f, std::size_t i, std::size_t j, double s, double p, double mu,
                                      int K = 64) {
    f.require_nonempty();
    detail::check_segment_domain(f);
    const std::size_t n = f.size();
    const double h = f.domain.spacing();
    detail::TargetDist td(f.space);
    const auto t = detail::inner_nodes(K);
    const double xi = f.domain.point(i)[0], xj = f.domain.point(j)[0];
    const double dij = std::abs(xj - xi);
    if (dij == 0.0) return 0.0;

    std::vector<TargetPoint> vp(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        double pos = (1.0 - t[static_cast<std::size_t>(k)]) * xi + t[static_cast<std::size_t>(k)] * xj;
        long idx = std::lround(pos / h - 0.5);
        if (idx < 0) idx = 0;
        if (idx >= static_cast<long>(n)) idx = static_cast<long>(n) - 1;
        vp[static_cast<std::size_t>(k)] = f.values[static_cast<std::size_t>(idx)];
    }
    // dw dv = (dij/K)^2; kernel 1/|w-v| with |w-v| = |t_k - t_l| dij
    double total = 0.0;
    for (int k = 0; k < K; ++k)
        for (int l = k + 1; l < K; ++l) {
            double sep = (t[static_cast<std::size_t>(l)] - t[static_cast<std::size_t>(k)]) * dij;
            double d = td(vp[static_cast<std::size_t>(k)], vp[static_cast<std::size_t>(l)]);
            double g = d / detail::pow_pos(sep, s) - mu;
            if (g <= 0.0) continue;
            total += 2.0 * detail::pow_pos(g, p) / sep;
        }
    return total * (dij / K) * (dij / K);
}

}  // namespace liftlab
