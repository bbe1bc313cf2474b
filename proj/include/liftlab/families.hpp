#pragma once

#include <cmath>
#include <string>

#include "liftlab/errors.hpp"
#include "liftlab/field.hpp"
#include "liftlab/rng.hpp"

namespace liftlab {

// Deterministic seeded field families.  Every generator consumes its RNG in a
// fixed order so a (family, seed) pair names the same field everywhere.

/// Smooth trigonometric mix with decaying spectrum: harmonics 1..kmax with
/// amplitude (0.5 + 0.5 u)/k^decay and random phase.  On 2D domains each
/// harmonic gets a random integer wave vector of max norm k.
inline Field trig_mix(const GridDomain& dom, std::uint64_t seed, int kmax = 3, double decay = 3.0,
                      double amplitude = 1.0) {
    SplitMix64 rng(seed);
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double side = dom.side();
    for (int k = 1; k <= kmax; ++k) {
        double amp = amplitude * (0.5 + 0.5 * rng.uniform()) / std::pow(static_cast<double>(k), decay);
        double phase = two_pi * rng.uniform();
        int kx = k, ky = 0;
        if (dom.dim() == 2) {
            kx = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
            ky = k - kx;
        }
        for (std::size_t i = 0; i < dom.size(); ++i) {
            auto p = dom.point(i);
            out.values[i][0] += amp * std::cos(two_pi * (kx * p[0] + ky * p[1]) / side + phase);
        }
    }
    return out;
}

/// Linear ramp plus a few random jumps; the workhorse for gap energies.
inline Field ramp_steps(const GridDomain& dom, std::uint64_t seed, double slope = 3.0, int steps = 4,
                        double step_height = 2.0) {
    SplitMix64 rng(seed);
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double side = dom.side();
    double a = slope * rng.uniform(0.5, 1.5);
    std::vector<std::pair<double, double>> jumps;
    for (int k = 0; k < steps; ++k) jumps.emplace_back(rng.uniform(0.1, 0.9) * side, rng.uniform(0.25, 1.0) * step_height);
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        double v = a * p[0] / side;
        for (auto& [pos, hgt] : jumps)
            if (p[0] > pos) v += hgt;
        out.values[i][0] = v;
    }
    return out;
}

/// Two-sided step: 0 on the left half, `height` on the right.
inline Field step_field(const GridDomain& dom, double height = 2.0) {
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    for (std::size_t i = 0; i < dom.size(); ++i)
        out.values[i][0] = dom.point(i)[0] > dom.side() / 2.0 ? height : 0.0;
    return out;
}

/// Compactly supported smooth bump of random center, width and height.
inline Field scaled_bump(const GridDomain& dom, std::uint64_t seed, double max_height = 4.0) {
    SplitMix64 rng(seed);
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double side = dom.side();
    double cx = rng.uniform(0.25, 0.75) * side;
    double cy = dom.dim() == 2 ? rng.uniform(0.25, 0.75) * side : 0.0;
    double rad = rng.uniform(0.1, 0.3) * side;
    double hgt = rng.uniform(0.5, 1.0) * max_height;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        double dx = p[0] - cx, dy = dom.dim() == 2 ? p[1] - cy : 0.0;
        double z2 = (dx * dx + dy * dy) / (rad * rad);
        double v = z2 < 1.0 ? 1.0 - z2 : 0.0;
        out.values[i][0] = hgt * v * v * v;
    }
    return out;
}

/// Real phase profile phi with an integer number of turns around a periodic
/// domain plus a smooth seeded wobble; project(phi) winds through the circle.
inline Field winding_phase(const GridDomain& dom, std::uint64_t seed, int turns, double wobble = 1.0) {
    SplitMix64 rng(seed);
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double side = dom.side();
    double amp = wobble * rng.uniform(0.25, 1.0);
    double phase = two_pi * rng.uniform();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        out.values[i][0] = two_pi * turns * p[0] / side + amp * std::sin(two_pi * p[0] / side + phase);
    }
    return out;
}

/// Power singularity |x - c|^{-alpha} centered at the domain midpoint, which
/// is a cell corner of every even grid, so no sample is singular.
inline Field power_singularity(const GridDomain& dom, double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "alpha must be positive");
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double c = dom.side() / 2.0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        double dx = p[0] - c, dy = dom.dim() == 2 ? p[1] - c : 0.0;
        out.values[i][0] = std::pow(std::sqrt(dx * dx + dy * dy), -alpha);
    }
    return out;
}

/// Smooth ramp plus a small high-frequency ripple: the two-scale field whose
/// optimal splitting beats both trivial ones.
inline Field two_scale(const GridDomain& dom, std::uint64_t seed, double ripple_amp = 0.02, int ripple_freq = 24) {
    SplitMix64 rng(seed);
    Field out{dom, TargetGeometry::real_line(), std::vector<TargetPoint>(dom.size(), TargetPoint{0.0, 0.0})};
    const double side = dom.side();
    double a = rng.uniform(2.0, 4.0);
    double phase = two_pi * rng.uniform();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        auto p = dom.point(i);
        double x = p[0] / side;
        out.values[i][0] = a * x * x * (3.0 - 2.0 * x) + ripple_amp * std::sin(two_pi * ripple_freq * x + phase);
    }
    return out;
}

/// Dispatch by family name used in configs: trig | ramp | step | bump |
/// winding | power | two_scale.
inline Field make_family_field(const GridDomain& dom, const std::string& family, std::uint64_t seed,
                               double amplitude = 1.0, int kmax = 3, double decay = 3.0, double alpha = 0.24,
                               int turns = 1) {
    if (family == "trig") return trig_mix(dom, seed, kmax, decay, amplitude);
    if (family == "ramp") return ramp_steps(dom, seed, 3.0 * amplitude);
    if (family == "step") return step_field(dom, 2.0 * amplitude);
    if (family == "bump") return scaled_bump(dom, seed, 4.0 * amplitude);
    if (family == "winding") return winding_phase(dom, seed, turns, amplitude);
    if (family == "power") return power_singularity(dom, alpha);
    if (family == "two_scale") return two_scale(dom, seed);
    throw Error(ErrorCode::SchemaError, "unknown field family '" + family + "'");
}

}  // namespace liftlab
