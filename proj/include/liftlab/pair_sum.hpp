#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace liftlab::detail {

/// Neumaier-compensated accumulator channels for one tile of pairs.
class PairAccumulator {
  public:
    explicit PairAccumulator(std::size_t channels) : sum_(channels, 0.0), comp_(channels, 0.0) {}

    void add(std::size_t channel, double v) {
        double& s = sum_[channel];
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp_[channel] += (s - t) + v;
        else
            comp_[channel] += (v - t) + s;
        s = t;
    }

    /// Record `c` contributing ordered pairs (an unordered pair counts 2).
    void count(std::uint64_t c = 2) { count_ += c; }

    double total(std::size_t channel) const { return sum_[channel] + comp_[channel]; }
    std::uint64_t pairs() const { return count_; }
    std::size_t channels() const { return sum_.size(); }

  private:
    std::vector<double> sum_;
    std::vector<double> comp_;
    std::uint64_t count_ = 0;
};

struct PairSumResult {
    std::vector<double> sums;
    std::uint64_t pair_count = 0;
};

/// Deterministic blocked sum over unordered index pairs i < j of [0, n).
///
/// The pair set is cut into fixed 128x128 tiles processed by any number of
/// workers; per-tile partials are compensated and reduced in tile order, so
/// the result is bit-identical for every thread count.  Channel totals are
/// doubled at reduction: callers add the one-sided kernel value of each
/// symmetric pair exactly once.
template <class Fn>
PairSumResult pair_sum(std::size_t n, int threads, std::size_t channels, const Fn& fn) {
    constexpr std::size_t kTile = 128;
    const std::size_t tiles = (n + kTile - 1) / kTile;
    const std::size_t tasks = tiles * (tiles + 1) / 2;

    std::vector<double> partials(tasks * channels, 0.0);
    std::vector<std::uint64_t> counts(tasks, 0);

    auto run_task = [&](std::size_t task) {
        // map linear task id to the upper-triangle tile (ti <= tj)
        std::size_t ti = 0, rem = task;
        std::size_t row = tiles;
        while (rem >= row) {
            rem -= row;
            --row;
            ++ti;
        }
        std::size_t tj = ti + rem;

        const std::size_t i0 = ti * kTile, i1 = std::min(n, i0 + kTile);
        const std::size_t j0 = tj * kTile, j1 = std::min(n, j0 + kTile);
        PairAccumulator acc(channels);
        for (std::size_t i = i0; i < i1; ++i) {
            std::size_t js = (ti == tj) ? i + 1 : j0;
            for (std::size_t j = js; j < j1; ++j) fn(i, j, acc);
        }
        for (std::size_t c = 0; c < channels; ++c) partials[task * channels + c] = acc.total(c);
        counts[task] = acc.pairs();
    };

    int workers = threads < 1 ? 1 : threads;
    if (workers == 1 || tasks <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= tasks) break;
                    run_task(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // fixed-order reduction
    PairSumResult out;
    out.sums.assign(channels, 0.0);
    std::vector<double> comp(channels, 0.0);
    for (std::size_t t = 0; t < tasks; ++t) {
        for (std::size_t c = 0; c < channels; ++c) {
            double v = partials[t * channels + c];
            double& s = out.sums[c];
            double u = s + v;
            if (std::abs(s) >= std::abs(v))
                comp[c] += (s - u) + v;
            else
                comp[c] += (v - u) + s;
            s = u;
        }
        out.pair_count += counts[t];
    }
    for (std::size_t c = 0; c < channels; ++c) out.sums[c] = 2.0 * (out.sums[c] + comp[c]);
    return out;
}

}  // namespace liftlab::detail
