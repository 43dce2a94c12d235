#pragma once

// Monte Carlo estimates of hitting and return times, used as an oracle for
// the exact values in walk_analytics.
//
// Reproducibility: trial t draws from its own SplitMix64 stream whose state is
// initialized to mix64(seed ^ mix64(t + 1)). A uniform neighbor among `deg`
// choices is floor(r * deg / 2^64) for the next 64-bit output r (the high
// word of the 128-bit product). The weighted walk maps the top 53 bits of r
// to u in [0, 1) and picks the first neighbor whose cumulative weight exceeds
// u * strength. Step counts are summed as exact integers, so the statistics do
// not depend on how trials are scheduled across threads.

#include <lapwalk/graph.hpp>
#include <lapwalk/walk_analytics.hpp>

#include <cstddef>
#include <cstdint>

namespace lapwalk {

__extension__ typedef unsigned __int128 uint128;

struct WalkOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 1000000000;  ///< per trial; longer trials are discarded
    unsigned threads = 1;                  ///< 0 = hardware concurrency
    WalkKind kind = WalkKind::simple;
};

struct WalkStats {
    double estimate = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(trials); 0 for one trial
    std::uint64_t trials = 0;          ///< completed trials
    std::uint64_t seed = 0;
    std::uint64_t max_steps_hit = 0;   ///< trials discarded at the step cap

    friend bool operator==(const WalkStats&, const WalkStats&) = default;
};

/// Walks from `from` until the first arrival at `target`.
/// Throws std::invalid_argument if from == target or trials == 0, and
/// SolveError if every trial hit the step cap.
WalkStats simulate_hitting(const WeightedGraph& g, std::size_t from, std::size_t target,
                           const WalkOptions& options = {});

/// Walks from `start`, takes at least one step, stops on the first return.
WalkStats simulate_return(const WeightedGraph& g, std::size_t start,
                          const WalkOptions& options = {});

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Per-trial random stream.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix64(seed ^ mix64(trial + 1))) {}
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }
    /// floor(next() * bound / 2^64)
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<uint128>(next()) * bound) >> 64);
    }
    /// Top 53 bits as a double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace lapwalk
