#include <lapwalk/parallel.hpp>
#include <lapwalk/walk_sim.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace lapwalk {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Flat adjacency with per-row cumulative weights.
struct Csr {
    std::vector<std::size_t> offset;
    std::vector<std::size_t> target;
    std::vector<double> cumulative;

    explicit Csr(const WeightedGraph& g) {
        offset.reserve(g.vertex_count() + 1);
        offset.push_back(0);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            double running = 0.0;
            for (const auto& nb : g.neighbors(v)) {
                running += nb.weight;
                target.push_back(nb.vertex);
                cumulative.push_back(running);
            }
            offset.push_back(target.size());
        }
    }

    std::size_t step(std::size_t v, TrialRng& rng, WalkKind kind) const {
        const std::size_t begin = offset[v];
        const std::size_t deg = offset[v + 1] - begin;
        if (kind == WalkKind::simple) return target[begin + rng.below(deg)];
        const auto first = cumulative.begin() + static_cast<std::ptrdiff_t>(begin);
        const auto last = first + static_cast<std::ptrdiff_t>(deg);
        const double x = rng.unit() * *(last - 1);
        auto it = std::upper_bound(first, last, x);
        if (it == last) --it;
        return target[static_cast<std::size_t>(it - cumulative.begin())];
    }
};

struct Tally {
    std::uint64_t completed = 0;
    std::uint64_t capped = 0;
    std::uint64_t sum = 0;
    uint128 sum_squares = 0;
};

// Steps until `goal` is reached from `start`; at least one step is taken when
// start == goal. Returns 0 if the cap is exceeded.
std::uint64_t walk(const Csr& csr, std::size_t start, std::size_t goal, TrialRng& rng,
                   std::uint64_t max_steps, WalkKind kind) {
    std::size_t current = start;
    std::uint64_t steps = 0;
    do {
        if (steps == max_steps) return 0;
        current = csr.step(current, rng, kind);
        ++steps;
    } while (current != goal);
    return steps;
}

WalkStats run_trials(const WeightedGraph& g, std::size_t start, std::size_t goal,
                     const WalkOptions& options) {
    if (options.trials == 0) throw std::invalid_argument("trials must be at least 1");
    const Csr csr(g);
    const std::size_t workers =
        std::min<std::size_t>(resolve_threads(options.threads), options.trials);
    std::vector<Tally> tallies(std::max<std::size_t>(workers, 1));
    // One chunk per worker; chunk boundaries do not affect the sums.
    parallel_chunks(tallies.size(), options.threads, [&](std::size_t wb, std::size_t we) {
        for (std::size_t w = wb; w < we; ++w) {
            const std::uint64_t begin = options.trials * w / tallies.size();
            const std::uint64_t end = options.trials * (w + 1) / tallies.size();
            Tally& t = tallies[w];
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                TrialRng rng(options.seed, trial);
                const std::uint64_t steps = walk(csr, start, goal, rng, options.max_steps, options.kind);
                if (steps == 0) {
                    ++t.capped;
                    continue;
                }
                ++t.completed;
                t.sum += steps;
                t.sum_squares += static_cast<uint128>(steps) * steps;
            }
        }
    });

    Tally total;
    for (const auto& t : tallies) {
        total.completed += t.completed;
        total.capped += t.capped;
        total.sum += t.sum;
        total.sum_squares += t.sum_squares;
    }
    if (total.completed == 0) {
        throw SolveError("all " + std::to_string(options.trials) +
                         " trials exceeded the step cap of " + std::to_string(options.max_steps));
    }

    WalkStats stats;
    stats.trials = total.completed;
    stats.seed = options.seed;
    stats.max_steps_hit = total.capped;
    const auto n = static_cast<long double>(total.completed);
    stats.estimate = static_cast<double>(static_cast<long double>(total.sum) / n);
    if (total.completed > 1) {
        // N * sum(x^2) - (sum x)^2, exact.
        const uint128 s = total.sum;
        const uint128 spread =
            static_cast<uint128>(total.completed) * total.sum_squares - s * s;
        const long double variance = static_cast<long double>(spread) / (n * (n - 1.0L));
        stats.std_error = static_cast<double>(std::sqrt(variance / n));
    }
    return stats;
}

void require_vertex(std::size_t v, std::size_t n) {
    if (v >= n) {
        throw IndexError("vertex " + std::to_string(v + 1) + " outside [1, " + std::to_string(n) +
                         "]");
    }
}

}  // namespace

WalkStats simulate_hitting(const WeightedGraph& g, std::size_t from, std::size_t target,
                           const WalkOptions& options) {
    require_vertex(from, g.vertex_count());
    require_vertex(target, g.vertex_count());
    if (from == target) throw std::invalid_argument("hitting simulation needs distinct endpoints");
    return run_trials(g, from, target, options);
}

WalkStats simulate_return(const WeightedGraph& g, std::size_t start, const WalkOptions& options) {
    require_vertex(start, g.vertex_count());
    return run_trials(g, start, start, options);
}

}  // namespace lapwalk
