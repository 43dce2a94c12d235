#pragma once

// Generators shared by the unit and acceptance suites.

#include <lapwalk/graph.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace lapwalk::testing {

/// Random spanning tree plus extra edges with probability `density`.
/// Weights are uniform in [w_lo, w_hi]; pass w_lo == w_hi == 1 for unit weights.
inline WeightedGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, double density,
                                            double w_lo = 0.1, double w_hi = 10.0) {
    std::uniform_real_distribution<double> weight(w_lo, w_hi);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<Edge> edges;
    auto add = [&](std::size_t u, std::size_t v) {
        if (u > v) std::swap(u, v);
        if (seen.insert({u, v}).second) edges.push_back({u, v, w_lo == w_hi ? w_lo : weight(rng)});
    };
    for (std::size_t t = 1; t < n; ++t) {
        std::uniform_int_distribution<std::size_t> pick(0, t - 1);
        add(order[t], order[pick(rng)]);
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng) < density) add(u, v);
    return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n_lo, std::size_t n_hi,
                                  bool unit_weights = false) {
    std::uniform_int_distribution<std::size_t> size(n_lo, n_hi);
    std::uniform_real_distribution<double> density(0.0, 0.5);
    const std::size_t n = size(rng);
    return unit_weights ? random_connected_graph(rng, n, density(rng), 1.0, 1.0)
                        : random_connected_graph(rng, n, density(rng));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double scale = 5.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = d(rng);
    return v;
}

inline WeightedGraph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
    return WeightedGraph(n, std::move(e));
}

inline WeightedGraph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
    return WeightedGraph(n, std::move(e));
}

/// K_{1,leaves} with the center at index `center`.
inline WeightedGraph star_graph(std::size_t leaves, std::size_t center = 0,
                                const std::vector<double>& weights = {}) {
    std::vector<Edge> e;
    std::size_t t = 0;
    for (std::size_t v = 0; v <= leaves; ++v) {
        if (v == center) continue;
        e.push_back({center, v, weights.empty() ? 1.0 : weights[t]});
        ++t;
    }
    return WeightedGraph(leaves + 1, std::move(e));
}

/// Every labelled connected graph on n vertices (unit weights). n <= 6.
inline std::vector<WeightedGraph> all_connected_graphs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::vector<WeightedGraph> out;
    for (unsigned long mask = 0; mask < (1UL << pairs.size()); ++mask) {
        std::vector<Edge> e;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1UL) e.push_back({pairs[b].first, pairs[b].second, 1.0});
        if (connected_components(n, e).size() == 1) out.emplace_back(n, std::move(e));
    }
    return out;
}

}  // namespace lapwalk::testing
