#pragma once

// Exact hitting and return times of random walks on a graph.
//
// For the simple walk (uniform neighbor choice) the hitting times to i,
// x = (H(1,i), ..., H(n,i)), solve L x = d_i where L = diag(deg) - adjacency
// and d is the degree vector; since H(i,i) = 0 this is exactly the pinned
// solve with pin i. The weighted walk (step probability proportional to edge
// weight) uses the weighted Laplacian and the vertex strengths instead.

#include <lapwalk/graph.hpp>
#include <lapwalk/pinned_solve.hpp>

#include <cstddef>
#include <span>

namespace lapwalk {

enum class WalkKind {
    simple,    ///< uniform over neighbors; edge weights ignored
    weighted,  ///< proportional to edge weight
};

/// Laplacian driving the walk of the given kind.
ConductanceMatrix walk_laplacian(const WeightedGraph& g, WalkKind kind = WalkKind::simple);
/// Degrees (simple) or strengths (weighted).
Vector walk_degrees(const WeightedGraph& g, WalkKind kind = WalkKind::simple);

/// H(j, target) for every j, with 0 at the target.
Vector hitting_times_to(const WeightedGraph& g, std::size_t target,
                        WalkKind kind = WalkKind::simple);

struct HittingTable {
    std::size_t n = 0;
    Matrix h;  ///< h(j, i) = H(j, i)

    double operator()(std::size_t from, std::size_t to) const {
        return h(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
    }
    double max_entry() const { return h.maxCoeff(); }
};

/// One pinned solve per target column; columns are spread over `threads`
/// threads (0 = hardware concurrency) and do not depend on the thread count.
HittingTable hitting_matrix(const WeightedGraph& g, WalkKind kind = WalkKind::simple,
                            unsigned threads = 1);

struct ReturnTimes {
    std::size_t n = 0;
    double total_degree = 0.0;  ///< 2m (simple) or twice the total weight
    Vector degree;
    Vector r;              ///< closed form 2m / deg(i)
    Vector r_via_hitting;  ///< 1 + (1/deg(i)) sum_{k ~ i} H(k, i)
};

/// Computes both routes and throws SolveError if they differ by more than
/// 1e-9 relative at any vertex.
ReturnTimes return_times(const WeightedGraph& g, WalkKind kind = WalkKind::simple);

/// sum_{k ~ i} H(k, i) - (2m - deg(i)); weighted: sum_k w_ik H(k, i) - (2W - s_i).
double neighbor_sum_residual(const WeightedGraph& g, std::size_t i,
                             WalkKind kind = WalkKind::simple);

/// (H(i,j) + H(j,k) + H(k,i)) - (H(j,i) + H(k,j) + H(i,k)).
double ctw_residual(const HittingTable& h, std::size_t i, std::size_t j, std::size_t k);

/// Sum of H along the closed sequence minus the sum along its reversal.
double hitting_cycle_residual(const HittingTable& h, std::span<const std::size_t> sequence);

}  // namespace lapwalk
