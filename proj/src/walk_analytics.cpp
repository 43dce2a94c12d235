#include <lapwalk/walk_analytics.hpp>
#include <lapwalk/parallel.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lapwalk {

namespace {

using Eigen::Index;

void require_vertex(std::size_t v, std::size_t n) {
    if (v >= n) {
        throw IndexError("vertex " + std::to_string(v + 1) + " outside [1, " + std::to_string(n) +
                         "]");
    }
}

}  // namespace

ConductanceMatrix walk_laplacian(const WeightedGraph& g, WalkKind kind) {
    return kind == WalkKind::simple ? laplacian_from_graph(g.unweighted()) : laplacian_from_graph(g);
}

Vector walk_degrees(const WeightedGraph& g, WalkKind kind) {
    Vector d(static_cast<Index>(g.vertex_count()));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        d(static_cast<Index>(v)) =
            kind == WalkKind::simple ? static_cast<double>(g.degree(v)) : g.strength(v);
    }
    return d;
}

Vector hitting_times_to(const WeightedGraph& g, std::size_t target, WalkKind kind) {
    require_vertex(target, g.vertex_count());
    return pinned_solve(walk_laplacian(g, kind), LoadVector(walk_degrees(g, kind)), target).values;
}

HittingTable hitting_matrix(const WeightedGraph& g, WalkKind kind, unsigned threads) {
    const std::size_t n = g.vertex_count();
    const ConductanceMatrix a = walk_laplacian(g, kind);
    const LoadVector f(walk_degrees(g, kind));
    HittingTable table{n, Matrix(static_cast<Index>(n), static_cast<Index>(n))};
    parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            table.h.col(static_cast<Index>(i)) = pinned_solve(a, f, i).values;
        }
    });
    return table;
}

ReturnTimes return_times(const WeightedGraph& g, WalkKind kind) {
    const std::size_t n = g.vertex_count();
    const HittingTable h = hitting_matrix(g, kind);
    ReturnTimes out;
    out.n = n;
    out.degree = walk_degrees(g, kind);
    out.total_degree = out.degree.sum();
    out.r.resize(static_cast<Index>(n));
    out.r_via_hitting.resize(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double deg = out.degree(static_cast<Index>(i));
        double sum = 0.0;
        for (const auto& nb : g.neighbors(i)) {
            const double w = kind == WalkKind::simple ? 1.0 : nb.weight;
            sum += w * h(nb.vertex, i);
        }
        const double closed = out.total_degree / deg;
        const double via = 1.0 + sum / deg;
        out.r(static_cast<Index>(i)) = closed;
        out.r_via_hitting(static_cast<Index>(i)) = via;
        if (std::abs(closed - via) > 1e-9 * closed) {
            std::ostringstream os;
            os.precision(17);
            os << "return time routes disagree at vertex " << i + 1 << ": " << closed << " vs "
               << via;
            throw SolveError(os.str());
        }
    }
    return out;
}

double neighbor_sum_residual(const WeightedGraph& g, std::size_t i, WalkKind kind) {
    require_vertex(i, g.vertex_count());
    const Vector h = hitting_times_to(g, i, kind);
    const Vector deg = walk_degrees(g, kind);
    double sum = 0.0;
    for (const auto& nb : g.neighbors(i)) {
        const double w = kind == WalkKind::simple ? 1.0 : nb.weight;
        sum += w * h(static_cast<Index>(nb.vertex));
    }
    return sum - (deg.sum() - deg(static_cast<Index>(i)));
}

double ctw_residual(const HittingTable& h, std::size_t i, std::size_t j, std::size_t k) {
    for (std::size_t v : {i, j, k}) require_vertex(v, h.n);
    if (i == j || j == k || k == i) throw std::invalid_argument("CTW residual needs distinct vertices");
    return (h(i, j) + h(j, k) + h(k, i)) - (h(j, i) + h(k, j) + h(i, k));
}

double hitting_cycle_residual(const HittingTable& h, std::span<const std::size_t> sequence) {
    if (sequence.size() < 3) {
        throw std::invalid_argument("cycle sequence needs at least 3 entries");
    }
    for (std::size_t v : sequence) require_vertex(v, h.n);
    double forward = 0.0;
    double reverse = 0.0;
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        const std::size_t p = sequence[t];
        const std::size_t q = sequence[(t + 1) % sequence.size()];
        forward += h(p, q);
        reverse += h(q, p);
    }
    return forward - reverse;
}

}  // namespace lapwalk
