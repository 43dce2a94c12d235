#include <lapwalk/walk_analytics.hpp>

#include "random_graphs.hpp"

#include <doctest.h>

#include <random>

using namespace lapwalk;
using lapwalk::testing::all_connected_graphs;
using lapwalk::testing::complete_graph;
using lapwalk::testing::path_graph;
using lapwalk::testing::random_graph;
using lapwalk::testing::star_graph;

namespace {

// Fixed-point iteration of H(j) = 1 + mean_{k ~ j} H(k), H(target) = 0.
// Independent of any linear solver.
Vector hitting_by_iteration(const WeightedGraph& g, std::size_t target) {
    const std::size_t n = g.vertex_count();
    Vector h = Vector::Zero(static_cast<Eigen::Index>(n));
    for (int sweep = 0; sweep < 1000000; ++sweep) {
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == target) continue;
            double sum = 0.0;
            for (const auto& nb : g.neighbors(j)) sum += h(static_cast<Eigen::Index>(nb.vertex));
            const double next = 1.0 + sum / static_cast<double>(g.degree(j));
            change = std::max(change, std::abs(next - h(static_cast<Eigen::Index>(j))));
            h(static_cast<Eigen::Index>(j)) = next;
        }
        if (change <= 1e-13 * (1.0 + h.maxCoeff())) break;
    }
    return h;
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("hitting times: P3, K3 and the star") {
    CHECK((hitting_times_to(path_graph(3), 2) - vec({4, 3, 0})).cwiseAbs().maxCoeff() <= 1e-12);
    for (std::size_t t = 0; t < 3; ++t) {
        const Vector h = hitting_times_to(complete_graph(3), t);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(h(static_cast<Eigen::Index>(j)) == doctest::Approx(j == t ? 0.0 : 2.0).epsilon(1e-12));
    }
    const WeightedGraph star = star_graph(3, 0);
    const HittingTable h = hitting_matrix(star);
    CHECK(h(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h(0, 1) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(h(2, 1) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("hitting matrix of P3") {
    const HittingTable h = hitting_matrix(path_graph(3));
    const double expected[3][3] = {{0, 1, 4}, {3, 0, 3}, {4, 1, 0}};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) CHECK(h(j, i) == doctest::Approx(expected[j][i]).epsilon(1e-12));
    for (std::size_t i = 0; i < 3; ++i) CHECK(h(i, i) == 0.0);
}

TEST_CASE("hitting matrix of K_n has n - 1 off the diagonal") {
    for (std::size_t n : {3u, 4u, 5u}) {
        const HittingTable h = hitting_matrix(complete_graph(n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(h(j, i) - (i == j ? 0.0 : static_cast<double>(n - 1))) <= 1e-9);
    }
}

TEST_CASE("simple walk ignores edge weights") {
    const WeightedGraph g(3, {{0, 1, 7.0}, {1, 2, 0.5}});
    CHECK(hitting_times_to(g, 2) == hitting_times_to(path_graph(3), 2));
}

TEST_CASE("property: hitting times match fixed-point iteration and satisfy the recurrence") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const WeightedGraph g = random_graph(rng, 3, 12, true);
        const std::size_t n = g.vertex_count();
        const HittingTable h = hitting_matrix(g);
        for (std::size_t i = 0; i < n; ++i) {
            const Vector oracle = hitting_by_iteration(g, i);
            CHECK((h.h.col(static_cast<Eigen::Index>(i)) - oracle).cwiseAbs().maxCoeff() <= 1e-8 * oracle.maxCoeff());
            CHECK(h(i, i) == 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                CHECK(h(j, i) >= 1.0);
                double sum = 0.0;
                for (const auto& nb : g.neighbors(j)) sum += h(nb.vertex, i);
                const double rhs = 1.0 + sum / static_cast<double>(g.degree(j));
                CHECK(std::abs(h(j, i) - rhs) <= 1e-9 * h(j, i));
            }
        }
    }
}

TEST_CASE("hitting matrix is independent of thread count") {
    std::mt19937_64 rng(43);
    const WeightedGraph g = random_graph(rng, 30, 40);
    CHECK(hitting_matrix(g, WalkKind::simple, 1).h == hitting_matrix(g, WalkKind::simple, 4).h);
}

TEST_CASE("return times") {
    auto r = return_times(path_graph(3));
    CHECK((r.r - vec({4, 2, 4})).cwiseAbs().maxCoeff() <= 1e-12);
    r = return_times(complete_graph(3));
    CHECK((r.r - vec({3, 3, 3})).cwiseAbs().maxCoeff() <= 1e-12);
    r = return_times(star_graph(3, 0));
    CHECK((r.r - vec({2, 6, 6, 6})).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((r.r - r.r_via_hitting).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(r.total_degree == 6.0);
}

TEST_CASE("property: return times, stationary mean and the neighbor sum") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const WeightedGraph g = random_graph(rng, 2, 30);
        const ReturnTimes r = return_times(g);
        const double two_m = 2.0 * static_cast<double>(g.edge_count());
        CHECK(r.total_degree == two_m);
        double weighted_mean = 0.0;
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            CHECK(r.r(ii) == two_m / static_cast<double>(g.degree(i)));
            CHECK(std::abs(r.r(ii) - r.r_via_hitting(ii)) <= 1e-9 * r.r(ii));
            weighted_mean += r.degree(ii) / two_m * r.r(ii);
            CHECK(std::abs(neighbor_sum_residual(g, i)) <= 1e-9 * two_m);
        }
        CHECK(weighted_mean == doctest::Approx(static_cast<double>(g.vertex_count())).epsilon(1e-12));
    }
}

TEST_CASE("neighbor sum on the star and P3") {
    CHECK(std::abs(neighbor_sum_residual(star_graph(3, 0), 0)) <= 1e-12);
    CHECK(std::abs(neighbor_sum_residual(path_graph(3), 1)) <= 1e-12);
    CHECK_THROWS_AS(neighbor_sum_residual(path_graph(3), 3), IndexError);
}

TEST_CASE("CTW residual") {
    const HittingTable k3 = hitting_matrix(complete_graph(3));
    CHECK(std::abs(ctw_residual(k3, 0, 1, 2)) <= 1e-12);
    const HittingTable p3 = hitting_matrix(path_graph(3));
    // (1 + 3 + 4) - (3 + 1 + 4)
    CHECK(std::abs(ctw_residual(p3, 0, 1, 2)) <= 1e-12);
    CHECK_THROWS_AS(ctw_residual(p3, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ctw_residual(p3, 0, 1, 3), IndexError);
}

TEST_CASE("property: CTW on every connected graph with up to 5 vertices") {
    for (std::size_t n = 3; n <= 5; ++n) {
        for (const auto& g : all_connected_graphs(n)) {
            const HittingTable h = hitting_matrix(g);
            const double tol = 1e-9 * h.max_entry();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        if (i != j && j != k && i != k) REQUIRE(std::abs(ctw_residual(h, i, j, k)) <= tol);
        }
    }
}

TEST_CASE("CTW matches the load-vector residual with the degree vector") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const WeightedGraph g = random_graph(rng, 3, 15, true);
        const HittingTable h = hitting_matrix(g);
        const auto a = walk_laplacian(g);
        const LoadVector f(walk_degrees(g));
        const std::size_t n = g.vertex_count();
        std::uniform_int_distribution<std::size_t> v(0, n - 1);
        std::size_t i = v(rng), j = v(rng), k = v(rng);
        while (j == i) j = v(rng);
        while (k == i || k == j) k = v(rng);
        // x_pq = H(q, p): the load residual is the CTW residual with the cycle reversed.
        const double ctw = ctw_residual(h, i, j, k);
        const double load = three_cycle_residual(a, f, i, j, k);
        CHECK(std::abs(ctw - load) <= 1e-9 * h.max_entry());
        CHECK(std::abs(ctw + load) <= 1e-9 * h.max_entry());
    }
}

TEST_CASE("property: k-cycle residual on hitting tables") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const WeightedGraph g = random_graph(rng, 3, 20, true);
        const HittingTable h = hitting_matrix(g);
        std::uniform_int_distribution<std::size_t> v(0, g.vertex_count() - 1);
        std::vector<std::size_t> seq(std::uniform_int_distribution<std::size_t>(3, 8)(rng));
        for (auto& s : seq) s = v(rng);
        CHECK(std::abs(hitting_cycle_residual(h, seq)) <= 1e-9 * h.max_entry());
    }
}

TEST_CASE("weighted walk: recurrence with transition probabilities w/strength") {
    std::mt19937_64 rng(61);
    const WeightedGraph g = random_graph(rng, 6, 10);
    const HittingTable h = hitting_matrix(g, WalkKind::weighted);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
            if (i == j) continue;
            double sum = 0.0;
            for (const auto& nb : g.neighbors(j)) sum += nb.weight * h(nb.vertex, i);
            CHECK(std::abs(h(j, i) - (1.0 + sum / g.strength(j))) <= 1e-9 * h(j, i));
        }
        CHECK(std::abs(neighbor_sum_residual(g, i, WalkKind::weighted)) <= 1e-9 * h.max_entry());
    }
    const auto r = return_times(g, WalkKind::weighted);
    CHECK((r.r - r.r_via_hitting).cwiseAbs().maxCoeff() <= 1e-9 * r.r.maxCoeff());
}
