#include <lapwalk/walk_sim.hpp>

#include "random_graphs.hpp"

#include <doctest.h>

#include <random>

using namespace lapwalk;
using lapwalk::testing::path_graph;
using lapwalk::testing::random_graph;
using lapwalk::testing::star_graph;

TEST_CASE("K2 walks are forced") {
    const WeightedGraph k2(2, {{0, 1, 1.0}});
    WalkOptions o;
    o.trials = 1000;
    const auto hit = simulate_hitting(k2, 0, 1, o);
    CHECK(hit.estimate == 1.0);
    CHECK(hit.std_error == 0.0);
    CHECK(hit.trials == 1000);
    const auto ret = simulate_return(k2, 1, o);
    CHECK(ret.estimate == 2.0);
    CHECK(ret.std_error == 0.0);
}

TEST_CASE("P3 hitting and return estimates") {
    WalkOptions o;
    o.trials = 100000;
    o.seed = 12345;
    const auto hit = simulate_hitting(path_graph(3), 0, 2, o);
    CHECK(std::abs(hit.estimate - 4.0) <= 3.0 * hit.std_error);
    CHECK(hit.estimate >= 1.0);
    const auto ret = simulate_return(path_graph(3), 1, o);
    CHECK(std::abs(ret.estimate - 2.0) <= 3.0 * ret.std_error);
}

TEST_CASE("star K_{1,3} return to the center") {
    WalkOptions o;
    o.trials = 100000;
    o.seed = 99;
    const auto ret = simulate_return(star_graph(3, 0), 0, o);
    // Every excursion from the center is exactly two steps.
    CHECK(ret.estimate == 2.0);
    CHECK(ret.std_error == 0.0);
    const auto leaf = simulate_return(star_graph(3, 0), 2, o);
    CHECK(std::abs(leaf.estimate - 6.0) <= 3.0 * leaf.std_error);
}

TEST_CASE("fixed seed is bitwise reproducible, regardless of threads") {
    std::mt19937_64 rng(5);
    const WeightedGraph g = random_graph(rng, 8, 12);
    WalkOptions o;
    o.trials = 20000;
    o.seed = 0xDEADBEEF;
    const auto a = simulate_hitting(g, 0, 3, o);
    const auto b = simulate_hitting(g, 0, 3, o);
    CHECK(a == b);
    o.threads = 4;
    CHECK(simulate_hitting(g, 0, 3, o) == a);
    o.threads = 7;
    CHECK(simulate_return(g, 2, o) == [&] {
        WalkOptions single = o;
        single.threads = 1;
        return simulate_return(g, 2, single);
    }());
    o.seed += 1;
    CHECK_FALSE(simulate_hitting(g, 0, 3, o) == a);
}

TEST_CASE("std_error is the sample standard deviation over sqrt(trials)") {
    // Brute-force the same trials through the public RNG and compare.
    const WeightedGraph g = path_graph(4);
    WalkOptions o;
    o.trials = 500;
    o.seed = 77;
    const auto stats = simulate_hitting(g, 0, 3, o);

    std::vector<double> lengths;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        TrialRng rng(o.seed, t);
        std::size_t v = 0;
        double steps = 0;
        while (v != 3) {
            const auto nbrs = g.neighbors(v);
            v = nbrs[rng.below(nbrs.size())].vertex;
            ++steps;
        }
        lengths.push_back(steps);
    }
    double mean = 0.0;
    for (double x : lengths) mean += x;
    mean /= static_cast<double>(lengths.size());
    double ss = 0.0;
    for (double x : lengths) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(lengths.size() - 1));
    CHECK(stats.estimate == doctest::Approx(mean).epsilon(1e-14));
    CHECK(stats.std_error == doctest::Approx(sd / std::sqrt(500.0)).epsilon(1e-12));
}

TEST_CASE("step cap discards trials") {
    WalkOptions o;
    o.trials = 2000;
    o.max_steps = 2;
    // On P3 from one end, only the direct 2-step walk finishes under the cap.
    const auto s = simulate_hitting(path_graph(3), 0, 2, o);
    CHECK(s.max_steps_hit > 0);
    CHECK(s.trials + s.max_steps_hit == 2000);
    CHECK(s.estimate == 2.0);

    o.max_steps = 3;
    CHECK_THROWS_AS(simulate_hitting(path_graph(6), 0, 5, o), SolveError);
}

TEST_CASE("simulation preconditions") {
    WalkOptions o;
    o.trials = 10;
    CHECK_THROWS_AS(simulate_hitting(path_graph(3), 1, 1, o), std::invalid_argument);
    CHECK_THROWS_AS(simulate_hitting(path_graph(3), 0, 3, o), IndexError);
    o.trials = 0;
    CHECK_THROWS_AS(simulate_return(path_graph(3), 0, o), std::invalid_argument);
}
