#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "allcast/graph.hpp"

#include <cmath>
#include <numeric>
#include <set>

using namespace allcast;

namespace {

DirectedGraph three_cycle() {
    // u=0 -> v=1 -> w=2 -> u=0
    return DirectedGraph::from_adjacency(3, {{1}, {2}, {0}});
}

}  // namespace

TEST_CASE("generate_er extremes: p=1 complete, p=0 empty") {
    Rng rng(1);
    DirectedGraph full = generate_er(12, 1.0, rng);
    CHECK(full == DirectedGraph::complete(12));
    for (auto d : in_degrees(full)) CHECK(d == 11);

    DirectedGraph empty = generate_er(12, 0.0, rng);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("generate_er: mean in-degree near (n-1)p at n=1000") {
    Rng rng(7);
    DirectedGraph g = generate_er(1000, 0.4, rng);
    const auto deg = in_degrees(g);
    const double mean = std::accumulate(deg.begin(), deg.end(), 0.0) / 1000.0;
    CHECK(mean > 399.6 * 0.95);
    CHECK(mean < 399.6 * 1.05);
}

TEST_CASE("generate_er: per-pair edge frequency over 200 samples of G(50,0.3)") {
    const std::size_t n = 50, samples = 200;
    const double p = 0.3;
    std::vector<int> count(n * n, 0);
    Rng rng(326);
    for (std::size_t s = 0; s < samples; ++s) {
        DirectedGraph g = generate_er(n, p, rng);
        for (std::size_t u = 0; u < n; ++u)
            g.out_neighbors(u).for_each_set([&](std::size_t v) { ++count[u * n + v]; });
    }
    // 0.1 is about 3 binomial sigma for 200 samples.
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const double f = count[u * n + v] / static_cast<double>(samples);
            REQUIRE(std::abs(f - p) <= 0.1);
        }
}

TEST_CASE("degree bookkeeping: sum of in-degrees == sum of out-degrees == edges") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        DirectedGraph g = generate_er(40, 0.25, rng);
        const auto di = in_degrees(g);
        const auto dout = out_degrees(g);
        const auto si = std::accumulate(di.begin(), di.end(), std::size_t{0});
        const auto so = std::accumulate(dout.begin(), dout.end(), std::size_t{0});
        CHECK(si == g.edge_count());
        CHECK(so == g.edge_count());
    }
}

TEST_CASE("evolve: alpha=0 is the identity") {
    Rng rng(3);
    DirectedGraph g = generate_er(20, 0.5, rng);
    DirectedGraph h = evolve(g, 0.5, 0.0, rng);
    CHECK(h == g);
}

TEST_CASE("evolve: alpha=1 ignores the input graph") {
    Rng rng_a(99), rng_b(99), gen(5);
    DirectedGraph g1 = generate_er(16, 0.3, gen);
    DirectedGraph g2 = generate_er(16, 0.9, gen);
    CHECK(evolve(g1, 0.3, 1.0, rng_a) == evolve(g2, 0.3, 1.0, rng_b));
}

TEST_CASE("evolve: stationary marginal frequency over 10000 steps") {
    const std::size_t n = 4, steps = 10000;
    const double p = 0.4, alpha = 0.5;
    Rng rng(2);
    DirectedGraph g = generate_er(n, p, rng);
    std::vector<int> count(n * n, 0);
    for (std::size_t s = 0; s < steps; ++s) {
        g = evolve(g, p, alpha, rng);
        for (std::size_t u = 0; u < n; ++u)
            g.out_neighbors(u).for_each_set([&](std::size_t v) { ++count[u * n + v]; });
    }
    const double tol = 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(steps));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const double f = count[u * n + v] / static_cast<double>(steps);
            CHECK(std::abs(f - p) <= tol);
        }
}

TEST_CASE("degrees on fixtures") {
    DirectedGraph full = DirectedGraph::complete(5);
    for (auto d : in_degrees(full)) CHECK(d == 4);

    DirectedGraph empty(5);
    for (auto d : in_degrees(empty)) CHECK(d == 0);

    for (auto d : in_degrees(three_cycle())) CHECK(d == 1);
}

TEST_CASE("two_hop_set fixtures") {
    DirectedGraph full = DirectedGraph::complete(8);
    CHECK(two_hop_set(full, 0, 3).size() == 6);

    DirectedGraph empty(8);
    CHECK(two_hop_set(empty, 0, 3).empty());

    // only path 0 -> 1 -> 2
    const auto m = two_hop_set(three_cycle(), 0, 2);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == 1);

    CHECK_THROWS_AS(two_hop_set(full, 2, 2), std::invalid_argument);
}

TEST_CASE("two_hop_set matches brute-force double loop") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng.uniform_index(19);
        DirectedGraph g = generate_er(n, 0.4, rng);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                std::vector<std::uint32_t> brute;
                for (std::size_t w = 0; w < n; ++w)
                    if (g.has_edge(u, w) && g.has_edge(w, v))
                        brute.push_back(static_cast<std::uint32_t>(w));
                REQUIRE(two_hop_set(g, u, v) == brute);
            }
    }
}

TEST_CASE("concentration_check fixtures") {
    const auto full = concentration_check(DirectedGraph::complete(16), 0.1, 1.0);
    CHECK(full.e1_holds);
    CHECK(full.e2_holds);

    const auto empty = concentration_check(DirectedGraph(16), 0.1, 0.4);
    CHECK_FALSE(empty.e1_holds);
    CHECK_FALSE(empty.e2_holds);
}

TEST_CASE("concentration_check: G(1000,0.4) concentration events") {
    // Exact Bin(998, 0.16) tails: at delta=0.5 a two-hop-set miss has
    // probability ~2.5e-14 per pair, so the joint event holds in every
    // sample. At delta=0.2 only the degree event is that sharp; a two-hop
    // violation among the ~1e6 pairs is near-certain at n=1000.
    Rng rng(23);
    int joint_holds = 0, e1_holds = 0;
    for (int s = 0; s < 100; ++s) {
        DirectedGraph g = generate_er(1000, 0.4, rng);
        const auto wide = concentration_check(g, 0.5, 0.4);
        if (wide.e1_holds && wide.e2_holds) ++joint_holds;
        if (concentration_check(g, 0.2, 0.4).e1_holds) ++e1_holds;
    }
    CHECK(joint_holds == 100);
    CHECK(e1_holds == 100);
}

TEST_CASE("adjacency text round trip") {
    DirectedGraph g = DirectedGraph::from_adjacency(4, {{1, 3}, {}, {0}, {0, 1, 2}});
    const std::string text = to_text(g);
    CHECK(text == "4\n1 3\n\n0\n0 1 2\n");
    CHECK(graph_from_text(text) == g);

    Rng rng(29);
    DirectedGraph r = generate_er(33, 0.3, rng);
    CHECK(graph_from_text(to_text(r)) == r);

    CHECK_THROWS_AS(graph_from_text("2\n1\n"), std::invalid_argument);   // missing line
    CHECK_THROWS_AS(graph_from_text("x\n"), std::invalid_argument);      // bad count
}

TEST_CASE("graph process modes") {
    Rng rng(31);
    GraphProcess fixed = GraphProcess::fixed(three_cycle());
    const DirectedGraph before = fixed.current();
    fixed.advance(rng);
    CHECK(fixed.current() == before);

    GraphProcess markov = GraphProcess::markov(30, 0.4, 0.8, rng);
    const DirectedGraph g0 = markov.current();
    markov.advance(rng);
    CHECK(markov.current() != g0);  // 870 pair resamples; collision odds are negligible

    CHECK_THROWS_AS(GraphProcess::markov(10, 0.4, 1.5, rng), std::invalid_argument);
}

TEST_CASE("self-loops rejected") {
    DirectedGraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
}
