#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "allcast/analysis.hpp"
#include "allcast/rng.hpp"

#include <cmath>
#include <vector>

using namespace allcast;
using doctest::Approx;

TEST_CASE("rel_entropy: key values") {
    CHECK(rel_entropy(0.4, 0.4) == 0.0);
    // H(1; 0.4) = ln 2.5
    CHECK(rel_entropy(1.0, 0.4) == Approx(0.9162907318741551).epsilon(1e-12));
    CHECK(rel_entropy(0.5, 0.4) == Approx(0.02041099726012756).epsilon(1e-12));
    CHECK(rel_entropy(0.0, 0.5) == Approx(std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(rel_entropy(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rel_entropy(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("rel_entropy: nonnegative, zero only at q == p") {
    const double qs[] = {0.0, 0.1, 0.3, 0.5, 0.77, 1.0};
    const double ps[] = {0.05, 0.4, 0.6, 0.95};
    for (double q : qs)
        for (double p : ps) {
            const double h = rel_entropy(q, p);
            CHECK(h >= 0.0);
            if (q != p) CHECK(h > 0.0);
        }
}

TEST_CASE("binom_tail_bound: values and domination") {
    CHECK(binom_tail_bound(0, 0.4, 0.5, TailSide::Upper) == 1.0);
    CHECK(binom_tail_bound(100, 0.4, 0.5, TailSide::Upper) ==
          Approx(0.12988579352203862).epsilon(1e-12));

    // Exact upper tail P(Bin(20,0.4) > 12) as the independent reference.
    double exact = 0.0;
    for (int j = 13; j <= 20; ++j) {
        double c = 1.0;
        for (int i = 1; i <= j; ++i) c = c * (20 - j + i) / i;
        exact += c * std::pow(0.4, j) * std::pow(0.6, 20 - j);
    }
    CHECK(exact == Approx(0.02102892747777114).epsilon(1e-12));
    CHECK(binom_tail_bound(20, 0.4, 0.6, TailSide::Upper) >= exact);

    CHECK_THROWS_AS(binom_tail_bound(10, 0.4, 0.3, TailSide::Upper), std::invalid_argument);
    CHECK_THROWS_AS(binom_tail_bound(10, 0.4, 0.5, TailSide::Lower), std::invalid_argument);
}

TEST_CASE("lower_bound_static") {
    CHECK(lower_bound_static(DirectedGraph::complete(8)) == 1);

    // n=10, minimum in-degree 3: node 0 receives from exactly 1,2,3; the rest
    // receive from everyone else.
    std::vector<std::vector<std::uint32_t>> adj(10);
    for (std::uint32_t u = 0; u < 10; ++u)
        for (std::uint32_t v = 1; v < 10; ++v)
            if (u != v) adj[u].push_back(v);
    adj[1].push_back(0);
    adj[2].push_back(0);
    adj[3].push_back(0);
    CHECK(lower_bound_static(DirectedGraph::from_adjacency(10, adj)) == 3);

    CHECK(lower_bound_static(DirectedGraph::from_adjacency(3, {{1}, {2}, {0}})) == 2);

    // isolated receiver -> impossible
    CHECK_FALSE(lower_bound_static(DirectedGraph::from_adjacency(3, {{}, {2}, {1}})).has_value());
}

TEST_CASE("lower_bound_sequence") {
    CHECK(lower_bound_sequence({{4, 4, 4, 4, 4}}) == 1);

    // constant degrees d=2, n=5 -> ceil(4/2) = 2
    CHECK(lower_bound_sequence({{2, 2, 2, 2, 2}, {2, 2, 2, 2, 2}}) == 2);

    // node 0 sees degrees (1,1,2): prefix sums 1,2,4 reach n-1=4 at round 3
    CHECK(lower_bound_sequence({{1, 4, 4, 4, 4}, {1, 4, 4, 4, 4}, {2, 4, 4, 4, 4}}) == 3);

    // exhausted before reaching n-1
    CHECK_FALSE(lower_bound_sequence({{1, 4, 4, 4, 4}}).has_value());
    CHECK_FALSE(lower_bound_sequence({}).has_value());

    CHECK_THROWS_AS(lower_bound_sequence({{1, 2}, {1}}), std::invalid_argument);
}

TEST_CASE("allcast_tail_bound") {
    // entropy term vanishes as q -> p+, leaving 1/q
    CHECK(allcast_tail_bound(0.4 + 1e-13, 0.4, 100) == Approx(1.0 / 0.4).epsilon(1e-6));
    CHECK(allcast_tail_bound(0.5, 0.2, 1) == 2.0);
    CHECK(allcast_tail_bound(0.5, 0.4, 50) == Approx(3.830808735961994e-22).epsilon(1e-12));
    CHECK_THROWS_AS(allcast_tail_bound(0.4, 0.4, 10), std::invalid_argument);
}

TEST_CASE("relay_bound") {
    CHECK(relay_bound(RelayVariant::R1, 64, 0.4, 0.0) == Approx(20.794415416798359).epsilon(1e-12));
    CHECK(relay_bound(RelayVariant::R1, 64, 0.4, 0.0) == Approx(20.8).epsilon(5e-4));
    CHECK(relay_bound(RelayVariant::R1, 1024, 0.4, 0.0) ==
          Approx(34.657359027997265).epsilon(1e-12));
    CHECK(relay_bound(RelayVariant::R2, 1024, 0.4, 0.0) ==
          Approx(86.643397569993164).epsilon(1e-12));
    CHECK(relay_bound(RelayVariant::R1, 64, 0.4, 0.5) ==
          Approx(1.5 * 20.794415416798359).epsilon(1e-12));
    CHECK_THROWS_AS(relay_bound(RelayVariant::R1, 1, 0.4, 0.0), std::invalid_argument);
}

TEST_CASE("rlnc_bound") {
    CHECK(rlnc_bound(0.4) == 5);
    CHECK(rlnc_bound(1.0) == 3);
    CHECK(rlnc_bound(0.25) == 6);
    CHECK(rlnc_bound(0.1) == 12);   // 1/0.1 rounds to just above 10
    CHECK(rlnc_bound(0.3) == 6);    // ceil(3.33) + 2
    CHECK_THROWS_AS(rlnc_bound(0.0), std::invalid_argument);
}

TEST_CASE("parity_prob: closed form and recursion") {
    CHECK(parity_prob(0, 0.3) == 1.0);
    CHECK(parity_prob(1, 0.25) == 0.75);
    CHECK(parity_prob(2, 0.25) == Approx(0.625).epsilon(1e-15));

    for (double pi : {0.01, 0.1, 0.25, 0.49}) {
        double rec = 1.0;  // P(0, pi)
        for (std::int64_t s = 1; s <= 64; ++s) {
            rec = (1.0 - pi) * rec + pi * (1.0 - rec);
            CHECK(std::abs(parity_prob(s, pi) - rec) <= 1e-14);
        }
    }
}

TEST_CASE("kernel_prob_exact: anchors") {
    CHECK(kernel_prob_exact({0, 3, 0.5, 0.25}) == 1.0);
    CHECK(kernel_prob_exact({1, 2, 0.5, 0.25}) == Approx(0.78125).epsilon(1e-15));
    CHECK(kernel_prob_exact({2, 1, 0.5, 0.25}) == Approx(0.78125).epsilon(1e-15));
}

TEST_CASE("kernel_prob_oracle: anchors and limits") {
    CHECK(kernel_prob_oracle({0, 2, 0.5, 0.25}) == 1.0);
    CHECK(kernel_prob_oracle({5, 3, 0.7, 0.0}) == Approx(1.0).epsilon(1e-15));
    CHECK(kernel_prob_oracle({1, 2, 0.5, 0.25}) == Approx(0.78125).epsilon(1e-15));
    CHECK_THROWS_AS(kernel_prob_oracle({13, 2, 0.5, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_prob_oracle({2, 13, 0.5, 0.25}), std::invalid_argument);
}

TEST_CASE("kernel formula agrees with enumeration oracle on the small grid") {
    for (std::int64_t m : {1, 2, 3})
        for (std::int64_t k = 1; k <= 4; ++k)
            for (double p : {0.3, 0.7})
                for (double pi : {0.1, 0.4}) {
                    const KernelParams kp{k, m, p, pi};
                    CHECK(std::abs(kernel_prob_exact(kp) - kernel_prob_oracle(kp)) <= 1e-12);
                }
}

TEST_CASE("kernel_prob_exact: monotone in m, and in pi below 1/2") {
    for (std::int64_t k = 1; k <= 6; ++k)
        for (double p : {0.3, 0.7}) {
            for (double pi : {0.1, 0.4}) {
                double prev = kernel_prob_exact({k, 1, p, pi});
                for (std::int64_t m = 2; m <= 4; ++m) {
                    const double cur = kernel_prob_exact({k, m, p, pi});
                    CHECK(cur <= prev + 1e-15);
                    prev = cur;
                }
            }
            for (std::int64_t m : {1, 2, 3}) {
                double prev = kernel_prob_exact({k, m, p, 0.05});
                for (double pi : {0.15, 0.25, 0.35, 0.45}) {
                    const double cur = kernel_prob_exact({k, m, p, pi});
                    CHECK(cur <= prev + 1e-15);
                    prev = cur;
                }
            }
        }
}

TEST_CASE("kernel_prob_bounds: domination and k_star") {
    for (std::int64_t m : {1, 2, 3})
        for (std::int64_t k = 1; k <= 6; ++k)
            for (double p : {0.3, 0.7})
                for (double pi : {0.1, 0.4}) {
                    const KernelParams kp{k, m, p, pi};
                    const double exact = kernel_prob_exact(kp);
                    const KernelBounds b = kernel_prob_bounds(kp);
                    CHECK(b.general >= exact - 1e-15);
                    if (b.smallk) {
                        CHECK(k <= b.k_star);
                        CHECK(*b.smallk >= exact - 1e-15);
                    } else {
                        CHECK(k > b.k_star);
                    }
                }

    // 0.8^3 = 0.512 and 0.85^3 ~ 0.614 pass; 0.8^4 = 0.4096 fails.
    CHECK(kernel_prob_bounds({1, 3, 0.5, 0.1}).k_star == 3);
    CHECK_THROWS_AS(kernel_prob_bounds({1, 2, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("kernel_prob_exact matches sampled kernel frequency") {
    // 100k matrices drawn from the column law at (k=3, m=2, p=0.5, pi=0.25).
    const KernelParams kp{3, 2, 0.5, 0.25};
    const double expect = kernel_prob_exact(kp);
    CHECK(expect == Approx(0.52197265625).epsilon(1e-15));

    Rng rng(91);
    const int trials = 100000;
    int zero = 0;
    for (int t = 0; t < trials; ++t) {
        unsigned sum = 0;  // m-bit column sum
        for (int c = 0; c < kp.k; ++c) {
            if (!rng.bernoulli(kp.p)) continue;
            for (int r = 0; r < kp.m; ++r)
                if (rng.bernoulli(kp.pi)) sum ^= 1u << r;
        }
        if (sum == 0) ++zero;
    }
    const double freq = static_cast<double>(zero) / trials;
    const double sigma = std::sqrt(expect * (1.0 - expect) / trials);
    CHECK(std::abs(freq - expect) <= 4.0 * sigma);
}
