#pragma once

#include "allcast/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace allcast {

// Relative entropy H(q;p) of Bern(q) with respect to Bern(p), natural log,
// with 0*log 0 := 0. Nonnegative, zero iff q == p. Requires p in (0,1).
// The literature writes this both as H and D; one function serves both.
double rel_entropy(double q, double p);

enum class TailSide { Upper, Lower };

// Chernoff bound exp(-n*H(q;p)) for P(Bin(n,p) > nq) (Upper, q > p) or
// P(Bin(n,p) < nq) (Lower, q < p). The wrong side of p is rejected.
double binom_tail_bound(std::size_t n, double p, double q, TailSide side);

// ceil((n-1)/min in-degree) rounds needed by any allcast algorithm on a
// static graph; nullopt when some node has in-degree 0 (allcast impossible).
std::optional<std::int64_t> lower_bound_static(const DirectedGraph& g);

// max over nodes of the first round T with sum_{t<=T} d_t_in(v) >= n-1,
// given one in-degree row per round; nullopt if the rows run out first.
std::optional<std::int64_t> lower_bound_sequence(
    const std::vector<std::vector<std::uint32_t>>& in_degree_rows);

// (1/q) * exp(-n(n-1)H(q;p)) upper bound on P(T_all <= 1/q); requires q > p.
double allcast_tail_bound(double q, double p, std::size_t n);

enum class RelayVariant { R1, R2 };

// High-probability round bound: 2(1+eps)ln(n)/p for R1, 2(1+eps)ln(n)/p^2 for R2.
double relay_bound(RelayVariant variant, std::size_t n, double p, double epsilon);

// ceil(1/p) + 2 rounds, past which coded allcast fails only with vanishing
// probability.
std::int64_t rlnc_bound(double p);

// P(s, pi) = (1 + (1-2*pi)^s) / 2: probability that the XOR of s independent
// Bern(pi) bits is zero.
double parity_prob(std::int64_t s, double pi);

/// Parameters of the kernel-probability formulas: a random m x n GF(2)
/// matrix whose columns are zero with probability 1-p and otherwise filled
/// with i.i.d. Bern(pi) entries, probed with a weight-k test vector.
struct KernelParams {
    std::int64_t k = 1;  // ones in the test vector
    std::int64_t m = 1;  // rows
    double p = 0.5;      // column-activation probability
    double pi = 0.25;    // entry probability within an active column
};

// Exact P(R x_k = 0) = sum_s C(k,s) p^s (1-p)^{k-s} P(s,pi)^m.
double kernel_prob_exact(const KernelParams& kp);

// Independent brute-force check of kernel_prob_exact: dynamic program over
// the 2^m column-sum states, convolving the k column distributions.
// Limited to m <= 12 and k <= 12.
double kernel_prob_oracle(const KernelParams& kp);

struct KernelBounds {
    double general;                // valid for every k >= 1
    std::optional<double> smallk;  // valid only when k <= k_star
    std::int64_t k_star;
};

// Closed-form upper bounds on the exact kernel probability:
//   general: 2^-m * [1 + exp(-k p pi) + 2 exp(-(k/m) H(p/2;p))]^m
//   smallk:  exp(-k m p pi / 4), applicable while (1-2pi)^k >= 1/2 and
//            (1 - pi k / 2)^m >= 1/2.
// Requires pi in (0, 1/2).
KernelBounds kernel_prob_bounds(const KernelParams& kp);

}  // namespace allcast
