#include "allcast/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace allcast {

double rel_entropy(double q, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rel_entropy: p must lie in (0,1)");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("rel_entropy: q must lie in [0,1]");
    double h = 0.0;
    if (q > 0.0) h += q * std::log(q / p);
    if (q < 1.0) h += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
    return h;
}

double binom_tail_bound(std::size_t n, double p, double q, TailSide side) {
    if (side == TailSide::Upper && !(q > p))
        throw std::invalid_argument("binom_tail_bound: upper tail needs q > p");
    if (side == TailSide::Lower && !(q < p))
        throw std::invalid_argument("binom_tail_bound: lower tail needs q < p");
    return std::exp(-static_cast<double>(n) * rel_entropy(q, p));
}

std::optional<std::int64_t> lower_bound_static(const DirectedGraph& g) {
    const auto deg = in_degrees(g);
    std::uint32_t dmin = *std::min_element(deg.begin(), deg.end());
    if (dmin == 0) return std::nullopt;
    const auto need = static_cast<std::int64_t>(g.size()) - 1;
    return (need + dmin - 1) / dmin;
}

std::optional<std::int64_t> lower_bound_sequence(
    const std::vector<std::vector<std::uint32_t>>& in_degree_rows) {
    if (in_degree_rows.empty()) return std::nullopt;
    const std::size_t n = in_degree_rows.front().size();
    for (const auto& row : in_degree_rows)
        if (row.size() != n) throw std::invalid_argument("in-degree rows must share one length");
    std::vector<std::int64_t> cum(n, 0);
    std::vector<std::int64_t> tau(n, -1);
    const auto need = static_cast<std::int64_t>(n) - 1;
    std::size_t reached = 0;
    for (std::size_t t = 0; t < in_degree_rows.size() && reached < n; ++t) {
        const auto& row = in_degree_rows[t];
        for (std::size_t v = 0; v < n; ++v) {
            if (tau[v] >= 0) continue;
            cum[v] += row[v];
            if (cum[v] >= need) {
                tau[v] = static_cast<std::int64_t>(t) + 1;
                ++reached;
            }
        }
    }
    if (reached < n) return std::nullopt;
    return *std::max_element(tau.begin(), tau.end());
}

double allcast_tail_bound(double q, double p, std::size_t n) {
    if (!(q > p)) throw std::invalid_argument("allcast_tail_bound: requires q > p");
    const auto nn = static_cast<double>(n);
    return (1.0 / q) * std::exp(-nn * (nn - 1.0) * rel_entropy(q, p));
}

double relay_bound(RelayVariant variant, std::size_t n, double p, double epsilon) {
    if (n < 2) throw std::invalid_argument("relay_bound: n must be >= 2");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("relay_bound: p must lie in (0,1]");
    const double base = 2.0 * (1.0 + epsilon) * std::log(static_cast<double>(n)) / p;
    return variant == RelayVariant::R1 ? base : base / p;
}

std::int64_t rlnc_bound(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("rlnc_bound: p must lie in (0,1]");
    // Tiny slack so 1/p values that are integers up to rounding (p = 0.1,
    // 1/3, ...) do not get ceiled one too high.
    return static_cast<std::int64_t>(std::ceil(1.0 / p - 1e-9)) + 2;
}

double parity_prob(std::int64_t s, double pi) {
    if (s < 0) throw std::invalid_argument("parity_prob: s must be >= 0");
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("parity_prob: pi must lie in [0,1]");
    return (1.0 + std::pow(1.0 - 2.0 * pi, static_cast<double>(s))) / 2.0;
}

namespace {

// Bin(k, p) point mass at s; direct products up to k = 50, log-gamma above.
double binom_pmf(std::int64_t k, std::int64_t s, double p) {
    if (p == 0.0) return s == 0 ? 1.0 : 0.0;
    if (p == 1.0) return s == k ? 1.0 : 0.0;
    if (k <= 50) {
        double c = 1.0;  // stays integral and below 2^53 for k <= 50
        for (std::int64_t i = 1; i <= s; ++i)
            c = c * static_cast<double>(k - s + i) / static_cast<double>(i);
        return c * std::pow(p, static_cast<double>(s)) *
               std::pow(1.0 - p, static_cast<double>(k - s));
    }
    const double lg = std::lgamma(static_cast<double>(k + 1)) -
                      std::lgamma(static_cast<double>(s + 1)) -
                      std::lgamma(static_cast<double>(k - s + 1));
    return std::exp(lg + static_cast<double>(s) * std::log(p) +
                    static_cast<double>(k - s) * std::log1p(-p));
}

void validate_kernel_params(const KernelParams& kp) {
    if (kp.k < 0) throw std::invalid_argument("kernel params: k must be >= 0");
    if (kp.m < 1) throw std::invalid_argument("kernel params: m must be >= 1");
    if (!(kp.p >= 0.0 && kp.p <= 1.0))
        throw std::invalid_argument("kernel params: p must lie in [0,1]");
    if (!(kp.pi >= 0.0 && kp.pi <= 1.0))
        throw std::invalid_argument("kernel params: pi must lie in [0,1]");
}

}  // namespace

double kernel_prob_exact(const KernelParams& kp) {
    validate_kernel_params(kp);
    double total = 0.0;
    for (std::int64_t s = 0; s <= kp.k; ++s)
        total += binom_pmf(kp.k, s, kp.p) *
                 std::pow(parity_prob(s, kp.pi), static_cast<double>(kp.m));
    return total;
}

double kernel_prob_oracle(const KernelParams& kp) {
    validate_kernel_params(kp);
    if (kp.m > 12 || kp.k > 12)
        throw std::invalid_argument("kernel_prob_oracle: limited to m <= 12, k <= 12");
    const std::size_t states = std::size_t{1} << kp.m;

    // Distribution of one column over the m-bit patterns it contributes.
    std::vector<double> col(states, 0.0);
    for (std::size_t b = 0; b < states; ++b) {
        const int ones = std::popcount(b);
        col[b] = kp.p * std::pow(kp.pi, ones) *
                 std::pow(1.0 - kp.pi, static_cast<double>(kp.m - ones));
    }
    col[0] += 1.0 - kp.p;

    // Convolve k columns over XOR; track the distribution of the running sum.
    std::vector<double> dist(states, 0.0);
    dist[0] = 1.0;
    std::vector<double> next(states);
    for (std::int64_t c = 0; c < kp.k; ++c) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t st = 0; st < states; ++st) {
            const double w = dist[st];
            if (w == 0.0) continue;
            for (std::size_t b = 0; b < states; ++b) next[st ^ b] += w * col[b];
        }
        dist.swap(next);
    }
    return dist[0];
}

KernelBounds kernel_prob_bounds(const KernelParams& kp) {
    validate_kernel_params(kp);
    if (!(kp.pi > 0.0 && kp.pi < 0.5))
        throw std::invalid_argument("kernel_prob_bounds: pi must lie in (0, 1/2)");
    if (kp.k < 1) throw std::invalid_argument("kernel_prob_bounds: k must be >= 1");
    const double m = static_cast<double>(kp.m);
    const double k = static_cast<double>(kp.k);
    const double d_half = rel_entropy(kp.p / 2.0, kp.p);
    const double general =
        std::pow(2.0, -m) *
        std::pow(1.0 + std::exp(-k * kp.p * kp.pi) + 2.0 * std::exp(-(k / m) * d_half), m);

    std::int64_t k_star = 0;
    for (std::int64_t c = 1;; ++c) {
        const double base = 1.0 - kp.pi * static_cast<double>(c) / 2.0;
        const bool ok = std::pow(1.0 - 2.0 * kp.pi, static_cast<double>(c)) >= 0.5 &&
                        base > 0.0 && std::pow(base, m) >= 0.5;
        if (!ok) break;
        k_star = c;
    }

    std::optional<double> smallk;
    if (kp.k <= k_star) smallk = std::exp(-k * m * kp.p * kp.pi / 4.0);
    return {general, smallk, k_star};
}

}  // namespace allcast
