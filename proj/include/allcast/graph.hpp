#pragma once

#include "allcast/gf2.hpp"
#include "allcast/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace allcast {

/// Directed graph on nodes 0..n-1 with bit-packed out-neighbor rows.
/// Edge (u, v) means v receives u's broadcast. Self-loops are rejected:
/// a node's in-degree is Bin(n-1, p) under the Erdos-Renyi law.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n) : n_(n), out_(n, Gf2Vector(n)) {}

    static DirectedGraph complete(std::size_t n);
    // Test hook: deterministic construction from an explicit adjacency list.
    static DirectedGraph from_adjacency(std::size_t n,
                                        const std::vector<std::vector<std::uint32_t>>& out);

    std::size_t size() const { return n_; }

    bool has_edge(std::size_t u, std::size_t v) const { return out_[u].get(v); }

    void add_edge(std::size_t u, std::size_t v);

    const Gf2Vector& out_neighbors(std::size_t u) const { return out_[u]; }

    std::size_t out_degree(std::size_t u) const { return out_[u].popcount(); }

    std::size_t edge_count() const;

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Gf2Vector> out_;
};

// G(n, p): each ordered pair (u, v), u != v, is an edge independently with
// probability p. Pairs are sampled in lexicographic order so a given seed
// always yields the same graph.
DirectedGraph generate_er(std::size_t n, double p, Rng& rng);

// One step of the On-Off Markov edge process: each ordered pair keeps its
// state with probability 1-alpha, otherwise it is redrawn Bernoulli(p).
// Pair order is lexicographic, as in generate_er.
DirectedGraph evolve(const DirectedGraph& g, double p, double alpha, Rng& rng);

std::vector<std::uint32_t> in_degrees(const DirectedGraph& g);
std::vector<std::uint32_t> out_degrees(const DirectedGraph& g);

// M_uv = { w : (u,w) and (w,v) are edges }, ascending; u == v is rejected.
std::vector<std::uint32_t> two_hop_set(const DirectedGraph& g, std::size_t u, std::size_t v);

struct ConcentrationResult {
    bool e1_holds;  // every in- and out-degree in ((1-delta)np, (1+delta)np)
    bool e2_holds;  // every |M_uv|, u != v, exceeds (1-delta)(n-2)p^2
};

ConcentrationResult concentration_check(const DirectedGraph& g, double delta, double p);

// Fixture serialization: first line "n", then one line per node listing its
// out-neighbors space-separated in ascending order (possibly empty).
std::string to_text(const DirectedGraph& g);
DirectedGraph graph_from_text(std::string_view text);

enum class GraphMode { Static, Markov };

/// Per-round communication graph source. Static mode replays one graph
/// forever; Markov mode evolves every ordered pair as an independent On-Off
/// chain with stationary marginal Bernoulli(p).
class GraphProcess {
public:
    static GraphProcess fixed(DirectedGraph g);
    static GraphProcess erdos_renyi(std::size_t n, double p, Rng& rng);
    static GraphProcess markov(std::size_t n, double p, double alpha, Rng& rng);

    GraphMode mode() const { return mode_; }
    double p() const { return p_; }
    double alpha() const { return alpha_; }
    const DirectedGraph& current() const { return current_; }

    // Advance to the next round's graph (no-op in Static mode).
    void advance(Rng& rng);

private:
    GraphMode mode_ = GraphMode::Static;
    double p_ = 0.0;
    double alpha_ = 0.0;
    DirectedGraph current_;
};

}  // namespace allcast
