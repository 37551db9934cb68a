#include "allcast/graph.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace allcast {

DirectedGraph DirectedGraph::complete(std::size_t n) {
    DirectedGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v) g.out_[u].set(v, true);
    return g;
}

DirectedGraph DirectedGraph::from_adjacency(std::size_t n,
                                            const std::vector<std::vector<std::uint32_t>>& out) {
    if (out.size() != n) throw std::invalid_argument("adjacency list size != n");
    DirectedGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::uint32_t v : out[u]) g.add_edge(u, v);
    return g;
}

void DirectedGraph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    out_[u].set(v, true);
}

std::size_t DirectedGraph::edge_count() const {
    std::size_t c = 0;
    for (const auto& row : out_) c += row.popcount();
    return c;
}

DirectedGraph generate_er(std::size_t n, double p, Rng& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
    DirectedGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng.bernoulli(p)) g.add_edge(u, v);
        }
    }
    return g;
}

DirectedGraph evolve(const DirectedGraph& g, double p, double alpha, Rng& rng) {
    const std::size_t n = g.size();
    DirectedGraph next(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const bool resample = rng.bernoulli(alpha);
            const bool present = resample ? rng.bernoulli(p) : g.has_edge(u, v);
            if (present) next.add_edge(u, v);
        }
    }
    return next;
}

std::vector<std::uint32_t> in_degrees(const DirectedGraph& g) {
    std::vector<std::uint32_t> deg(g.size(), 0);
    for (std::size_t u = 0; u < g.size(); ++u)
        g.out_neighbors(u).for_each_set([&](std::size_t v) { ++deg[v]; });
    return deg;
}

std::vector<std::uint32_t> out_degrees(const DirectedGraph& g) {
    std::vector<std::uint32_t> deg(g.size());
    for (std::size_t u = 0; u < g.size(); ++u)
        deg[u] = static_cast<std::uint32_t>(g.out_degree(u));
    return deg;
}

std::vector<std::uint32_t> two_hop_set(const DirectedGraph& g, std::size_t u, std::size_t v) {
    if (u == v) throw std::invalid_argument("two_hop_set requires u != v");
    std::vector<std::uint32_t> out;
    g.out_neighbors(u).for_each_set([&](std::size_t w) {
        if (g.has_edge(w, v)) out.push_back(static_cast<std::uint32_t>(w));
    });
    return out;
}

ConcentrationResult concentration_check(const DirectedGraph& g, double delta, double p) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in (0,1)");
    const std::size_t n = g.size();
    const double np = static_cast<double>(n) * p;
    const double deg_lo = (1.0 - delta) * np;
    const double deg_hi = (1.0 + delta) * np;

    const auto din = in_degrees(g);
    bool e1 = true;
    for (std::size_t v = 0; v < n; ++v) {
        const double di = din[v];
        const double dov = static_cast<double>(g.out_degree(v));
        if (!(di > deg_lo && di < deg_hi && dov > deg_lo && dov < deg_hi)) {
            e1 = false;
            break;
        }
    }

    // |M_uv| via bitwise AND of u's out-row with v's in-row (transpose).
    DirectedGraph t(n);
    for (std::size_t u = 0; u < n; ++u)
        g.out_neighbors(u).for_each_set([&](std::size_t v) { t.add_edge(v, u); });
    const double m_lo = (1.0 - delta) * static_cast<double>(n - 2) * p * p;
    bool e2 = true;
    for (std::size_t u = 0; u < n && e2; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const auto m_uv =
                static_cast<double>(and_popcount(g.out_neighbors(u), t.out_neighbors(v)));
            if (!(m_uv > m_lo)) {
                e2 = false;
                break;
            }
        }
    return {e1, e2};
}

std::string to_text(const DirectedGraph& g) {
    std::ostringstream os;
    os << g.size() << '\n';
    for (std::size_t u = 0; u < g.size(); ++u) {
        bool first = true;
        g.out_neighbors(u).for_each_set([&](std::size_t v) {
            if (!first) os << ' ';
            os << v;
            first = false;
        });
        os << '\n';
    }
    return os.str();
}

DirectedGraph graph_from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("graph text: missing node count");
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n);
    if (ec != std::errc{}) throw std::invalid_argument("graph text: bad node count");
    DirectedGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (!std::getline(is, line))
            throw std::invalid_argument("graph text: missing adjacency line");
        std::istringstream ls(line);
        std::size_t v;
        while (ls >> v) g.add_edge(u, v);
    }
    return g;
}

GraphProcess GraphProcess::fixed(DirectedGraph g) {
    GraphProcess proc;
    proc.mode_ = GraphMode::Static;
    proc.current_ = std::move(g);
    return proc;
}

GraphProcess GraphProcess::erdos_renyi(std::size_t n, double p, Rng& rng) {
    GraphProcess proc;
    proc.mode_ = GraphMode::Static;
    proc.p_ = p;
    proc.current_ = generate_er(n, p, rng);
    return proc;
}

GraphProcess GraphProcess::markov(std::size_t n, double p, double alpha, Rng& rng) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0,1]");
    GraphProcess proc;
    proc.mode_ = GraphMode::Markov;
    proc.p_ = p;
    proc.alpha_ = alpha;
    proc.current_ = generate_er(n, p, rng);  // stationary start
    return proc;
}

void GraphProcess::advance(Rng& rng) {
    if (mode_ == GraphMode::Markov) current_ = evolve(current_, p_, alpha_, rng);
}

}  // namespace allcast
