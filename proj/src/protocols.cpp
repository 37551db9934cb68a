#include "allcast/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace allcast {

int default_max_rounds(std::size_t n, double p) {
    if (n < 2 || !(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("default_max_rounds: need n >= 2 and p in (0,1]");
    return static_cast<int>(std::ceil(10.0 * 2.0 * std::log(static_cast<double>(n)) / (p * p)));
}

void LowerBoundTracker::observe(const std::vector<std::uint32_t>& in_deg, std::int32_t round) {
    if (reached_ == cum_.size()) return;
    for (std::size_t v = 0; v < cum_.size(); ++v) {
        if (tau_[v] != kCensored) continue;
        cum_[v] += in_deg[v];
        if (cum_[v] >= need_) {
            tau_[v] = round;
            ++reached_;
        }
    }
}

std::int32_t LowerBoundTracker::value() const {
    if (reached_ != cum_.size()) return kCensored;
    return *std::max_element(tau_.begin(), tau_.end());
}

namespace {

TrialResult assemble(bool completed, std::int32_t round, std::vector<std::int32_t> completion,
                     std::int32_t lower_bound) {
    TrialResult r;
    r.completed = completed;
    r.rounds_to_allcast = completed ? round : kCensored;
    r.per_node_completion = std::move(completion);
    r.lower_bound = lower_bound;
    return r;
}

}  // namespace

RelayEngine::RelayEngine(RelayVariant variant, GraphProcess process)
    : variant_(variant),
      process_(std::move(process)),
      lb_(process_.current().size()) {
    const std::size_t n = process_.current().size();
    if (n < 2) throw std::invalid_argument("relay: n must be >= 2");
    known_.assign(n, Gf2Vector(n));
    known_count_.assign(n, 1);
    for (std::size_t v = 0; v < n; ++v) known_[v].set(v, true);
    candidates_.assign(n, {});
    last_broadcasts_.assign(n, 0);
    completion_.assign(n, kCensored);
    if (process_.mode() == GraphMode::Static) static_in_deg_ = in_degrees(process_.current());
}

void RelayEngine::step(Rng& rng) {
    ++round_;
    if (round_ > 1) process_.advance(rng);
    const DirectedGraph& g = process_.current();
    const std::size_t n = known_.size();

    lb_.observe(process_.mode() == GraphMode::Static ? static_in_deg_ : in_degrees(g), round_);

    // Choose every broadcast before any delivery: rounds are synchronous.
    if (round_ == 1) {
        for (std::size_t u = 0; u < n; ++u) last_broadcasts_[u] = static_cast<std::int32_t>(u);
    } else {
        for (std::size_t u = 0; u < n; ++u) {
            const auto& cand = candidates_[u];
            last_broadcasts_[u] = cand.empty() ? static_cast<std::int32_t>(u)
                                               : cand[rng.uniform_index(cand.size())];
        }
    }

    for (std::size_t u = 0; u < n; ++u) {
        const std::int32_t pid = last_broadcasts_[u];
        g.out_neighbors(u).for_each_set([&](std::size_t v) {
            if (known_[v].get(static_cast<std::size_t>(pid))) return;
            known_[v].set(static_cast<std::size_t>(pid), true);
            ++known_count_[v];
            // R1 candidates freeze after round 1; R2 keeps accumulating.
            if (variant_ == RelayVariant::R2 || round_ == 1) candidates_[v].push_back(pid);
        });
    }

    for (std::size_t v = 0; v < n; ++v)
        if (completion_[v] == kCensored && known_count_[v] == n) {
            completion_[v] = round_;
            ++num_complete_;
        }
}

TrialResult run_relay(RelayVariant variant, GraphProcess process, int max_rounds, Rng& rng) {
    if (max_rounds < 1) throw std::invalid_argument("run_relay: max_rounds must be >= 1");
    RelayEngine engine(variant, std::move(process));
    while (engine.round() < max_rounds && !engine.all_complete()) engine.step(rng);
    return assemble(engine.all_complete(), engine.round(), engine.per_node_completion(),
                    engine.lower_bound());
}

namespace {

double inclusion_probability(double beta, std::size_t d_in) {
    // beta*ln(d)/d is 0 at d = 1 and undefined at d = 0; both degenerate
    // degrees get probability 1 so the rule stays total. Larger degrees cap
    // at 1/2: the parity bias |1-2*pi| vanishes there, so rank grows fastest,
    // while pi near 1 makes consecutive rows from a sender nearly identical
    // and stalls decoding.
    if (d_in <= 1) return 1.0;
    const double d = static_cast<double>(d_in);
    return std::min(0.5, beta * std::log(d) / d);
}

}  // namespace

RlncEngine::RlncEngine(RlncOptions options, GraphProcess process, Rng& rng)
    : options_(options),
      process_(std::move(process)),
      lb_(process_.current().size()) {
    const std::size_t n = process_.current().size();
    if (n < 2) throw std::invalid_argument("rlnc: n must be >= 2");
    if (!(options_.beta > 0.0)) throw std::invalid_argument("rlnc: beta must be > 0");
    originals_.resize(n);
    for (auto& w : originals_) w = rng.next_u64();
    round1_sources_.assign(n, {});
    pi_.assign(n, 1.0);
    decoders_.assign(n, DecoderState(n));
    last_rows_.assign(n, Gf2Vector(n));
    last_payloads_.assign(n, 0);
    completion_.assign(n, kCensored);
    if (process_.mode() == GraphMode::Static) static_in_deg_ = in_degrees(process_.current());
}

void RlncEngine::check_node_completion(std::size_t v) {
    if (completion_[v] != kCensored || !decoders_[v].complete()) return;
    completion_[v] = round_;
    ++num_complete_;
    if (options_.payload_check && decoders_[v].decode() != originals_) payload_ok_ = false;
}

void RlncEngine::step(Rng& rng) {
    ++round_;
    if (round_ > 1) process_.advance(rng);
    const DirectedGraph& g = process_.current();
    const std::size_t n = decoders_.size();

    lb_.observe(process_.mode() == GraphMode::Static ? static_in_deg_ : in_degrees(g), round_);

    if (round_ == 1) {
        // Self-broadcast round: receivers buffer raw packets, no coding yet.
        for (std::size_t u = 0; u < n; ++u)
            g.out_neighbors(u).for_each_set([&](std::size_t v) {
                round1_sources_[v].push_back(static_cast<std::int32_t>(u));
            });
        for (std::size_t v = 0; v < n; ++v) {
            pi_[v] = inclusion_probability(options_.beta, round1_sources_[v].size());
            if (!options_.strict_decoding) {
                decoders_[v].insert(Gf2Vector::unit(n, v), originals_[v]);
                for (std::int32_t w : round1_sources_[v])
                    decoders_[v].insert(Gf2Vector::unit(n, static_cast<std::size_t>(w)),
                                        originals_[static_cast<std::size_t>(w)]);
            }
            check_node_completion(v);
        }
        return;
    }

    // Coefficient support never leaves the round-1 buffer.
    for (std::size_t u = 0; u < n; ++u) {
        Gf2Vector row(n);
        std::uint64_t pay = 0;
        for (std::int32_t w : round1_sources_[u])
            if (rng.bernoulli(pi_[u])) {
                row.set(static_cast<std::size_t>(w), true);
                pay ^= originals_[static_cast<std::size_t>(w)];
            }
        last_rows_[u] = std::move(row);
        last_payloads_[u] = pay;
    }

    for (std::size_t u = 0; u < n; ++u)
        g.out_neighbors(u).for_each_set([&](std::size_t v) {
            if (completion_[v] != kCensored) return;  // rank n already; rows are redundant
            if (options_.payload_check) {
                std::uint64_t expect = 0;
                last_rows_[u].for_each_set([&](std::size_t w) { expect ^= originals_[w]; });
                if (expect != last_payloads_[u]) payload_ok_ = false;
            }
            decoders_[v].insert(last_rows_[u], last_payloads_[u]);
        });

    for (std::size_t v = 0; v < n; ++v) check_node_completion(v);
}

TrialResult run_rlnc(const RlncOptions& options, GraphProcess process, int max_rounds, Rng& rng) {
    if (max_rounds < 1) throw std::invalid_argument("run_rlnc: max_rounds must be >= 1");
    RlncEngine engine(options, std::move(process), rng);
    while (engine.round() < max_rounds && !engine.all_complete()) engine.step(rng);
    TrialResult r = assemble(engine.all_complete(), engine.round(), engine.per_node_completion(),
                             engine.lower_bound());
    r.payload_checked = options.payload_check;
    r.payload_ok = engine.payload_ok();
    return r;
}

}  // namespace allcast
