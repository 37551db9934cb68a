#pragma once

#include "allcast/analysis.hpp"
#include "allcast/gf2.hpp"
#include "allcast/graph.hpp"
#include "allcast/rng.hpp"

#include <cstdint>
#include <vector>

namespace allcast {

inline constexpr std::int32_t kCensored = -1;

/// One replicate's outcome. Rounds are counted from 1 (the round in which
/// every node broadcasts its own packet); a node's completion round is the
/// first round after which it holds (or can decode) all n packets.
struct TrialResult {
    std::uint64_t seed = 0;
    bool completed = false;
    std::int32_t rounds_to_allcast = kCensored;      // kCensored while censored
    std::vector<std::int32_t> per_node_completion;   // kCensored where unreached
    std::int32_t lower_bound = kCensored;            // kCensored if horizon too short
    bool payload_checked = false;
    bool payload_ok = true;

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

// ceil(10 * 2 ln(n) / p^2): censoring headroom an order of magnitude above
// the slowest proven bound at simulated sizes.
int default_max_rounds(std::size_t n, double p);

// Realized-sequence form of the degree lower bound: tau_v is the first round
// T with sum_{t<=T} d_t_in(v) >= n-1; the trial bound is max_v tau_v.
class LowerBoundTracker {
public:
    explicit LowerBoundTracker(std::size_t n)
        : cum_(n, 0), tau_(n, kCensored), need_(static_cast<std::int64_t>(n) - 1) {}

    void observe(const std::vector<std::uint32_t>& in_deg, std::int32_t round);
    std::int32_t value() const;  // kCensored until every node has reached n-1

private:
    std::vector<std::int64_t> cum_;
    std::vector<std::int32_t> tau_;
    std::int64_t need_;
    std::size_t reached_ = 0;
};

/// Round-by-round executor for the relay algorithm. R1 nodes re-broadcast a
/// uniform pick from their round-1 receipts; R2 nodes pick uniformly from
/// every distinct packet received so far. A node whose candidate set is
/// empty falls back to its own packet.
class RelayEngine {
public:
    RelayEngine(RelayVariant variant, GraphProcess process);

    void step(Rng& rng);

    std::size_t n() const { return known_.size(); }
    std::int32_t round() const { return round_; }
    bool all_complete() const { return num_complete_ == n(); }

    bool knows(std::size_t node, std::size_t packet) const { return known_[node].get(packet); }
    std::size_t known_count(std::size_t node) const { return known_count_[node]; }
    const std::vector<std::int32_t>& candidates(std::size_t node) const {
        return candidates_[node];
    }
    const std::vector<std::int32_t>& last_broadcasts() const { return last_broadcasts_; }
    const std::vector<std::int32_t>& per_node_completion() const { return completion_; }
    std::int32_t lower_bound() const { return lb_.value(); }
    const GraphProcess& process() const { return process_; }

private:
    RelayVariant variant_;
    GraphProcess process_;
    std::int32_t round_ = 0;
    std::vector<Gf2Vector> known_;
    std::vector<std::size_t> known_count_;
    std::vector<std::vector<std::int32_t>> candidates_;
    std::vector<std::int32_t> last_broadcasts_;
    std::vector<std::int32_t> completion_;
    std::size_t num_complete_ = 0;
    LowerBoundTracker lb_;
    std::vector<std::uint32_t> static_in_deg_;  // cached when the process is static
};

TrialResult run_relay(RelayVariant variant, GraphProcess process, int max_rounds, Rng& rng);

struct RlncOptions {
    double beta = 8.0;
    bool strict_decoding = false;  // count only coded rows toward rank n
    bool payload_check = false;    // re-encode receipts and verify decoded payloads
};

/// Round-by-round executor for coded allcast. After the self-broadcast
/// round, node v includes each round-1 packet w in its combination with
/// probability pi_v = min(1/2, beta ln(d)/d) where d = |round-1 receipts|
/// (pi_v = 1 when d <= 1), and broadcasts the coefficient vector together
/// with the XOR of the selected payloads.
class RlncEngine {
public:
    RlncEngine(RlncOptions options, GraphProcess process, Rng& rng);

    void step(Rng& rng);

    std::size_t n() const { return decoders_.size(); }
    std::int32_t round() const { return round_; }
    bool all_complete() const { return num_complete_ == n(); }

    const std::vector<std::int32_t>& round1_sources(std::size_t node) const {
        return round1_sources_[node];
    }
    double pi(std::size_t node) const { return pi_[node]; }
    const DecoderState& decoder(std::size_t node) const { return decoders_[node]; }
    const std::vector<Gf2Vector>& last_coeff_rows() const { return last_rows_; }
    const std::vector<std::int32_t>& per_node_completion() const { return completion_; }
    std::int32_t lower_bound() const { return lb_.value(); }
    const std::vector<std::uint64_t>& originals() const { return originals_; }
    bool payload_ok() const { return payload_ok_; }

private:
    void check_node_completion(std::size_t v);

    RlncOptions options_;
    GraphProcess process_;
    std::int32_t round_ = 0;
    std::vector<std::uint64_t> originals_;
    std::vector<std::vector<std::int32_t>> round1_sources_;
    std::vector<double> pi_;
    std::vector<DecoderState> decoders_;
    std::vector<Gf2Vector> last_rows_;
    std::vector<std::uint64_t> last_payloads_;
    std::vector<std::int32_t> completion_;
    std::size_t num_complete_ = 0;
    bool payload_ok_ = true;
    LowerBoundTracker lb_;
    std::vector<std::uint32_t> static_in_deg_;
};

TrialResult run_rlnc(const RlncOptions& options, GraphProcess process, int max_rounds, Rng& rng);

}  // namespace allcast
