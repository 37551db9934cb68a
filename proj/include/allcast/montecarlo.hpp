#pragma once

#include "allcast/protocols.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace allcast {

enum class Algorithm { R1, R2, Rlnc };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::R1;
    std::size_t n = 0;
    double p = 0.0;
    double beta = 8.0;   // RLNC only
    double alpha = 0.0;  // 0 = static graph
    std::size_t replicates = 10000;
    std::uint64_t base_seed = 0;
    int max_rounds = 0;  // 0 = default_max_rounds(n, p)
    bool strict_decoding = false;
    bool payload_check = false;
};

// Throws std::invalid_argument describing the first violated field.
void validate(const ExperimentConfig& cfg);

int effective_max_rounds(const ExperimentConfig& cfg);

struct SummaryStats {
    std::size_t count = 0;           // completed replicates
    std::size_t censored_count = 0;  // excluded from the quantiles
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

// Box-plot statistics of completed round counts. Quartiles interpolate
// linearly between order statistics at positions (n-1)*{0.25, 0.5, 0.75}.
// Throws std::invalid_argument("no completed replicates") on empty input.
SummaryStats summarize(const std::vector<std::int32_t>& values);

struct ExperimentResult {
    std::vector<TrialResult> records;  // replicate order
    SummaryStats summary;
};

// Replicate i of cfg: runs on a fresh graph with the generator seeded by
// replicate_seed(cfg.base_seed, i). Independent of every other replicate.
TrialResult run_replicate(const ExperimentConfig& cfg, std::size_t index);

// All replicates, farmed out to `threads` workers (0 = hardware default).
// Records land in replicate order; parallel and serial runs are identical.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

// Runs each config in order.
std::vector<ExperimentResult> sweep(const std::vector<ExperimentConfig>& configs,
                                    unsigned threads = 0);

}  // namespace allcast
