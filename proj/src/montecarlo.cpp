#include "allcast/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace allcast {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::R1: return "r1";
        case Algorithm::R2: return "r2";
        case Algorithm::Rlnc: return "rlnc";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
    if (s == "r1") return Algorithm::R1;
    if (s == "r2") return Algorithm::R2;
    if (s == "rlnc") return Algorithm::Rlnc;
    return std::nullopt;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("config: p must lie in (0,1]");
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0))
        throw std::invalid_argument("config: alpha must lie in [0,1]");
    if (cfg.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (cfg.max_rounds < 0) throw std::invalid_argument("config: max_rounds must be >= 0");
    if (cfg.algorithm == Algorithm::Rlnc && !(cfg.beta > 0.0))
        throw std::invalid_argument("config: beta must be > 0");
}

int effective_max_rounds(const ExperimentConfig& cfg) {
    return cfg.max_rounds > 0 ? cfg.max_rounds : default_max_rounds(cfg.n, cfg.p);
}

SummaryStats summarize(const std::vector<std::int32_t>& values) {
    if (values.empty()) throw std::invalid_argument("no completed replicates");
    std::vector<std::int32_t> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (frac == 0.0) return static_cast<double>(sorted[lo]);
        return static_cast<double>(sorted[lo]) +
               frac * (static_cast<double>(sorted[lo + 1]) - static_cast<double>(sorted[lo]));
    };
    SummaryStats s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.max = sorted.back();
    double total = 0;
    for (auto v : sorted) total += v;
    s.mean = total / static_cast<double>(sorted.size());
    return s;
}

TrialResult run_replicate(const ExperimentConfig& cfg, std::size_t index) {
    const std::uint64_t seed = replicate_seed(cfg.base_seed, index);
    Rng rng(seed);
    // alpha = 0 is the static model; the Markov process with alpha = 0 would
    // be equivalent but burns one draw per ordered pair per round.
    GraphProcess proc = cfg.alpha > 0.0
                            ? GraphProcess::markov(cfg.n, cfg.p, cfg.alpha, rng)
                            : GraphProcess::erdos_renyi(cfg.n, cfg.p, rng);
    const int max_rounds = effective_max_rounds(cfg);
    TrialResult result;
    switch (cfg.algorithm) {
        case Algorithm::R1:
            result = run_relay(RelayVariant::R1, std::move(proc), max_rounds, rng);
            break;
        case Algorithm::R2:
            result = run_relay(RelayVariant::R2, std::move(proc), max_rounds, rng);
            break;
        case Algorithm::Rlnc:
            result = run_rlnc({cfg.beta, cfg.strict_decoding, cfg.payload_check},
                              std::move(proc), max_rounds, rng);
            break;
    }
    result.seed = seed;
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    validate(cfg);
    ExperimentResult out;
    out.records.resize(cfg.replicates);

    unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, cfg.replicates));

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const auto work = [&] {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < cfg.replicates;)
                out.records[i] = run_replicate(cfg, i);
        } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<std::int32_t> rounds;
    rounds.reserve(cfg.replicates);
    std::size_t censored = 0;
    for (const auto& r : out.records) {
        if (r.completed)
            rounds.push_back(r.rounds_to_allcast);
        else
            ++censored;
    }
    if (!rounds.empty()) {
        out.summary = summarize(rounds);
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.summary.min = out.summary.q1 = out.summary.median = out.summary.q3 =
            out.summary.max = out.summary.mean = nan;
    }
    out.summary.censored_count = censored;
    return out;
}

std::vector<ExperimentResult> sweep(const std::vector<ExperimentConfig>& configs,
                                    unsigned threads) {
    std::vector<ExperimentResult> results;
    results.reserve(configs.size());
    for (const auto& cfg : configs) results.push_back(run_experiment(cfg, threads));
    return results;
}

}  // namespace allcast
