#pragma once

#include "allcast/montecarlo.hpp"

#include <optional>
#include <string>

namespace allcast {

/// One per-replicate output row. Optional fields print as empty CSV cells
/// (or JSON nulls): beta is only meaningful for RLNC, rounds only for
/// completed replicates, lower_bound only when the realized degree sequence
/// reached n-1 within the horizon.
struct OutputRecord {
    std::string algorithm;
    std::size_t n = 0;
    double p = 0.0;
    double alpha = 0.0;
    std::optional<double> beta;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::optional<std::int32_t> rounds;
    bool completed = false;
    std::optional<std::int32_t> lower_bound;
};

OutputRecord make_record(const ExperimentConfig& cfg, std::size_t replicate,
                         const TrialResult& trial);

// Shortest round-trip decimal form (0.4 prints as "0.4", not 0.4000...).
std::string format_double(double value);

inline constexpr std::string_view kRecordCsvHeader =
    "algorithm,n,p,alpha,beta,replicate,seed,rounds,completed,lower_bound";

inline constexpr std::string_view kSummaryCsvHeader =
    "algorithm,n,p,alpha,beta,count,censored,min,q1,median,q3,max,mean";

void append_csv_row(std::string& out, const OutputRecord& rec);

// Full per-replicate CSV document (header + one row per record).
std::string records_to_csv(const ExperimentConfig& cfg, const std::vector<TrialResult>& records);

void append_summary_csv_row(std::string& out, const ExperimentConfig& cfg,
                            const SummaryStats& summary);

std::string summary_to_csv(const ExperimentConfig& cfg, const SummaryStats& summary);

// {"records": [...], "summary": {...}} with 0/1 flags matching the CSV.
std::string experiment_to_json(const ExperimentConfig& cfg, const ExperimentResult& result);

}  // namespace allcast
