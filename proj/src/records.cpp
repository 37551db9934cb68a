#include "allcast/records.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace allcast {

OutputRecord make_record(const ExperimentConfig& cfg, std::size_t replicate,
                         const TrialResult& trial) {
    OutputRecord rec;
    rec.algorithm = std::string(to_string(cfg.algorithm));
    rec.n = cfg.n;
    rec.p = cfg.p;
    rec.alpha = cfg.alpha;
    if (cfg.algorithm == Algorithm::Rlnc) rec.beta = cfg.beta;
    rec.replicate = replicate;
    rec.seed = trial.seed;
    if (trial.completed) rec.rounds = trial.rounds_to_allcast;
    rec.completed = trial.completed;
    if (trial.lower_bound != kCensored) rec.lower_bound = trial.lower_bound;
    return rec;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void append_csv_row(std::string& out, const OutputRecord& rec) {
    out += rec.algorithm;
    out += ',';
    out += std::to_string(rec.n);
    out += ',';
    out += format_double(rec.p);
    out += ',';
    out += format_double(rec.alpha);
    out += ',';
    if (rec.beta) out += format_double(*rec.beta);
    out += ',';
    out += std::to_string(rec.replicate);
    out += ',';
    out += std::to_string(rec.seed);
    out += ',';
    if (rec.rounds) out += std::to_string(*rec.rounds);
    out += ',';
    out += rec.completed ? '1' : '0';
    out += ',';
    if (rec.lower_bound) out += std::to_string(*rec.lower_bound);
    out += '\n';
}

std::string records_to_csv(const ExperimentConfig& cfg, const std::vector<TrialResult>& records) {
    std::string out;
    out.reserve(64 * (records.size() + 1));
    out += kRecordCsvHeader;
    out += '\n';
    for (std::size_t i = 0; i < records.size(); ++i)
        append_csv_row(out, make_record(cfg, i, records[i]));
    return out;
}

void append_summary_csv_row(std::string& out, const ExperimentConfig& cfg,
                            const SummaryStats& summary) {
    out += to_string(cfg.algorithm);
    out += ',';
    out += std::to_string(cfg.n);
    out += ',';
    out += format_double(cfg.p);
    out += ',';
    out += format_double(cfg.alpha);
    out += ',';
    if (cfg.algorithm == Algorithm::Rlnc) out += format_double(cfg.beta);
    out += ',';
    out += std::to_string(summary.count);
    out += ',';
    out += std::to_string(summary.censored_count);
    for (double v : {summary.min, summary.q1, summary.median, summary.q3, summary.max,
                     summary.mean}) {
        out += ',';
        if (summary.count > 0 && std::isfinite(v)) out += format_double(v);
    }
    out += '\n';
}

std::string summary_to_csv(const ExperimentConfig& cfg, const SummaryStats& summary) {
    std::string out;
    out += kSummaryCsvHeader;
    out += '\n';
    append_summary_csv_row(out, cfg, summary);
    return out;
}

namespace {

nlohmann::json record_to_json(const OutputRecord& rec) {
    nlohmann::json j;
    j["algorithm"] = rec.algorithm;
    j["n"] = rec.n;
    j["p"] = rec.p;
    j["alpha"] = rec.alpha;
    j["beta"] = rec.beta ? nlohmann::json(*rec.beta) : nlohmann::json(nullptr);
    j["replicate"] = rec.replicate;
    j["seed"] = rec.seed;
    j["rounds"] = rec.rounds ? nlohmann::json(*rec.rounds) : nlohmann::json(nullptr);
    j["completed"] = rec.completed ? 1 : 0;
    j["lower_bound"] =
        rec.lower_bound ? nlohmann::json(*rec.lower_bound) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json summary_to_json_obj(const ExperimentConfig& cfg, const SummaryStats& s) {
    nlohmann::json j;
    j["algorithm"] = to_string(cfg.algorithm);
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.algorithm == Algorithm::Rlnc ? nlohmann::json(cfg.beta)
                                                 : nlohmann::json(nullptr);
    j["count"] = s.count;
    j["censored"] = s.censored_count;
    const auto opt = [&](double v) {
        return s.count > 0 && std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    j["min"] = opt(s.min);
    j["q1"] = opt(s.q1);
    j["median"] = opt(s.median);
    j["q3"] = opt(s.q3);
    j["max"] = opt(s.max);
    j["mean"] = opt(s.mean);
    return j;
}

}  // namespace

std::string experiment_to_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    nlohmann::json doc;
    doc["records"] = nlohmann::json::array();
    for (std::size_t i = 0; i < result.records.size(); ++i)
        doc["records"].push_back(record_to_json(make_record(cfg, i, result.records[i])));
    doc["summary"] = summary_to_json_obj(cfg, result.summary);
    return doc.dump(2) + "\n";
}

}  // namespace allcast
