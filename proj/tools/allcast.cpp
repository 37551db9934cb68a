// allcast: simulate gossip dissemination on random broadcast networks and
// evaluate the matching closed-form bounds.
//
// Subcommands:
//   simulate   run one experiment, emit per-replicate records + summary
//   bounds     print round bounds and tail probabilities for (n, p)
//   oracle     evaluate kernel-probability formulas and their cross-checks
//   sweep      run a list of experiments from a config file

#include "allcast/analysis.hpp"
#include "allcast/montecarlo.hpp"
#include "allcast/records.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace allcast;

namespace {

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value != 0) return flag_value;
    if (const char* env = std::getenv("ALLCAST_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // montecarlo picks hardware parallelism
}

bool write_file(const std::string& path, const std::string& content, std::string& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err = "cannot open " + path;
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        err = "write failed: " + path;
        return false;
    }
    return true;
}

int run_simulate(const ExperimentConfig& cfg, const std::string& format, const std::string& out,
                 unsigned threads) {
    const ExperimentResult result = run_experiment(cfg, threads);
    if (format == "json") {
        const std::string doc = experiment_to_json(cfg, result);
        if (out.empty()) {
            std::cout << doc;
        } else {
            std::string err;
            if (!write_file(out, doc, err)) {
                std::cerr << "error: " << err << "\n";
                return 1;
            }
        }
        return 0;
    }
    const std::string csv = records_to_csv(cfg, result.records);
    const std::string summary = summary_to_csv(cfg, result.summary);
    if (out.empty()) {
        std::cout << csv;
        std::cerr << summary;  // keep stdout a clean record CSV
        return 0;
    }
    std::string err;
    if (!write_file(out, csv, err) || !write_file(out + ".summary.csv", summary, err)) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }
    return 0;
}

int run_bounds(std::size_t n, double p, double epsilon) {
    std::printf("n=%zu p=%g epsilon=%g\n", n, p, epsilon);
    std::printf("relay R1 bound 2(1+eps)ln(n)/p   : %.6g rounds\n",
                relay_bound(RelayVariant::R1, n, p, epsilon));
    std::printf("relay R2 bound 2(1+eps)ln(n)/p^2 : %.6g rounds\n",
                relay_bound(RelayVariant::R2, n, p, epsilon));
    std::printf("rlnc bound ceil(1/p)+2           : %lld rounds\n",
                static_cast<long long>(rlnc_bound(p)));
    if (p < 1.0) {
        std::printf("tail bound P(T_all <= 1/q) <= (1/q)exp(-n(n-1)H(q;p)):\n");
        for (int j = 1; j <= 4; ++j) {
            const double q = p + (1.0 - p) * j / 5.0;
            std::printf("  q=%-8.4g bound=%.6g\n", q, allcast_tail_bound(q, p, n));
        }
    }
    return 0;
}

int run_kernel_prob(const KernelParams& kp, const std::string& method) {
    double value = 0.0;
    if (method == "closed") {
        value = kernel_prob_exact(kp);
    } else if (method == "enum") {
        value = kernel_prob_oracle(kp);
    } else if (method == "bound-general") {
        value = kernel_prob_bounds(kp).general;
    } else {
        const auto b = kernel_prob_bounds(kp);
        if (!b.smallk) {
            std::cerr << "error: small-k bound not applicable: k=" << kp.k << " exceeds k*="
                      << b.k_star << "\n";
            return 1;
        }
        value = *b.smallk;
    }
    std::printf("%s\n", format_double(value).c_str());
    return 0;
}

// Sweep config format: repeated "[experiment]" sections of key=value lines.
// '#' starts a comment. Keys mirror the simulate flags.
struct SweepParser {
    std::vector<ExperimentConfig> configs;
    std::vector<bool> has_algorithm, has_n, has_p;
    std::string error;

    bool fail(std::size_t line_no, const std::string& msg) {
        error = "line " + std::to_string(line_no) + ": " + msg;
        return false;
    }

    bool apply(std::size_t line_no, const std::string& key, const std::string& value) {
        if (configs.empty()) return fail(line_no, "key '" + key + "' before any [experiment]");
        ExperimentConfig& cfg = configs.back();
        try {
            if (key == "algorithm") {
                const auto algo = parse_algorithm(value);
                if (!algo) return fail(line_no, "unknown algorithm '" + value + "'");
                cfg.algorithm = *algo;
                has_algorithm.back() = true;
            } else if (key == "n") {
                cfg.n = std::stoull(value);
                has_n.back() = true;
            } else if (key == "p") {
                cfg.p = std::stod(value);
                has_p.back() = true;
            } else if (key == "beta") {
                cfg.beta = std::stod(value);
            } else if (key == "alpha") {
                cfg.alpha = std::stod(value);
            } else if (key == "replicates") {
                cfg.replicates = std::stoull(value);
            } else if (key == "base_seed") {
                cfg.base_seed = std::stoull(value);
            } else if (key == "max_rounds") {
                cfg.max_rounds = std::stoi(value);
            } else if (key == "strict_decoding" || key == "payload_check") {
                bool flag;
                if (value == "true" || value == "1")
                    flag = true;
                else if (value == "false" || value == "0")
                    flag = false;
                else
                    return fail(line_no, "expected true/false for '" + key + "'");
                (key == "strict_decoding" ? cfg.strict_decoding : cfg.payload_check) = flag;
            } else {
                return fail(line_no, "unknown key '" + key + "'");
            }
        } catch (const std::exception&) {
            return fail(line_no, "invalid value for '" + key + "': '" + value + "'");
        }
        return true;
    }

    bool parse(std::istream& in) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const auto last = line.find_last_not_of(" \t\r");
            std::string trimmed = line.substr(first, last - first + 1);
            if (trimmed == "[experiment]") {
                configs.emplace_back();
                has_algorithm.push_back(false);
                has_n.push_back(false);
                has_p.push_back(false);
                continue;
            }
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) return fail(line_no, "expected key=value");
            auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                if (b == std::string::npos) return std::string();
                const auto e = s.find_last_not_of(" \t");
                return s.substr(b, e - b + 1);
            };
            const std::string key = strip(trimmed.substr(0, eq));
            const std::string value = strip(trimmed.substr(eq + 1));
            if (key.empty() || value.empty()) return fail(line_no, "expected key=value");
            if (!apply(line_no, key, value)) return false;
        }
        if (configs.empty()) {
            error = "no experiments defined";
            return false;
        }
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const char* missing = !has_algorithm[i] ? "algorithm"
                                  : !has_n[i]       ? "n"
                                  : !has_p[i]       ? "p"
                                                    : nullptr;
            if (missing) {
                error = "experiment " + std::to_string(i) + ": missing required key '" +
                        std::string(missing) + "'";
                return false;
            }
        }
        return true;
    }
};

int run_sweep(const std::string& config_path, const std::string& out_dir, unsigned threads) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return 1;
    }
    SweepParser parser;
    if (!parser.parse(in)) {
        std::cerr << "error: " << config_path << ": " << parser.error << "\n";
        return 1;
    }
    for (std::size_t i = 0; i < parser.configs.size(); ++i) {
        try {
            validate(parser.configs[i]);
        } catch (const std::exception& e) {
            std::cerr << "error: experiment " << i << ": " << e.what() << "\n";
            return 1;
        }
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
        return 1;
    }

    std::string summary_csv{kSummaryCsvHeader};
    summary_csv += '\n';
    for (std::size_t i = 0; i < parser.configs.size(); ++i) {
        const ExperimentConfig& cfg = parser.configs[i];
        const ExperimentResult result = run_experiment(cfg, threads);
        char name[32];
        std::snprintf(name, sizeof name, "experiment_%03zu.csv", i);
        std::string err;
        if (!write_file((fs::path(out_dir) / name).string(),
                        records_to_csv(cfg, result.records), err)) {
            std::cerr << "error: " << err << "\n";
            return 1;
        }
        append_summary_csv_row(summary_csv, cfg, result.summary);
    }
    std::string err;
    if (!write_file((fs::path(out_dir) / "sweep_summary.csv").string(), summary_csv, err)) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"allcast dissemination simulator"};
    app.require_subcommand(1);
    unsigned threads = 0;

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "run one experiment");
    std::string algorithm, format = "csv", out_path;
    ExperimentConfig cfg;
    sim->add_option("--algorithm", algorithm, "r1, r2, or rlnc")->required();
    sim->add_option("--n", cfg.n, "number of nodes")->required();
    sim->add_option("--p", cfg.p, "edge probability")->required();
    auto* beta_opt = sim->add_option("--beta", cfg.beta, "rlnc sparsity parameter (default 8)");
    sim->add_option("--alpha", cfg.alpha, "edge resampling probability (default 0 = static)");
    sim->add_option("--replicates", cfg.replicates, "simulation runs (default 10000)");
    sim->add_option("--seed", cfg.base_seed, "base seed (default 0)");
    sim->add_option("--max-rounds", cfg.max_rounds, "censoring horizon (default from n, p)");
    auto* strict_opt = sim->add_flag("--strict-decoding", cfg.strict_decoding,
                                     "count only coded rows toward rank n");
    auto* paycheck_opt = sim->add_flag("--payload-check", cfg.payload_check,
                                       "verify decoded payloads against the originals");
    sim->add_option("--format", format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--out", out_path, "output path (default stdout)");
    sim->add_option("--threads", threads, "worker threads (default: machine parallelism)");

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "print round bounds for (n, p)");
    std::size_t bounds_n = 0;
    double bounds_p = 0.0, bounds_eps = 0.0;
    bounds->add_option("--n", bounds_n, "number of nodes")->required();
    bounds->add_option("--p", bounds_p, "edge probability")->required();
    bounds->add_option("--epsilon", bounds_eps, "slack factor (default 0)");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "closed-form probability evaluators");
    oracle->require_subcommand(1);
    auto* kernel = oracle->add_subcommand("kernel-prob", "P(R x_k = 0) for the column-law matrix");
    KernelParams kp;
    std::string method = "closed";
    kernel->add_option("--k", kp.k, "ones in the test vector")->required();
    kernel->add_option("--m", kp.m, "matrix rows")->required();
    kernel->add_option("--p", kp.p, "column activation probability")->required();
    kernel->add_option("--pi", kp.pi, "entry probability")->required();
    kernel->add_option("--method", method, "closed, enum, bound-general, bound-smallk")
        ->check(CLI::IsMember({"closed", "enum", "bound-general", "bound-smallk"}));

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "run experiments from a config file");
    std::string config_path, out_dir = ".";
    sweep_cmd->add_option("--config", config_path, "sweep config file")->required();
    sweep_cmd->add_option("--out-dir", out_dir, "output directory (default .)");
    sweep_cmd->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            const auto algo = parse_algorithm(algorithm);
            if (!algo) {
                std::cerr << "error: unknown algorithm '" << algorithm << "'\n";
                return 2;
            }
            cfg.algorithm = *algo;
            if (cfg.algorithm != Algorithm::Rlnc) {
                if (beta_opt->count() > 0) {
                    std::cerr << "error: beta requires rlnc\n";
                    return 2;
                }
                if (strict_opt->count() > 0 || paycheck_opt->count() > 0) {
                    std::cerr << "error: --strict-decoding/--payload-check require rlnc\n";
                    return 2;
                }
            }
            validate(cfg);
            return run_simulate(cfg, format, out_path, resolve_threads(threads));
        }
        if (bounds->parsed()) return run_bounds(bounds_n, bounds_p, bounds_eps);
        if (oracle->parsed()) return run_kernel_prob(kp, method);
        if (sweep_cmd->parsed())
            return run_sweep(config_path, out_dir, resolve_threads(threads));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
