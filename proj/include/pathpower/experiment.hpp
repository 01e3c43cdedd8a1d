#ifndef PATHPOWER_EXPERIMENT_HPP
#define PATHPOWER_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "pathpower/audit.hpp"
#include "pathpower/builder.hpp"
#include "pathpower/cert_io.hpp"
#include "pathpower/trn_io.hpp"

namespace pathpower {

// Experiment definitions are flat key=value text files with '#' comments:
//
//   n = 2000, 4000          # tournament sizes
//   k = 2                   # block sizes
//   r = 4
//   t = 16
//   W = 10                  # or: params = paper
//   seeds = 0..9            # or explicit: 0, 3, 17
//   mode = heuristic        # guaranteed | heuristic
//   strategy = lazy         # converge | lazy | passes=<m>
//   source = implicit       # implicit | explicit-random | transitive
//   workers = 2             # optional, 0 = hardware
//
// Trials are the cross product n x k x seeds, run in a deterministic order.
struct ExperimentConfig {
    std::vector<Vertex> n_values;
    std::vector<std::uint32_t> k_values;
    std::optional<std::uint64_t> r, t;
    std::optional<std::uint32_t> W;
    bool paper_params = false;
    std::vector<std::uint64_t> seeds;
    BuildMode mode = BuildMode::Heuristic;
    OrderingStrategy strategy = OrderingStrategy::converge();
    std::string source = "implicit";
    unsigned workers = 1;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& why)
        : std::runtime_error("config field \"" + field + "\": " + why),
          field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

// "0..9" or "1, 2, 5" or "7"
inline std::vector<std::uint64_t> parse_number_list(const std::string& field,
                                                    const std::string& value) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(field, "empty list entry");
        std::size_t dots = item.find("..");
        try {
            if (dots != std::string::npos) {
                std::uint64_t lo = std::stoull(trim(item.substr(0, dots)));
                std::uint64_t hi = std::stoull(trim(item.substr(dots + 2)));
                if (hi < lo) throw ConfigError(field, "descending range");
                for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoull(item));
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError(field, "not a number: \"" + item + "\"");
        } catch (const std::out_of_range&) {
            throw ConfigError(field, "number out of range: \"" + item + "\"");
        }
    }
    return out;
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    bool saw_n = false, saw_k = false, saw_seeds = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no),
                              "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "n") {
            for (std::uint64_t v : detail::parse_number_list(key, value)) {
                if (v < 1 || v > 0xFFFFFFFFULL)
                    throw ConfigError(key, "n out of range");
                cfg.n_values.push_back(static_cast<Vertex>(v));
            }
            saw_n = true;
        } else if (key == "k") {
            for (std::uint64_t v : detail::parse_number_list(key, value))
                cfg.k_values.push_back(static_cast<std::uint32_t>(v));
            saw_k = true;
        } else if (key == "r") {
            cfg.r = detail::parse_number_list(key, value).at(0);
        } else if (key == "t") {
            cfg.t = detail::parse_number_list(key, value).at(0);
        } else if (key == "W") {
            cfg.W = static_cast<std::uint32_t>(
                detail::parse_number_list(key, value).at(0));
        } else if (key == "params") {
            if (value != "paper")
                throw ConfigError(key, "only \"paper\" is recognized");
            cfg.paper_params = true;
        } else if (key == "seeds") {
            cfg.seeds = detail::parse_number_list(key, value);
            saw_seeds = true;
        } else if (key == "mode") {
            if (value == "guaranteed") cfg.mode = BuildMode::Guaranteed;
            else if (value == "heuristic") cfg.mode = BuildMode::Heuristic;
            else throw ConfigError(key, "expected guaranteed or heuristic");
        } else if (key == "strategy") {
            try {
                cfg.strategy = parse_strategy(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "source") {
            if (value != "implicit" && value != "explicit-random" &&
                value != "transitive")
                throw ConfigError(
                    key, "expected implicit, explicit-random, or transitive");
            cfg.source = value;
        } else if (key == "workers") {
            cfg.workers = static_cast<unsigned>(
                detail::parse_number_list(key, value).at(0));
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    if (!saw_n) throw ConfigError("n", "missing");
    if (!saw_k) throw ConfigError("k", "missing");
    if (!saw_seeds) throw ConfigError("seeds", "missing");
    if (!cfg.paper_params && (!cfg.r || !cfg.t || !cfg.W))
        throw ConfigError("r/t/W", "give all three, or params = paper");
    return cfg;
}

inline ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return parse_experiment_config(in);
}

struct TrialRecord {
    Vertex n = 0;
    std::uint32_t k = 0;
    LemmaParams params;
    std::uint64_t seed = 0;
    BuildMode mode = BuildMode::Heuristic;
    std::string strategy;
    bool success = false;
    std::string failing_stage;  // empty when successful
    std::uint64_t length = 0;   // 0 for failed trials
    std::uint64_t bound = 0;
    bool satisfied = false;
    std::uint64_t ordering_passes = 0;
    std::uint64_t repairs = 0;
    std::string certificate_path;  // empty when no certificate was written
    bool certificate_verified = false;
    double wall_ms = 0.0;  // quarantined to the metadata file
};

struct ExperimentReport {
    std::vector<TrialRecord> records;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t verification_failures = 0;
    std::uint64_t guaranteed_failures = 0;
    std::uint64_t length_min = 0, length_median = 0, length_max = 0;

    // exit policy: verification failures and guaranteed-mode failures are
    // process failures; heuristic non-success is data
    bool process_ok() const {
        return verification_failures == 0 && guaranteed_failures == 0;
    }
};

namespace detail {

inline LemmaParams trial_params(const ExperimentConfig& cfg,
                                std::uint32_t k) {
    if (cfg.paper_params) return LemmaParams::paper_instance(k);
    LemmaParams p{k, *cfg.r, *cfg.t, *cfg.W};
    p.validate();
    return p;
}

inline Tournament trial_tournament(const ExperimentConfig& cfg, Vertex n,
                                   std::uint64_t seed) {
    if (cfg.source == "implicit") return Tournament::implicit_random(n, seed);
    if (cfg.source == "explicit-random")
        return Tournament::random_explicit(n, seed);
    return Tournament::transitive(n);
}

}  // namespace detail

// Validate every planned trial's preconditions up front, so a bad config is
// refused before any work starts.
inline void validate_experiment(const ExperimentConfig& cfg) {
    for (std::uint32_t k : cfg.k_values) {
        LemmaParams p = detail::trial_params(cfg, k);
        std::uint64_t span = std::uint64_t{p.W} * p.t;
        for (Vertex n : cfg.n_values)
            if (n < span)
                throw ConfigError(
                    "n", "n = " + std::to_string(n) +
                             " violates the n >= W*t precondition (W*t = " +
                             std::to_string(span) + ")");
        if (cfg.mode == BuildMode::Guaranteed &&
            !certify_params(p).guaranteed)
            throw ConfigError("mode",
                              "guaranteed mode requires certified "
                              "parameters; certify_params rejected " +
                                  to_string(p));
    }
}

// Run all trials (n x k x seeds), writing one certificate file per
// successful trial into out_dir. Trials run concurrently up to
// cfg.workers; records land in deterministic (planning) order.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       const std::string& out_dir) {
    validate_experiment(cfg);
    std::filesystem::create_directories(out_dir);

    struct Plan {
        Vertex n;
        std::uint32_t k;
        std::uint64_t seed;
    };
    std::vector<Plan> plans;
    for (Vertex n : cfg.n_values)
        for (std::uint32_t k : cfg.k_values)
            for (std::uint64_t seed : cfg.seeds) plans.push_back({n, k, seed});

    ExperimentReport report;
    report.records.resize(plans.size());
    report.trials = plans.size();

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        while (true) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= plans.size()) return;
            const Plan& plan = plans[idx];
            TrialRecord rec;
            rec.n = plan.n;
            rec.k = plan.k;
            rec.params = detail::trial_params(cfg, plan.k);
            rec.seed = plan.seed;
            rec.mode = cfg.mode;
            rec.strategy = to_string(cfg.strategy);

            auto start = std::chrono::steady_clock::now();
            Tournament t = detail::trial_tournament(cfg, plan.n, plan.seed);
            BuildOptions opts;
            opts.mode = cfg.mode;
            opts.strategy = cfg.strategy;
            opts.workers = 1;  // parallelism lives at the trial level
            BuildOutcome out;
            try {
                out = build_path_power(t, rec.params, opts);
            } catch (const std::logic_error&) {
                // guaranteed-mode step failure
                rec.success = false;
                rec.failing_stage = "internal-contract";
                rec.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                report.records[idx] = rec;
                continue;
            }
            rec.ordering_passes = out.stats.ordering_passes;
            rec.repairs = out.stats.repairs;
            if (out.ok()) {
                rec.success = true;
                const PathPowerCertificate& cert = *out.certificate;
                LengthBound lb = certificate_length_bound(cert);
                rec.length = lb.length;
                rec.bound = lb.bound;
                rec.satisfied = lb.satisfied;
                std::string name = "cert_n" + std::to_string(plan.n) + "_k" +
                                   std::to_string(plan.k) + "_s" +
                                   std::to_string(plan.seed) + ".json";
                rec.certificate_path = name;
                write_certificate(cert,
                                  (std::filesystem::path(out_dir) / name)
                                      .string());
                rec.certificate_verified = audit_certificate(t, cert).pass();
            } else {
                rec.success = false;
                rec.failing_stage = out.failure->stage;
            }
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            report.records[idx] = rec;
        }
    };

    unsigned nworkers = resolve_workers(cfg.workers);
    if (nworkers <= 1 || plans.size() <= 1) {
        worker();
    } else {
        std::size_t pool_size =
            std::min<std::size_t>(nworkers, plans.size());
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < pool_size; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> lengths;
    for (const TrialRecord& rec : report.records) {
        if (rec.success) {
            ++report.successes;
            lengths.push_back(rec.length);
            if (!rec.certificate_verified) ++report.verification_failures;
        } else if (rec.mode == BuildMode::Guaranteed) {
            ++report.guaranteed_failures;
        }
    }
    if (!lengths.empty()) {
        std::sort(lengths.begin(), lengths.end());
        report.length_min = lengths.front();
        report.length_max = lengths.back();
        report.length_median = lengths[lengths.size() / 2];
    }
    return report;
}

// ---- report files -----------------------------------------------------

// report.json + report.csv are byte-identical across reruns of the same
// config; wall-clock times live in report.meta.json only.
inline nlohmann::json report_to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const TrialRecord& rec : r.records) {
        nlohmann::json jr;
        jr["n"] = rec.n;
        jr["k"] = rec.k;
        jr["params"] = {{"r", rec.params.r},
                        {"t", rec.params.t},
                        {"W", rec.params.W}};
        jr["seed"] = rec.seed;
        jr["mode"] = to_string(rec.mode);
        jr["strategy"] = rec.strategy;
        jr["success"] = rec.success;
        jr["failing_stage"] = rec.failing_stage;
        jr["length"] = rec.length;
        jr["bound"] = rec.bound;
        jr["satisfied"] = rec.satisfied;
        jr["ordering_passes"] = rec.ordering_passes;
        jr["repairs"] = rec.repairs;
        jr["certificate"] = rec.certificate_path;
        jr["certificate_verified"] = rec.certificate_verified;
        j["records"].push_back(std::move(jr));
    }
    j["summary"] = {{"trials", r.trials},
                    {"successes", r.successes},
                    {"success_rate",
                     r.trials == 0 ? 0.0
                                   : static_cast<double>(r.successes) /
                                         static_cast<double>(r.trials)},
                    {"verification_failures", r.verification_failures},
                    {"guaranteed_failures", r.guaranteed_failures},
                    {"length_min", r.length_min},
                    {"length_median", r.length_median},
                    {"length_max", r.length_max}};
    return j;
}

inline std::string report_to_csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "n,k,r,t,W,seed,mode,strategy,success,failing_stage,length,bound,"
           "satisfied,ordering_passes,repairs,certificate\n";
    for (const TrialRecord& rec : r.records) {
        out << rec.n << ',' << rec.k << ',' << rec.params.r << ','
            << rec.params.t << ',' << rec.params.W << ',' << rec.seed << ','
            << to_string(rec.mode) << ',' << rec.strategy << ','
            << (rec.success ? 1 : 0) << ',' << rec.failing_stage << ','
            << rec.length << ',' << rec.bound << ',' << (rec.satisfied ? 1 : 0)
            << ',' << rec.ordering_passes << ',' << rec.repairs << ','
            << rec.certificate_path << "\n";
    }
    return out.str();
}

inline nlohmann::json report_metadata_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["wall_ms"] = nlohmann::json::array();
    for (const TrialRecord& rec : r.records) j["wall_ms"].push_back(rec.wall_ms);
    return j;
}

inline void write_report_files(const ExperimentReport& r,
                               const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "report.json");
        out << report_to_json(r).dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(out_dir) / "report.csv");
        out << report_to_csv(r);
    }
    {
        std::ofstream out(fs::path(out_dir) / "report.meta.json");
        out << report_metadata_json(r).dump(2) << "\n";
    }
}

}  // namespace pathpower

#endif
