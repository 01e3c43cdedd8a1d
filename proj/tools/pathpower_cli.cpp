// Command-line surface for the path-power toolkit: generators, ordering
// runs, certificate construction and verification, exact oracles, parameter
// certification, and batch experiments with structured reports.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathpower/audit.hpp"
#include "pathpower/builder.hpp"
#include "pathpower/cert_io.hpp"
#include "pathpower/experiment.hpp"
#include "pathpower/extraction.hpp"
#include "pathpower/local_search.hpp"
#include "pathpower/oracle.hpp"
#include "pathpower/ordering.hpp"
#include "pathpower/trn_io.hpp"

namespace pp = pathpower;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;  // failed verification / guaranteed trial
constexpr int kExitUsage = 2;    // bad flags, malformed inputs

int cmd_gen(const std::string& kind, std::uint64_t n, std::uint64_t seed,
            const std::string& out_path) {
    if (n < 1 || n > 0xFFFFFFFFULL) {
        std::cerr << "gen: n out of range\n";
        return kExitUsage;
    }
    auto nv = static_cast<pp::Vertex>(n);
    if (kind == "implicit") {
        std::string desc =
            pp::implicit_descriptor(pp::Tournament::implicit_random(nv, seed));
        if (out_path.empty() || out_path == "-") {
            std::cout << desc << "\n";
        } else {
            std::ofstream out(out_path);
            out << desc << "\n";
            if (!out) {
                std::cerr << "gen: write failed: " << out_path << "\n";
                return kExitFailure;
            }
        }
        return 0;
    }
    pp::Tournament t = kind == "transitive"
                           ? pp::Tournament::transitive(nv)
                           : pp::Tournament::random_explicit(nv, seed);
    if (out_path.empty() || out_path == "-") {
        pp::write_tournament(t, std::cout);
    } else {
        pp::write_tournament(t, out_path);
    }
    return 0;
}

int cmd_order(const std::string& in, const std::string& strategy,
              const std::string& init, const std::string& out_path) {
    pp::Tournament t = pp::load_tournament(in);
    pp::Ordering start = pp::Ordering::identity(t.size());
    if (init.rfind("shuffle=", 0) == 0) {
        start = pp::Ordering::shuffled(
            t.size(), pp::detail::parse_decimal(init.substr(8), 1, 9));
    } else if (init == "reversed") {
        start = pp::Ordering::reversed(t.size());
    } else if (init != "identity") {
        std::cerr << "order: --init must be identity, reversed, or "
                     "shuffle=<seed>\n";
        return kExitUsage;
    }
    std::uint64_t before = pp::forward_edge_count(t, start);
    pp::SearchPolicy policy = pp::SearchPolicy::to_convergence();
    if (strategy != "converge") {
        pp::OrderingStrategy s = pp::parse_strategy(strategy);
        if (s.kind != pp::OrderingStrategy::Kind::Passes) {
            std::cerr << "order: --strategy must be converge or passes=<m>\n";
            return kExitUsage;
        }
        policy = pp::SearchPolicy::passes(s.passes);
    }
    pp::LocalSearchResult res = pp::local_search(t, start, policy);
    if (!out_path.empty()) pp::write_ordering(res.ordering, out_path);
    json stats{{"n", t.size()},
               {"forward_edges_before", before},
               {"forward_edges_after", res.forward_edges},
               {"passes", res.passes},
               {"accepted_moves", res.accepted_moves},
               {"converged", res.converged}};
    std::cout << stats.dump() << "\n";
    return 0;
}

pp::LemmaParams resolve_params(std::uint32_t k, std::uint64_t r,
                               std::uint64_t t, std::uint32_t W,
                               bool paper) {
    if (paper) return pp::LemmaParams::paper_instance(k);
    pp::LemmaParams p{k, r, t, W};
    p.validate();
    return p;
}

int cmd_find(const std::string& in, std::uint32_t k, std::uint64_t r,
             std::uint64_t t, std::uint32_t W, bool paper,
             const std::string& mode, const std::string& strategy,
             unsigned workers, const std::string& out_path) {
    pp::Tournament tour = pp::load_tournament(in);
    pp::BuildOptions opts;
    opts.mode = mode == "guaranteed" ? pp::BuildMode::Guaranteed
                                     : pp::BuildMode::Heuristic;
    opts.strategy = pp::parse_strategy(strategy);
    opts.workers = workers;
    pp::LemmaParams params = resolve_params(k, r, t, W, paper);
    pp::BuildOutcome out = pp::build_path_power(tour, params, opts);
    json j{{"n", tour.size()},
           {"k", k},
           {"mode", mode},
           {"strategy", strategy},
           {"ordering_passes", out.stats.ordering_passes},
           {"repairs", out.stats.repairs},
           {"steps", out.stats.steps}};
    if (out.ok()) {
        pp::LengthBound lb = pp::certificate_length_bound(*out.certificate);
        j["success"] = true;
        j["length"] = lb.length;
        j["bound"] = lb.bound;
        j["satisfied"] = lb.satisfied;
        if (!out_path.empty()) {
            pp::write_certificate(*out.certificate, out_path);
            j["certificate"] = out_path;
        }
    } else {
        j["success"] = false;
        j["failing_step"] = out.failure->step;
        j["failing_stage"] = out.failure->stage;
        j["detail"] = out.failure->detail;
    }
    std::cout << j.dump(2) << "\n";
    return 0;  // heuristic non-success is data, not a process failure
}

int cmd_verify(const std::string& in, const std::string& cert_path) {
    pp::Tournament t = pp::load_tournament(in);
    pp::PathPowerCertificate cert = pp::read_certificate(cert_path);
    if (cert.n != t.size()) {
        std::cerr << "verify: certificate n=" << cert.n
                  << " does not match tournament n=" << t.size() << "\n";
        return kExitUsage;
    }
    pp::WitnessAudit audit = pp::audit_certificate(t, cert);
    for (const auto& line : audit.lines)
        std::cout << (line.pass ? "PASS" : "FAIL") << " " << line.name << ": "
                  << line.detail << "\n";
    std::cout << (audit.pass() ? "VERIFIED" : "REJECTED") << " " << cert_path
              << "\n";
    return audit.pass() ? 0 : kExitFailure;
}

int cmd_oracle(const std::string& in, std::uint32_t k, std::uint64_t budget) {
    pp::Tournament t = pp::load_tournament(in);
    pp::SearchResult res = pp::longest_path_power(t, k, budget);
    pp::VerifyResult check = pp::verify_path_power(t, res.witness, k);
    json j{{"n", t.size()},
           {"k", k},
           {"length", res.length},
           {"witness", res.witness},
           {"exhaustive", res.exhaustive},
           {"nodes", res.nodes},
           {"witness_verifies", check.pass()}};
    std::cout << j.dump(2) << "\n";
    return check.pass() ? 0 : kExitFailure;
}

int cmd_ell(std::vector<std::uint64_t> n_values,
            std::vector<std::uint32_t> k_values, const std::string& scope,
            std::uint64_t samples, std::uint64_t seed, unsigned workers,
            std::uint64_t max_exhaustive_n, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (!out_dir.empty()) fs::create_directories(out_dir);
    std::ostringstream csv;
    csv << "n,k,value,exhaustive,witness_trn_path\n";
    for (std::uint64_t n : n_values) {
        for (std::uint32_t k : k_values) {
            pp::EllScope sc = scope == "sampled"
                                  ? pp::EllScope::sampled(samples, seed)
                                  : pp::EllScope::all();
            pp::EllResult res =
                pp::ell_exact(static_cast<pp::Vertex>(n), k, sc, workers,
                              static_cast<pp::Vertex>(max_exhaustive_n));
            std::string witness_path;
            if (!out_dir.empty()) {
                witness_path = (fs::path(out_dir) /
                                ("ell_n" + std::to_string(n) + "_k" +
                                 std::to_string(k) + ".trn"))
                                   .string();
                pp::write_tournament(res.witness, witness_path);
            }
            csv << n << ',' << k << ',' << res.value << ','
                << (res.exact ? 1 : 0) << ',' << witness_path << "\n";
        }
    }
    std::cout << csv.str();
    if (!out_dir.empty()) {
        std::ofstream out(fs::path(out_dir) / "ell.csv");
        out << csv.str();
    }
    return 0;
}

int cmd_certify(std::vector<std::uint32_t> k_values, std::uint64_t r,
                std::uint64_t t, std::uint32_t W, bool paper) {
    std::cout << "k,r,t,W,guaranteed,margin,mu,lhs,rhs,seed_large_enough,"
                 "counting_holds\n";
    for (std::uint32_t k : k_values) {
        pp::LemmaParams p = resolve_params(k, r, t, W, paper);
        pp::CertifyResult res = pp::certify_params(p);
        std::cout << p.k << ',' << p.r << ',' << p.t << ',' << p.W << ','
                  << (res.guaranteed ? 1 : 0) << ',' << res.margin << ','
                  << res.mu << ',' << res.lhs << ',' << res.rhs << ','
                  << (res.seed_large_enough ? 1 : 0) << ','
                  << (res.counting_holds ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir,
                   std::optional<unsigned> workers_override) {
    pp::ExperimentConfig cfg = pp::parse_experiment_config(config_path);
    if (workers_override) cfg.workers = *workers_override;
    pp::ExperimentReport report = pp::run_experiment(cfg, out_dir);
    pp::write_report_files(report, out_dir);
    json summary = pp::report_to_json(report)["summary"];
    std::cout << summary.dump(2) << "\n";
    return report.process_ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tournament path-power toolkit"};
    app.require_subcommand(1);

    // gen
    std::string gen_kind = "random", gen_out;
    std::uint64_t gen_n = 0, gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a tournament");
    gen->add_option("--kind", gen_kind, "transitive | random | implicit")
        ->check(CLI::IsMember({"transitive", "random", "implicit"}));
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--seed", gen_seed, "orientation seed");
    gen->add_option("--out", gen_out, "output path ('-' for stdout)");

    // order
    std::string ord_in, ord_strategy = "converge", ord_init = "identity",
                ord_out;
    auto* order = app.add_subcommand("order", "run the ordering local search");
    order->add_option("--in", ord_in, "TRN path or implicit descriptor")
        ->required();
    order->add_option("--strategy", ord_strategy, "converge | passes=<m>");
    order->add_option("--init", ord_init,
                      "identity | reversed | shuffle=<seed>");
    order->add_option("--out", ord_out, "ORD output path");

    // find
    std::string find_in, find_mode = "heuristic", find_strategy = "converge",
                find_out;
    std::uint32_t find_k = 2, find_W = 100;
    std::uint64_t find_r = 0, find_t = 0;
    bool find_paper = false;
    unsigned find_workers = 0;
    auto* find = app.add_subcommand("find", "build a path-power certificate");
    find->add_option("--in", find_in, "TRN path or implicit descriptor")
        ->required();
    find->add_option("--k", find_k, "block size")->required();
    find->add_option("--r", find_r, "seed-set size");
    find->add_option("--t", find_t, "window width");
    find->add_option("--W", find_W, "window count");
    find->add_flag("--paper-params", find_paper,
                   "use the certified instance r=2^3k, t=2^6k, W=100");
    find->add_option("--mode", find_mode, "guaranteed | heuristic")
        ->check(CLI::IsMember({"guaranteed", "heuristic"}));
    find->add_option("--strategy", find_strategy,
                     "converge | lazy | passes=<m>");
    find->add_option("--workers", find_workers, "scan threads (0 = hardware)");
    find->add_option("--out", find_out, "certificate JSON path");

    // verify
    std::string ver_in, ver_cert;
    auto* verify = app.add_subcommand("verify", "audit a certificate");
    verify->add_option("--in", ver_in, "TRN path or implicit descriptor")
        ->required();
    verify->add_option("--cert", ver_cert, "certificate JSON path")
        ->required();

    // oracle
    std::string ora_in;
    std::uint32_t ora_k = 2;
    std::uint64_t ora_budget = std::uint64_t{1} << 27;
    auto* oracle = app.add_subcommand(
        "oracle", "exhaustive longest path-power search (small n)");
    oracle->add_option("--in", ora_in, "TRN path or implicit descriptor")
        ->required();
    oracle->add_option("--k", ora_k, "power")->required();
    oracle->add_option("--budget", ora_budget, "node expansion budget");

    // ell
    std::vector<std::uint64_t> ell_n;
    std::vector<std::uint32_t> ell_k;
    std::string ell_scope = "all", ell_out;
    std::uint64_t ell_samples = 100, ell_seed = 0, ell_max_n = 6;
    unsigned ell_workers = 0;
    auto* ell = app.add_subcommand("ell", "exact/sampled ell(n,k) table");
    ell->add_option("--n", ell_n, "vertex counts")
        ->required()
        ->delimiter(',');
    ell->add_option("--k", ell_k, "powers")->required()->delimiter(',');
    ell->add_option("--scope", ell_scope, "all | sampled")
        ->check(CLI::IsMember({"all", "sampled"}));
    ell->add_option("--samples", ell_samples, "sample count for scope=sampled");
    ell->add_option("--seed", ell_seed, "sampling seed");
    ell->add_option("--workers", ell_workers, "threads (0 = hardware)");
    ell->add_option("--max-exhaustive-n", ell_max_n,
                    "refusal threshold for scope=all");
    ell->add_option("--out", ell_out, "output directory (csv + witnesses)");

    // certify
    std::vector<std::uint32_t> cert_k;
    std::uint64_t cert_r = 0, cert_t = 0;
    std::uint32_t cert_W = 100;
    bool cert_paper = false;
    auto* certify =
        app.add_subcommand("certify", "check the counting inequality");
    certify->add_option("--k", cert_k, "block sizes")->required()->delimiter(
        ',');
    certify->add_option("--r", cert_r, "seed-set size");
    certify->add_option("--t", cert_t, "window width");
    certify->add_option("--W", cert_W, "window count");
    certify->add_flag("--paper-params", cert_paper,
                      "use the certified instance per k");

    // experiment
    std::string exp_config, exp_out = "experiment-out";
    unsigned exp_workers = 0;
    bool exp_workers_set = false;
    auto* experiment =
        app.add_subcommand("experiment", "run a batch of build trials");
    experiment->add_option("--config", exp_config, "key=value config file")
        ->required();
    experiment->add_option("--out", exp_out, "output directory");
    experiment->add_option("--workers", exp_workers, "trial threads")
        ->each([&](const std::string&) { exp_workers_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_seed, gen_out);
        if (order->parsed())
            return cmd_order(ord_in, ord_strategy, ord_init, ord_out);
        if (find->parsed()) {
            if (!find_paper && (find_r == 0 || find_t == 0)) {
                std::cerr << "find: give --r and --t, or --paper-params\n";
                return kExitUsage;
            }
            return cmd_find(find_in, find_k, find_r, find_t, find_W,
                            find_paper, find_mode, find_strategy, find_workers,
                            find_out);
        }
        if (verify->parsed()) return cmd_verify(ver_in, ver_cert);
        if (oracle->parsed()) return cmd_oracle(ora_in, ora_k, ora_budget);
        if (ell->parsed())
            return cmd_ell(ell_n, ell_k, ell_scope, ell_samples, ell_seed,
                           ell_workers, ell_max_n, ell_out);
        if (certify->parsed()) {
            if (!cert_paper && (cert_r == 0 || cert_t == 0)) {
                std::cerr << "certify: give --r and --t, or --paper-params\n";
                return kExitUsage;
            }
            return cmd_certify(cert_k, cert_r, cert_t, cert_W, cert_paper);
        }
        if (experiment->parsed())
            return cmd_experiment(
                exp_config, exp_out,
                exp_workers_set ? std::optional<unsigned>(exp_workers)
                                : std::nullopt);
    } catch (const pp::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
