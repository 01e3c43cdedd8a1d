#ifndef PATHPOWER_BUILDER_HPP
#define PATHPOWER_BUILDER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathpower/extraction.hpp"
#include "pathpower/local_search.hpp"
#include "pathpower/ordering.hpp"
#include "pathpower/params.hpp"
#include "pathpower/tournament.hpp"
#include "pathpower/util.hpp"

namespace pathpower {

// How the builder prepares and maintains the vertex ordering:
//   Converge  - run local search to convergence up front (windows are then
//               clean by local optimality)
//   Lazy      - start from the identity and repair only the windows the
//               build visits
//   Passes(m) - m local-search passes up front, plus lazy repairs
struct OrderingStrategy {
    enum class Kind { Converge, Lazy, Passes };
    Kind kind = Kind::Converge;
    std::uint32_t passes = 0;

    static OrderingStrategy converge() { return {}; }
    static OrderingStrategy lazy() { return {Kind::Lazy, 0}; }
    static OrderingStrategy with_passes(std::uint32_t m) {
        return {Kind::Passes, m};
    }
};

inline std::string to_string(const OrderingStrategy& s) {
    switch (s.kind) {
        case OrderingStrategy::Kind::Converge: return "converge";
        case OrderingStrategy::Kind::Lazy: return "lazy";
        case OrderingStrategy::Kind::Passes:
            return "passes=" + std::to_string(s.passes);
    }
    return "?";
}

inline OrderingStrategy parse_strategy(const std::string& s) {
    if (s == "converge") return OrderingStrategy::converge();
    if (s == "lazy") return OrderingStrategy::lazy();
    if (s.rfind("passes=", 0) == 0) {
        std::uint64_t m = detail::parse_decimal(s.substr(7), 1, 8);
        return OrderingStrategy::with_passes(static_cast<std::uint32_t>(m));
    }
    throw std::invalid_argument(
        "strategy must be converge, lazy, or passes=<m>, got \"" + s + "\"");
}

// A machine-checkable record of a built k-th power of a path: disjoint
// transitive k-blocks with every inter-block edge oriented forward, plus
// the window bookkeeping the construction used. Lengths count edges.
struct PathPowerCertificate {
    Vertex n = 0;
    std::uint32_t k = 0;
    LemmaParams params;
    BuildMode mode = BuildMode::Heuristic;
    std::vector<std::vector<Vertex>> blocks;     // X_0 .. X_j
    std::vector<std::uint64_t> window_starts;    // i_0 .. i_j
    std::vector<Vertex> sequence;                // concatenation of blocks
    std::uint64_t ordering_digest = 0;           // checksum of final ordering
    std::optional<std::uint64_t> forward_edges;  // exact count when affordable

    std::uint64_t length() const {
        return sequence.empty() ? 0 : sequence.size() - 1;
    }
};

struct LengthBound {
    std::uint64_t length = 0;
    std::uint64_t bound = 0;   // certified target for these parameters
    bool paper_params = false;
    bool satisfied = false;
};

// length = (j+1)k - 1. For the certified instance the target is
// ceil(n / 2^(6k+7)); otherwise the generalized accounting target
// k * (floor((n - W*t) / ((W-1)t)) + 1) - 1.
inline LengthBound certificate_length_bound(const PathPowerCertificate& c) {
    LengthBound lb;
    lb.length = c.length();
    lb.paper_params = c.params.is_paper_instance();
    if (lb.paper_params) {
        std::uint64_t denom = std::uint64_t{1} << (6 * c.params.k + 7);
        lb.bound = (c.n + denom - 1) / denom;
    } else {
        std::uint64_t wt = std::uint64_t{c.params.W} * c.params.t;
        std::uint64_t steps = (c.n - wt) / ((c.params.W - 1) * c.params.t);
        lb.bound = c.params.k * (steps + 1) - 1;
    }
    lb.satisfied = lb.length >= lb.bound;
    return lb;
}

struct BuildStats {
    std::uint64_t ordering_passes = 0;
    std::uint64_t repairs = 0;
    std::uint64_t steps = 0;  // completed extraction steps (blocks placed)
};

struct BuildFailure {
    std::uint64_t step = 0;  // index of the failing step
    std::string stage;
    std::string detail;
};

struct BuildOutcome {
    std::optional<PathPowerCertificate> certificate;
    std::optional<BuildFailure> failure;
    BuildStats stats;
    bool ok() const { return certificate.has_value(); }
};

struct BuildOptions {
    BuildMode mode = BuildMode::Heuristic;
    OrderingStrategy strategy = OrderingStrategy::converge();
    unsigned workers = 1;
    // full-recount ceiling for the certificate's forward-edge count; above
    // this the field is left empty rather than spending O(n^2) queries
    Vertex forward_count_max_n = 20000;
};

namespace detail {

// Current members of `common` inside the target region of window base i,
// bucketed per window; vertices relocated beyond B by repairs drop out.
inline std::optional<std::pair<std::uint64_t, std::vector<Vertex>>>
reselect_seed(const std::vector<Vertex>& common, const Ordering& ord,
              std::uint64_t i, const LemmaParams& p) {
    const std::uint64_t lo = i + p.t, hi = i + std::uint64_t{p.W} * p.t;
    std::vector<std::uint64_t> counts(p.W - 1, 0);
    for (Vertex v : common) {
        std::uint64_t pos = ord.position_of(v);
        if (pos >= lo && pos < hi) ++counts[(pos - lo) / p.t];
    }
    for (std::uint64_t j = 0; j < counts.size(); ++j) {
        if (counts[j] < p.r) continue;
        std::uint64_t start = lo + j * p.t;
        std::vector<std::pair<std::uint64_t, Vertex>> members;
        for (Vertex v : common) {
            std::uint64_t pos = ord.position_of(v);
            if (pos >= start && pos < start + p.t) members.emplace_back(pos, v);
        }
        std::sort(members.begin(), members.end());
        std::vector<Vertex> seed;
        seed.reserve(p.r);
        for (std::uint64_t idx = 0; idx < p.r; ++idx)
            seed.push_back(members[idx].second);
        return std::make_pair(start, std::move(seed));
    }
    return std::nullopt;
}

}  // namespace detail

// Theorem-style construction: walk windows left to right, at each one pull
// a transitive k-block whose common out-neighbourhood seeds a later window,
// and stop once the window base passes n - W*t, closing with a plain
// transitive k-set. Returns a certificate whose blocks are pairwise
// disjoint, transitive, and fully forward-linked.
inline BuildOutcome build_path_power(const Tournament& t,
                                     const LemmaParams& params,
                                     const BuildOptions& opts = {}) {
    params.validate();
    const std::uint64_t n = t.size();
    const std::uint64_t span = std::uint64_t{params.W} * params.t;
    if (n < span)
        throw std::invalid_argument(
            "build_path_power: n >= W*t required (n = " + std::to_string(n) +
            ", W*t = " + std::to_string(span) + ")");
    if (opts.mode == BuildMode::Guaranteed) {
        CertifyResult cert = certify_params(params);
        if (!cert.guaranteed)
            throw std::invalid_argument(
                "build_path_power: guaranteed mode requires certified "
                "parameters; certify_params rejected " + to_string(params));
    }

    BuildOutcome out;
    Ordering ord = Ordering::identity(t.size());
    if (opts.strategy.kind == OrderingStrategy::Kind::Converge) {
        LocalSearchResult ls = local_search(t, std::move(ord));
        out.stats.ordering_passes = ls.passes;
        ord = std::move(ls.ordering);
    } else if (opts.strategy.kind == OrderingStrategy::Kind::Passes) {
        LocalSearchResult ls = local_search(
            t, std::move(ord), SearchPolicy::passes(opts.strategy.passes));
        out.stats.ordering_passes = ls.passes;
        ord = std::move(ls.ordering);
    }

    const std::uint64_t repair_budget = n * (n - 1) / 2;
    std::vector<bool> pinned(t.size(), false);
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::uint64_t> window_starts;

    auto bump_repairs = [&](std::uint64_t amount) {
        out.stats.repairs += amount;
        if (out.stats.repairs > repair_budget)
            throw std::logic_error(
                "build_path_power: repair budget n(n-1)/2 exceeded; the "
                "monotone forward-count argument forbids this");
    };
    auto fail = [&](std::uint64_t step, std::string stage,
                    std::string detail) -> BuildOutcome {
        if (opts.mode == BuildMode::Guaranteed)
            throw std::logic_error(
                "build_path_power: guaranteed-mode failure at step " +
                std::to_string(step) + ", stage " + stage + ": " + detail);
        out.failure = BuildFailure{step, std::move(stage), std::move(detail)};
        return std::move(out);
    };
    auto assert_unpinned = [&](const std::vector<Vertex>& vs,
                               const char* what) {
        for (Vertex v : vs)
            if (pinned[v])
                throw std::logic_error(
                    std::string("build_path_power: pinned vertex in ") + what);
    };

    // step 0 seed: the first r positions of the cleaned first window
    bump_repairs(
        clean_window(t, ord, 0, params, pinned, opts.workers).repairs);
    std::uint64_t window = 0;
    std::vector<Vertex> seed;
    seed.reserve(params.r);
    for (std::uint64_t p = 0; p < params.r; ++p) seed.push_back(ord.at(p));

    while (true) {
        if (window > n - span) {
            // final block: transitive k-set from the seed, no look-ahead
            auto last = find_transitive(t, seed, params.k);
            if (!last)
                return fail(out.stats.steps, "final-transitive",
                            "no transitive k-subset in the final seed set");
            assert_unpinned(*last, "final block");
            blocks.push_back(std::move(*last));
            window_starts.push_back(window);
            for (Vertex v : blocks.back()) pinned[v] = true;
            ++out.stats.steps;
            break;
        }

        Lemma2Result step =
            lemma2(t, ord, window, seed, params, pinned, opts.mode);
        if (!step.ok())
            return fail(out.stats.steps, to_string(step.failure->stage),
                        step.failure->detail);
        Lemma2Witness& w = *step.witness;
        assert_unpinned(w.block, "block");
        blocks.push_back(w.block);
        window_starts.push_back(window);
        for (Vertex v : w.block) pinned[v] = true;
        ++out.stats.steps;

        if (w.next_window_start > n - span) {
            // the closing window cannot be cleaned (no full B after it) and
            // needs no cleaning; take the witness seed as-is
            window = w.next_window_start;
            seed = std::move(w.next_seed);
            continue;
        }

        // Clean the chosen window, then re-derive the seed from the common
        // set under the post-repair positions. Repairs can evict members,
        // so fall back to the next qualifying window until one survives
        // cleaning; every extra round implies at least one repair, which
        // the budget bounds.
        std::uint64_t next = w.next_window_start;
        while (true) {
            std::uint64_t repairs =
                clean_window(t, ord, next, params, pinned, opts.workers)
                    .repairs;
            bump_repairs(repairs);
            auto pick = detail::reselect_seed(w.common, ord, window, params);
            if (!pick)
                return fail(out.stats.steps, "window-reselect",
                            "window repairs evicted the common "
                            "out-neighbourhood below r in every window");
            if (pick->first == next) {
                window = next;
                seed = std::move(pick->second);
                break;
            }
            if (pick->first > n - span) {
                // the qualifying window slid past the stop line; it will be
                // the closing window, which is never cleaned
                window = pick->first;
                seed = std::move(pick->second);
                break;
            }
            next = pick->first;
        }
        assert_unpinned(seed, "seed");
    }

    PathPowerCertificate cert;
    cert.n = t.size();
    cert.k = params.k;
    cert.params = params;
    cert.mode = opts.mode;
    cert.blocks = std::move(blocks);
    cert.window_starts = std::move(window_starts);
    for (const auto& b : cert.blocks)
        cert.sequence.insert(cert.sequence.end(), b.begin(), b.end());
    cert.ordering_digest = fnv1a_digest(ord.perm());
    if (t.size() <= opts.forward_count_max_n)
        cert.forward_edges = forward_edge_count(t, ord);
    out.certificate = std::move(cert);
    return out;
}

}  // namespace pathpower

#endif
