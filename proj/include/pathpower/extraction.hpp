#ifndef PATHPOWER_EXTRACTION_HPP
#define PATHPOWER_EXTRACTION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pathpower/local_search.hpp"
#include "pathpower/ordering.hpp"
#include "pathpower/params.hpp"
#include "pathpower/tournament.hpp"

namespace pathpower {

enum class BuildMode { Guaranteed, Heuristic };

inline const char* to_string(BuildMode m) {
    return m == BuildMode::Guaranteed ? "guaranteed" : "heuristic";
}

// Find m vertices of U that induce a transitive tournament, in dominance
// order (each returned vertex beats all later ones). Greedy pivot-and-halve:
// take the first vertex of the pool, split the rest into its out- and
// in-neighbours, recurse into the larger half. Success is guaranteed for
// |U| >= 2^(m-1); below that the chain may run dry, which is reported as a
// value, not an error.
inline std::optional<std::vector<Vertex>> find_transitive(
    const Tournament& t, std::vector<Vertex> pool, std::uint32_t m) {
    if (m < 1) throw std::invalid_argument("find_transitive: m must be >= 1");
    if (pool.empty())
        throw std::invalid_argument("find_transitive: U must be non-empty");
    std::vector<Vertex> front, back;  // dominance-ordered halves of the result
    while (front.size() + back.size() < m) {
        if (pool.empty()) return std::nullopt;
        Vertex pivot = pool.front();
        std::vector<Vertex> outs, ins;
        for (std::size_t idx = 1; idx < pool.size(); ++idx) {
            Vertex u = pool[idx];
            (t.beats(pivot, u) ? outs : ins).push_back(u);
        }
        if (outs.size() >= ins.size()) {
            front.push_back(pivot);  // pivot beats the whole remaining pool
            pool = std::move(outs);
        } else {
            back.push_back(pivot);  // pivot is beaten by the remaining pool
            pool = std::move(ins);
        }
    }
    // back holds later-chosen vertices first; deeper pivots dominate it
    std::vector<Vertex> result = std::move(front);
    for (auto it = back.rbegin(); it != back.rend(); ++it)
        result.push_back(*it);
    return result;
}

// True iff `order` induces a transitive tournament in dominance order.
inline bool is_transitive_in_order(const Tournament& t,
                                   const std::vector<Vertex>& order) {
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            if (!t.beats(order[a], order[b])) return false;
    return true;
}

enum class SubsetSearch { Exhaustive, Greedy };

struct DominatingSubset {
    std::vector<Vertex> subset;  // k vertices of X', in X' (dominance) order
    std::vector<Vertex> common;  // their common out-neighbours within B
};

// First k-subset of the transitive list X' (lexicographic by X' position)
// whose common out-neighbourhood within B has at least `threshold` members.
// Subsets of a transitive list are transitive, so the result needs no
// re-check. The greedy variant picks one X' vertex at a time, keeping the
// largest surviving neighbourhood; it is for heuristic use when C(|X'|, k)
// is too large to enumerate.
inline std::optional<DominatingSubset> find_dominating_subset(
    const Tournament& t, const std::vector<Vertex>& xprime, std::uint32_t k,
    const std::vector<Vertex>& b_vertices, std::uint64_t threshold,
    SubsetSearch search = SubsetSearch::Exhaustive) {
    const std::size_t m = xprime.size();
    if (k < 1 || m < k)
        throw std::invalid_argument("find_dominating_subset: need |X'| >= k >= 1");

    if (search == SubsetSearch::Greedy) {
        std::vector<Vertex> survivors = b_vertices;
        std::vector<std::size_t> picked;
        std::vector<bool> used(m, false);
        for (std::uint32_t step = 0; step < k; ++step) {
            std::size_t best = m;
            std::uint64_t best_count = 0;
            for (std::size_t c = 0; c < m; ++c) {
                if (used[c]) continue;
                std::uint64_t cnt = 0;
                for (Vertex y : survivors)
                    if (t.beats(xprime[c], y)) ++cnt;
                if (best == m || cnt > best_count) {
                    best = c;
                    best_count = cnt;
                }
            }
            used[best] = true;
            picked.push_back(best);
            std::vector<Vertex> next;
            next.reserve(best_count);
            for (Vertex y : survivors)
                if (t.beats(xprime[best], y)) next.push_back(y);
            survivors = std::move(next);
        }
        if (survivors.size() < threshold) return std::nullopt;
        std::sort(picked.begin(), picked.end());
        DominatingSubset res;
        for (std::size_t c : picked) res.subset.push_back(xprime[c]);
        res.common = std::move(survivors);
        return res;
    }

    // in-neighbourhood of each B vertex among X', as a bitmask over X'
    // positions (|X'| = 3k <= 30 in practice; reject beyond 64)
    if (m > 64)
        throw std::invalid_argument(
            "find_dominating_subset: |X'| > 64 needs the greedy search");
    std::vector<std::uint64_t> in_mask(b_vertices.size());
    for (std::size_t j = 0; j < b_vertices.size(); ++j) {
        std::uint64_t mask = 0;
        for (std::size_t c = 0; c < m; ++c)
            if (t.beats(xprime[c], b_vertices[j])) mask |= std::uint64_t{1} << c;
        in_mask[j] = mask;
    }

    std::vector<std::size_t> comb(k);
    for (std::uint32_t c = 0; c < k; ++c) comb[c] = c;
    while (true) {
        std::uint64_t want = 0;
        for (std::size_t c : comb) want |= std::uint64_t{1} << c;
        std::uint64_t count = 0;
        for (std::uint64_t mask : in_mask)
            if ((mask & want) == want) ++count;
        if (count >= threshold) {
            DominatingSubset res;
            for (std::size_t c : comb) res.subset.push_back(xprime[c]);
            res.common.reserve(count);
            for (std::size_t j = 0; j < b_vertices.size(); ++j)
                if ((in_mask[j] & want) == want)
                    res.common.push_back(b_vertices[j]);
            return res;
        }
        // next combination in lexicographic order
        std::size_t c = k;
        while (c > 0 && comb[c - 1] == m - k + (c - 1)) --c;
        if (c == 0) break;
        ++comb[c - 1];
        for (std::size_t d = c; d < k; ++d) comb[d] = comb[d - 1] + 1;
    }
    return std::nullopt;
}

struct PigeonholeResult {
    std::uint64_t window_start;      // i'
    std::vector<Vertex> seed;        // r lowest-position members in V[i', i'+t)
    std::vector<std::uint64_t> window_counts;  // members per target window
};

// Distribute `common` over the W-1 target windows V[i+jt, i+(j+1)t) and
// return the smallest window start holding at least r members, with the r
// lowest-position members as the next seed set. With |common| >= (W-1)r a
// qualifying window exists by pigeonhole, so reaching the end is a caller
// contract violation.
inline PigeonholeResult pigeonhole_interval(const std::vector<Vertex>& common,
                                            const Ordering& ord,
                                            std::uint64_t i,
                                            const LemmaParams& p) {
    if (common.size() < p.common_need())
        throw std::invalid_argument(
            "pigeonhole_interval: |common| = " + std::to_string(common.size()) +
            " < (W-1)*r = " + std::to_string(p.common_need()));
    const std::uint64_t lo = i + p.t, hi = i + std::uint64_t{p.W} * p.t;
    PigeonholeResult res;
    res.window_counts.assign(p.W - 1, 0);
    for (Vertex v : common) {
        std::uint64_t pos = ord.position_of(v);
        if (pos < lo || pos >= hi)
            throw std::invalid_argument(
                "pigeonhole_interval: common member " + std::to_string(v) +
                " lies outside B");
        ++res.window_counts[(pos - lo) / p.t];
    }
    for (std::uint64_t j = 0; j < res.window_counts.size(); ++j) {
        if (res.window_counts[j] < p.r) continue;
        res.window_start = lo + j * p.t;
        // r members with smallest positions inside the window
        std::vector<std::pair<std::uint64_t, Vertex>> members;
        for (Vertex v : common) {
            std::uint64_t pos = ord.position_of(v);
            if (pos >= res.window_start && pos < res.window_start + p.t)
                members.emplace_back(pos, v);
        }
        std::sort(members.begin(), members.end());
        for (std::uint64_t idx = 0; idx < p.r; ++idx)
            res.seed.push_back(members[idx].second);
        return res;
    }
    throw std::logic_error(
        "pigeonhole_interval: no window reached r despite |common| >= (W-1)r");
}

// The per-step witness: a transitive k-block X, the chosen target window
// start i', and the next seed set U' of r common out-neighbours of X inside
// V[i', i'+t). `common` is the full audit ledger the pigeonhole drew from.
struct Lemma2Witness {
    std::vector<Vertex> block;               // X, dominance order
    std::uint64_t next_window_start = 0;     // i'
    std::vector<Vertex> next_seed;           // U'
    std::vector<Vertex> common;              // all common out-neighbours in B
    std::vector<std::uint64_t> window_counts;
};

enum class Lemma2Stage { Transitive, DominatingSubset, Pigeonhole };

inline const char* to_string(Lemma2Stage s) {
    switch (s) {
        case Lemma2Stage::Transitive: return "transitive";
        case Lemma2Stage::DominatingSubset: return "dominating-subset";
        case Lemma2Stage::Pigeonhole: return "pigeonhole";
    }
    return "?";
}

struct Lemma2Failure {
    Lemma2Stage stage;
    std::string detail;
};

struct Lemma2Result {
    std::optional<Lemma2Witness> witness;
    std::optional<Lemma2Failure> failure;
    bool ok() const { return witness.has_value(); }
};

// One extraction step at window V[i, i+t): pull a transitive list X' from
// the seed set U, find a k-subset of X' with at least (W-1)r common
// out-neighbours in B = V[i+t, i+W*t) (pinned vertices excluded), then
// pigeonhole the neighbourhood into a target window. In guaranteed mode a
// failure with certified parameters and a clean window is impossible, so it
// escalates as a logic error; in heuristic mode it is reported as a value.
inline Lemma2Result lemma2(const Tournament& t, const Ordering& ord,
                           std::uint64_t i, const std::vector<Vertex>& seed,
                           const LemmaParams& p,
                           const std::vector<bool>& pinned, BuildMode mode) {
    p.validate();
    const std::uint64_t n = ord.size();
    const std::uint64_t span = std::uint64_t{p.W} * p.t;
    if (span > n || i > n - span)
        throw std::invalid_argument("lemma2: window start out of range");
    if (seed.size() != p.r)
        throw std::invalid_argument("lemma2: |U| must equal r");
    for (Vertex v : seed) {
        std::uint64_t pos = ord.position_of(v);
        if (pos < i || pos >= i + p.t)
            throw std::invalid_argument("lemma2: U must lie inside V[i, i+t)");
    }

    auto fail = [&](Lemma2Stage stage, std::string detail) -> Lemma2Result {
        if (mode == BuildMode::Guaranteed)
            throw std::logic_error(
                "lemma2: guaranteed-mode failure at stage " +
                std::string(to_string(stage)) + ": " + detail);
        return {std::nullopt, Lemma2Failure{stage, std::move(detail)}};
    };

    // 3k-vertex transitive list when the seed is large enough, else settle
    // for k directly (heuristic regimes with small r); guaranteed mode
    // always asks for 3k, certified parameters make it succeed
    const bool full_extraction =
        mode == BuildMode::Guaranteed ||
        (3 * p.k - 1 < 64 && p.r >= (std::uint64_t{1} << (3 * p.k - 1)));
    const std::uint32_t m = full_extraction ? 3 * p.k : p.k;
    auto xprime = find_transitive(t, seed, m);
    if (!xprime)
        return fail(Lemma2Stage::Transitive,
                    "no transitive " + std::to_string(m) + "-subset in U");

    std::vector<Vertex> b_vertices;
    b_vertices.reserve(span - p.t);
    for (std::uint64_t q = i + p.t; q < i + span; ++q) {
        Vertex v = ord.at(q);
        if (pinned.empty() || !pinned[v]) b_vertices.push_back(v);
    }

    SubsetSearch search = (mode == BuildMode::Heuristic && p.k >= 6)
                              ? SubsetSearch::Greedy
                              : SubsetSearch::Exhaustive;
    auto dom = find_dominating_subset(t, *xprime, p.k, b_vertices,
                                      p.common_need(), search);
    if (!dom)
        return fail(Lemma2Stage::DominatingSubset,
                    "no k-subset of X' has " + std::to_string(p.common_need()) +
                        " common out-neighbours in B");

    PigeonholeResult pig;
    try {
        pig = pigeonhole_interval(dom->common, ord, i, p);
    } catch (const std::logic_error& e) {
        return fail(Lemma2Stage::Pigeonhole, e.what());
    }

    Lemma2Witness w;
    w.block = std::move(dom->subset);
    w.next_window_start = pig.window_start;
    w.next_seed = std::move(pig.seed);
    w.common = std::move(dom->common);
    w.window_counts = std::move(pig.window_counts);
    return {std::move(w), std::nullopt};
}

// ---- parameter certification ------------------------------------------

// Generalized binomial over the reals: product_{i<k} (x - i) / k!. Values
// with x < k-1 can be negative and are used verbatim.
inline double generalized_binomial(double x, std::uint32_t k) {
    if (k > 20)
        throw std::invalid_argument("generalized_binomial: k must be <= 20");
    double num = 1.0;
    for (std::uint32_t i = 0; i < k; ++i) num *= (x - static_cast<double>(i));
    double fact = 1.0;
    for (std::uint32_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return num / fact;
}

// Exact C(n, k) in unsigned 64-bit; safe for the 3k-choose-k values used
// here (k <= 20).
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // multiply first, divide by i afterwards: the running value is a
        // binomial coefficient so the division is exact
        result = result * (n - k + i) / i;
    }
    return result;
}

struct CertifyResult {
    bool guaranteed = false;
    bool seed_large_enough = false;   // r >= 2^(3k-1)
    bool counting_holds = false;      // t*C_gen(mu, k) >= r*C(3k, k)
    double mu = 0.0;                  // average in-degree bound 3k*theta/((W-1)t)
    double lhs = 0.0;                 // t * C_gen(mu, k)
    double rhs = 0.0;                 // r * C(3k, k)
    double margin = 0.0;              // lhs / rhs
};

// Decide whether (k, r, t, W) makes every extraction step succeed on clean
// windows: (a) the seed set always contains a transitive 3k-subset, and
// (b) the counting inequality t*C_gen(mu, k) >= r*C(3k, k) holds, where
// mu = 3k*theta(t, W) / ((W-1)t).
inline CertifyResult certify_params(const LemmaParams& p) {
    p.validate();
    if (p.k > 20)
        throw std::invalid_argument("certify_params: k must be <= 20");
    CertifyResult res;
    res.seed_large_enough =
        3 * p.k - 1 < 64 &&
        p.r >= (std::uint64_t{1} << (3 * p.k - 1));
    res.mu = 3.0 * static_cast<double>(p.k) * static_cast<double>(p.theta()) /
             static_cast<double>(p.b_width());
    res.lhs = static_cast<double>(p.t) * generalized_binomial(res.mu, p.k);
    res.rhs = static_cast<double>(p.r) *
              static_cast<double>(binomial_u64(3 * p.k, p.k));
    res.counting_holds = res.lhs >= res.rhs;
    res.margin = res.lhs / res.rhs;
    res.guaranteed = res.seed_large_enough && res.counting_holds;
    return res;
}

// ---- post-hoc witness audit ---------------------------------------------

struct AuditLine {
    std::string name;
    bool pass;
    std::string detail;
};

struct WitnessAudit {
    std::vector<AuditLine> lines;
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

// Re-derive every claimed property of a step witness from raw orientation
// queries: block size, transitivity in stored order, target window
// membership and alignment, seed size, and the common-out-neighbourhood
// property of every seed member.
inline WitnessAudit audit_witness(const Tournament& t, const Ordering& ord,
                                  std::uint64_t i, const LemmaParams& p,
                                  const Lemma2Witness& w) {
    WitnessAudit audit;
    auto add = [&](std::string name, bool pass, std::string detail) {
        audit.lines.push_back({std::move(name), pass, std::move(detail)});
    };

    add("block-size", w.block.size() == p.k,
        std::to_string(w.block.size()) + " of k=" + std::to_string(p.k));

    std::uint64_t checked = 0, good = 0;
    for (std::size_t a = 0; a < w.block.size(); ++a)
        for (std::size_t b = a + 1; b < w.block.size(); ++b) {
            ++checked;
            if (t.beats(w.block[a], w.block[b])) ++good;
        }
    add("block-transitive", good == checked,
        std::to_string(good) + "/" + std::to_string(checked) +
            " pairs forward in dominance order");

    std::uint64_t lo = i + p.t, hi = i + std::uint64_t{p.W} * p.t;
    bool aligned = w.next_window_start >= lo && w.next_window_start < hi &&
                   (w.next_window_start - lo) % p.t == 0;
    add("window-aligned", aligned,
        "i' = " + std::to_string(w.next_window_start));

    add("seed-size", w.next_seed.size() == p.r,
        std::to_string(w.next_seed.size()) + " of r=" + std::to_string(p.r));

    std::uint64_t inside = 0;
    for (Vertex v : w.next_seed) {
        std::uint64_t pos = ord.position_of(v);
        if (pos >= w.next_window_start && pos < w.next_window_start + p.t)
            ++inside;
    }
    add("seed-in-window", inside == w.next_seed.size(),
        std::to_string(inside) + "/" + std::to_string(w.next_seed.size()) +
            " inside V[i', i'+t)");

    std::uint64_t dominated = 0;
    for (Vertex v : w.next_seed) {
        bool all = true;
        for (Vertex x : w.block)
            if (!t.beats(x, v)) all = false;
        if (all) ++dominated;
    }
    add("seed-common-out", dominated == w.next_seed.size(),
        std::to_string(dominated) + "/" + std::to_string(w.next_seed.size()) +
            " beaten by every block vertex");

    return audit;
}

}  // namespace pathpower

#endif
