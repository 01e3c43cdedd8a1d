#ifndef PATHPOWER_ORACLE_HPP
#define PATHPOWER_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pathpower/tournament.hpp"
#include "pathpower/util.hpp"

namespace pathpower {

// ---- definition check -----------------------------------------------------

struct PowerViolation {
    std::uint64_t a, b;  // sequence positions with a reversed edge
};

struct VerifyResult {
    bool structural_ok = true;       // entries distinct and in range
    std::string structural_error;
    std::vector<PowerViolation> violations;
    bool pass() const { return structural_ok && violations.empty(); }
};

// A sequence is the k-th power of a path iff every pair of positions at
// distance <= k is a forward edge. Structural defects (duplicates, range)
// are reported separately from orientation violations.
inline VerifyResult verify_path_power(const Tournament& t,
                                      const std::vector<Vertex>& seq,
                                      std::uint32_t k) {
    VerifyResult res;
    if (k < 1) throw std::invalid_argument("verify_path_power: k must be >= 1");
    std::vector<bool> seen(t.size(), false);
    for (std::uint64_t a = 0; a < seq.size(); ++a) {
        if (seq[a] >= t.size()) {
            res.structural_ok = false;
            res.structural_error = "vertex " + std::to_string(seq[a]) +
                                   " at position " + std::to_string(a) +
                                   " out of range";
            return res;
        }
        if (seen[seq[a]]) {
            res.structural_ok = false;
            res.structural_error = "duplicate vertex " +
                                   std::to_string(seq[a]) + " at position " +
                                   std::to_string(a);
            return res;
        }
        seen[seq[a]] = true;
    }
    for (std::uint64_t a = 0; a + 1 < seq.size(); ++a)
        for (std::uint64_t b = a + 1; b < seq.size() && b <= a + k; ++b)
            if (!t.beats(seq[a], seq[b])) res.violations.push_back({a, b});
    return res;
}

// ---- exhaustive longest-power search ---------------------------------------

struct SearchResult {
    std::uint64_t length = 0;      // edge count of the best sequence found
    std::vector<Vertex> witness;   // length + 1 vertices
    bool exhaustive = false;       // search provably covered all candidates
    std::uint64_t nodes = 0;       // expansions spent
};

namespace detail {

// Extension state: the used-vertex set plus the ordered suffix of the last
// min(k, len) vertices is all that extendability depends on.
struct PowerSearchMemo {
    // key: used-mask | suffix digits base-n above the mask bits
    std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::int32_t>>
        table;  // value: (best remaining edges, best next vertex or -1)
};

class PowerSearch {
  public:
    PowerSearch(const Tournament& t, std::uint32_t k, std::uint64_t budget)
        : t_(t), k_(k), budget_(budget), n_(t.size()) {
        if (n_ > 24)
            throw std::invalid_argument(
                "longest_path_power: exhaustive search supports n <= 24");
        if (k_ > n_) k_ = n_;  // a suffix never exceeds the vertex count
        // memo keys pack the suffix in base n+1 above the used-mask; keep
        // that injective in 64 bits
        double key_bits = n_ + k_ * std::log2(n_ + 1.0);
        if (key_bits > 62)
            throw std::invalid_argument(
                "longest_path_power: n and k too large for exact memo keys");
    }

    SearchResult run() {
        SearchResult res;
        std::vector<Vertex> suffix;
        for (Vertex v = 0; v < n_; ++v) {
            suffix.assign(1, v);
            std::uint32_t len = best_from(std::uint64_t{1} << v, suffix);
            if (exhausted_) break;
            if (res.witness.empty() || len > res.length) {
                res.length = len;
                res.witness = reconstruct(v, len);
            }
        }
        res.exhaustive = !exhausted_;
        res.nodes = nodes_;
        if (res.witness.empty()) res.witness.assign(1, Vertex{0});
        return res;
    }

  private:
    // longest number of edges addable after `suffix` with `used` consumed
    std::uint32_t best_from(std::uint64_t used,
                            const std::vector<Vertex>& suffix) {
        std::uint64_t key = memo_key(used, suffix);
        auto it = memo_.table.find(key);
        if (it != memo_.table.end()) return it->second.first;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return 0;
        }
        std::uint32_t best = 0;
        std::int32_t best_next = -1;
        std::vector<Vertex> next_suffix;
        for (Vertex w = 0; w < n_; ++w) {
            if (used & (std::uint64_t{1} << w)) continue;
            bool ok = true;
            for (Vertex u : suffix)
                if (!t_.beats(u, w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            next_suffix = suffix;
            next_suffix.push_back(w);
            if (next_suffix.size() > k_)
                next_suffix.erase(next_suffix.begin());
            std::uint32_t sub =
                1 + best_from(used | (std::uint64_t{1} << w), next_suffix);
            if (exhausted_) return 0;
            if (sub > best) {
                best = sub;
                best_next = static_cast<std::int32_t>(w);
            }
        }
        memo_.table.emplace(key, std::make_pair(best, best_next));
        return best;
    }

    std::vector<Vertex> reconstruct(Vertex start, std::uint32_t len) {
        std::vector<Vertex> seq{start};
        std::uint64_t used = std::uint64_t{1} << start;
        std::vector<Vertex> suffix{start};
        for (std::uint32_t step = 0; step < len; ++step) {
            auto it = memo_.table.find(memo_key(used, suffix));
            if (it == memo_.table.end() || it->second.second < 0)
                throw std::logic_error(
                    "longest_path_power: witness reconstruction lost its way");
            Vertex w = static_cast<Vertex>(it->second.second);
            seq.push_back(w);
            used |= std::uint64_t{1} << w;
            suffix.push_back(w);
            if (suffix.size() > k_) suffix.erase(suffix.begin());
        }
        return seq;
    }

    std::uint64_t memo_key(std::uint64_t used,
                           const std::vector<Vertex>& suffix) const {
        // zero-pad to exactly k_ digits so short suffixes cannot collide
        // with longer ones (real digits are always >= 1)
        std::uint64_t key = used;
        for (std::size_t i = suffix.size(); i < k_; ++i) key *= n_ + 1;
        for (Vertex u : suffix) key = key * (n_ + 1) + (u + 1);
        return key;
    }

    const Tournament& t_;
    std::uint32_t k_;
    std::uint64_t budget_;
    Vertex n_;
    PowerSearchMemo memo_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace detail

// Depth-first extension search with memoization on (used set, ordered
// last-k suffix). The default budget makes n <= 12, k <= 3 provably
// exhaustive; running out of budget yields exhaustive=false, never a
// silently non-maximal answer flagged as exact.
inline SearchResult longest_path_power(const Tournament& t, std::uint32_t k,
                                       std::uint64_t node_budget = 1ULL << 27) {
    if (k < 1)
        throw std::invalid_argument("longest_path_power: k must be >= 1");
    detail::PowerSearch search(t, k, node_budget);
    return search.run();
}

// ---- exact and sampled ell tables ------------------------------------------

struct EllScope {
    enum class Kind { All, Sampled };
    Kind kind = Kind::All;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    static EllScope all() { return {}; }
    static EllScope sampled(std::uint64_t count, std::uint64_t seed) {
        return {Kind::Sampled, count, seed};
    }
};

struct EllResult {
    std::uint64_t value = 0;      // min over scope of the longest power
    bool exact = false;           // scope=all and every search exhaustive
    Tournament witness;           // a tournament attaining the minimum
    std::uint64_t scanned = 0;    // orientation assignments examined
};

// Exact ell(n, k) by enumerating every orientation assignment (scope=all;
// refuses when 2^C(n,2) would be unreasonable) or an upper estimate from
// seeded random tournaments (scope=sampled). Witness ties break toward the
// smallest orientation bit-vector / first sample.
inline EllResult ell_exact(Vertex n, std::uint32_t k,
                           EllScope scope = EllScope::all(),
                           unsigned workers = 1, Vertex max_exhaustive_n = 6) {
    if (n < 1) throw std::invalid_argument("ell_exact: n must be >= 1");
    if (k < 1) throw std::invalid_argument("ell_exact: k must be >= 1");

    if (scope.kind == EllScope::Kind::All) {
        if (n > max_exhaustive_n) {
            std::uint64_t pairs = std::uint64_t{n} * (n - 1) / 2;
            throw std::invalid_argument(
                "ell_exact: scope=all on n = " + std::to_string(n) +
                " would require 2^" + std::to_string(pairs) +
                " tournaments; raise max_exhaustive_n to force it");
        }
        const std::uint64_t pairs = std::uint64_t{n} * (n - 1) / 2;
        const std::uint64_t total = std::uint64_t{1} << pairs;

        struct Best {
            std::uint64_t value = ~std::uint64_t{0};
            std::uint64_t index = 0;
            bool all_exhaustive = true;
            bool any = false;
        };
        unsigned nworkers = resolve_workers(workers);
        if (nworkers > total) nworkers = static_cast<unsigned>(total);
        std::vector<Best> best(nworkers);
        std::vector<std::thread> threads;
        std::uint64_t chunk = (total + nworkers - 1) / nworkers;
        auto scan = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
            Best b;
            std::vector<bool> bits(pairs);
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                for (std::uint64_t p = 0; p < pairs; ++p)
                    bits[p] = (idx >> p) & 1ULL;
                Tournament t = Tournament::from_pair_bits(n, bits);
                SearchResult s = longest_path_power(t, k);
                if (!s.exhaustive) b.all_exhaustive = false;
                if (!b.any || s.length < b.value) {
                    b.any = true;
                    b.value = s.length;
                    b.index = idx;
                }
            }
            best[w] = b;
        };
        if (nworkers <= 1) {
            scan(0, 0, total);
        } else {
            for (unsigned w = 0; w < nworkers; ++w) {
                std::uint64_t lo = std::uint64_t{w} * chunk;
                std::uint64_t hi = std::min(lo + chunk, total);
                if (lo >= hi) break;
                threads.emplace_back(scan, w, lo, hi);
            }
            for (auto& th : threads) th.join();
        }
        Best combined;
        for (const Best& b : best) {
            if (!b.any) continue;
            // strict < keeps the smallest index on ties (workers are
            // combined in index order)
            if (!combined.any || b.value < combined.value) {
                combined.any = true;
                combined.value = b.value;
                combined.index = b.index;
            }
            combined.all_exhaustive =
                combined.all_exhaustive && b.all_exhaustive;
        }
        std::vector<bool> bits(pairs);
        for (std::uint64_t p = 0; p < pairs; ++p)
            bits[p] = (combined.index >> p) & 1ULL;
        EllResult res{combined.value, combined.all_exhaustive,
                      Tournament::from_pair_bits(n, bits), total};
        return res;
    }

    // sampled: an upper estimate of ell from seeded random tournaments
    EllResult res{~std::uint64_t{0}, false, Tournament::transitive(n), 0};
    bool any = false;
    for (std::uint64_t s = 0; s < scope.samples; ++s) {
        std::uint64_t tseed = splitmix64(scope.seed + s);
        Tournament t = Tournament::random_explicit(n, tseed);
        SearchResult r = longest_path_power(t, k);
        ++res.scanned;
        if (!any || r.length < res.value) {
            any = true;
            res.value = r.length;
            res.witness = t;
        }
    }
    if (!any) {
        res.value = 0;
        res.witness = Tournament::transitive(n);
    }
    return res;
}

}  // namespace pathpower

#endif
