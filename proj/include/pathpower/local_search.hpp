#ifndef PATHPOWER_LOCAL_SEARCH_HPP
#define PATHPOWER_LOCAL_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pathpower/ordering.hpp"
#include "pathpower/params.hpp"
#include "pathpower/tournament.hpp"
#include "pathpower/util.hpp"

namespace pathpower {

// Single-vertex-relocation local search. Each accepted move strictly
// increases the forward-edge count, so runs terminate.
struct SearchPolicy {
    enum class Kind { ToConvergence, MaxPasses };
    Kind kind = Kind::ToConvergence;
    std::uint32_t max_passes = 0;

    static SearchPolicy to_convergence() { return {}; }
    static SearchPolicy passes(std::uint32_t m) {
        return {Kind::MaxPasses, m};
    }
};

struct LocalSearchResult {
    Ordering ordering;
    std::uint64_t passes = 0;
    std::uint64_t accepted_moves = 0;
    std::uint64_t forward_edges = 0;   // exact count after the run
    bool converged = false;            // last pass accepted nothing
};

// One pass: scan positions left to right; for the vertex at each position,
// scan target positions outward by distance (cheapest gain recomputation
// first; smaller position first on ties) and accept the first strictly
// improving relocation. Zero-gain moves are never accepted.
inline std::uint64_t local_search_pass(const Tournament& t, Ordering& ord,
                                       std::uint64_t& accepted) {
    const std::uint64_t n = ord.size();
    std::uint64_t moves = 0;
    for (std::uint64_t p = 0; p < n; ++p) {
        Vertex v = ord.at(p);
        // cumulative gains walking outward from p
        std::int64_t gain_left = 0, gain_right = 0;
        std::uint64_t best_target = p;
        for (std::uint64_t d = 1; d < n; ++d) {
            bool any = false;
            if (d <= p) {
                any = true;
                gain_left += t.beats(v, ord.at(p - d)) ? 1 : -1;
                if (gain_left > 0) {
                    best_target = p - d;
                    break;
                }
            }
            if (p + d < n) {
                any = true;
                gain_right += t.beats(ord.at(p + d), v) ? 1 : -1;
                if (gain_right > 0) {
                    best_target = p + d;
                    break;
                }
            }
            if (!any) break;
        }
        if (best_target != p) {
            ord.move_position(p, best_target);
            ++moves;
            ++accepted;
        }
    }
    return moves;
}

inline LocalSearchResult local_search(const Tournament& t, Ordering ord,
                                      SearchPolicy policy = {}) {
    if (ord.size() != t.size())
        throw std::invalid_argument("local_search: size mismatch");
    LocalSearchResult res;
    std::uint64_t pass_moves = 0;
    while (true) {
        if (policy.kind == SearchPolicy::Kind::MaxPasses &&
            res.passes >= policy.max_passes)
            break;
        pass_moves = local_search_pass(t, ord, res.accepted_moves);
        ++res.passes;
        if (pass_moves == 0) {
            res.converged = true;
            break;
        }
    }
    res.forward_edges = forward_edge_count(t, ord);
    res.ordering = std::move(ord);
    return res;
}

// Vertices of V[i, i+t) with fewer than theta(t, W) out-neighbours in
// B = V[i+t, i+W*t), in position order. Empty means the window is clean.
inline std::vector<Vertex> check_window_degree(const Tournament& t,
                                               const Ordering& ord,
                                               std::uint64_t i,
                                               const LemmaParams& p,
                                               unsigned workers = 1) {
    p.validate();
    const std::uint64_t n = ord.size();
    const std::uint64_t span = p.W * p.t;
    if (span > n || i > n - span)
        throw std::invalid_argument(
            "check_window_degree: window start " + std::to_string(i) +
            " out of range (need i <= n - W*t)");
    const std::uint64_t theta = p.theta();
    const std::uint64_t b_lo = i + p.t, b_hi = i + span;
    std::vector<std::uint64_t> degree(p.t, 0);
    parallel_ranges(p.t, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) {
            Vertex v = ord.at(i + x);
            std::uint64_t d = 0;
            for (std::uint64_t q = b_lo; q < b_hi; ++q)
                if (t.beats(v, ord.at(q))) ++d;
            degree[x] = d;
        }
    });
    std::vector<Vertex> violating;
    for (std::uint64_t x = 0; x < p.t; ++x)
        if (degree[x] < theta) violating.push_back(ord.at(i + x));
    return violating;
}

struct RepairOutcome {
    Vertex moved;              // the relocated vertex
    std::int64_t gain_bound;   // proven lower bound on the count increase
};

namespace detail {

// Relocate the window vertex at position `pos` to the last position of B.
// The gain is at least (W-1)t - 2d - (t-1) > 0 whenever d < theta.
inline RepairOutcome apply_window_repair(Ordering& ord, std::uint64_t i,
                                         const LemmaParams& p,
                                         std::uint64_t pos, std::uint64_t d) {
    Vertex v = ord.at(pos);
    ord.move_position(pos, i + p.W * p.t - 1);
    std::int64_t bound = static_cast<std::int64_t>(p.b_width()) -
                         2 * static_cast<std::int64_t>(d) -
                         static_cast<std::int64_t>(p.t - 1);
    return {v, bound};
}

}  // namespace detail

// If an unpinned vertex of V[i, i+t) violates the window-degree threshold,
// move the lowest-position one to the end of B and report it; otherwise
// leave the ordering unchanged. A pinned violator is a caller bug.
inline std::optional<RepairOutcome> repair_window(
    const Tournament& t, Ordering& ord, std::uint64_t i, const LemmaParams& p,
    const std::vector<bool>& pinned, unsigned workers = 1) {
    p.validate();
    const std::uint64_t n = ord.size();
    const std::uint64_t span = p.W * p.t;
    if (span > n || i > n - span)
        throw std::invalid_argument("repair_window: window start out of range");
    const std::uint64_t theta = p.theta();
    const std::uint64_t b_lo = i + p.t, b_hi = i + span;
    for (std::uint64_t x = 0; x < p.t; ++x) {
        Vertex v = ord.at(i + x);
        std::uint64_t d = parallel_count(
            b_hi - b_lo, workers,
            [&](std::uint64_t q) { return t.beats(v, ord.at(b_lo + q)); });
        if (d < theta) {
            if (!pinned.empty() && pinned[v])
                throw std::logic_error(
                    "repair_window: violating vertex " + std::to_string(v) +
                    " is pinned (builder contract breach)");
            return detail::apply_window_repair(ord, i, p, i + x, d);
        }
    }
    return std::nullopt;
}

struct CleanStats {
    std::uint64_t repairs = 0;
    std::int64_t gain_bound_total = 0;
};

// Repair the window at i to a fixpoint. Equivalent to iterating
// repair_window, but keeps the window degrees incrementally: each repair
// swaps one vertex out of the window (into the end of B) and slides the
// first vertex of B in, so only O(t + Wt) queries are needed per repair
// instead of a full rescan.
inline CleanStats clean_window(const Tournament& t, Ordering& ord,
                               std::uint64_t i, const LemmaParams& p,
                               const std::vector<bool>& pinned,
                               unsigned workers = 1) {
    p.validate();
    const std::uint64_t n = ord.size();
    const std::uint64_t span = p.W * p.t;
    if (span > n || i > n - span)
        throw std::invalid_argument("clean_window: window start out of range");
    const std::uint64_t theta = p.theta();
    const std::uint64_t b_lo = i + p.t, b_hi = i + span;

    // out-degree into B for each window offset
    std::vector<std::uint64_t> degree(p.t, 0);
    parallel_ranges(p.t, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t x = lo; x < hi; ++x) {
            Vertex v = ord.at(i + x);
            std::uint64_t d = 0;
            for (std::uint64_t q = b_lo; q < b_hi; ++q)
                if (t.beats(v, ord.at(q))) ++d;
            degree[x] = d;
        }
    });

    CleanStats stats;
    while (true) {
        std::uint64_t x = 0;
        while (x < p.t && degree[x] >= theta) ++x;
        if (x == p.t) break;
        Vertex v = ord.at(i + x);
        if (!pinned.empty() && pinned[v])
            throw std::logic_error(
                "clean_window: violating vertex " + std::to_string(v) +
                " is pinned (builder contract breach)");
        Vertex incoming = ord.at(b_lo);  // slides into the window
        RepairOutcome out =
            detail::apply_window_repair(ord, i, p, i + x, degree[x]);
        ++stats.repairs;
        stats.gain_bound_total += out.gain_bound;

        // window contents shifted: offsets x..t-2 now hold the old
        // x+1..t-1, and `incoming` sits at offset t-1
        for (std::uint64_t y = x; y + 1 < p.t; ++y) degree[y] = degree[y + 1];
        // B lost `incoming` at its front and gained v at its end; a zero
        // degree implies u did not beat `incoming`, so no underflow
        parallel_ranges(p.t - 1, workers,
                        [&](std::uint64_t lo, std::uint64_t hi) {
                            for (std::uint64_t y = lo; y < hi; ++y) {
                                Vertex u = ord.at(i + y);
                                if (t.beats(u, v)) ++degree[y];
                                if (t.beats(u, incoming)) --degree[y];
                            }
                        });
        degree[p.t - 1] = parallel_count(
            b_hi - b_lo, workers, [&](std::uint64_t q) {
                return t.beats(incoming, ord.at(b_lo + q));
            });
    }
    return stats;
}

}  // namespace pathpower

#endif
