#ifndef PATHPOWER_TESTS_NAIVE_HPP
#define PATHPOWER_TESTS_NAIVE_HPP

// Independent brute-force oracles for the test suite. These deliberately
// share no code with the library search/counting paths they are used to
// check: no memoization, no incremental updates, no bit tricks.

#include <cstdint>
#include <vector>

#include "pathpower/ordering.hpp"
#include "pathpower/tournament.hpp"

namespace pathpower::testing {

inline std::uint64_t naive_extend(const Tournament& t,
                                  std::vector<Vertex>& seq,
                                  std::vector<bool>& used, std::uint32_t k) {
    std::uint64_t best = seq.size() - 1;  // edges of the current sequence
    for (Vertex w = 0; w < t.size(); ++w) {
        if (used[w]) continue;
        bool ok = true;
        std::size_t back = seq.size() > k ? seq.size() - k : 0;
        for (std::size_t i = back; i < seq.size(); ++i)
            if (!t.beats(seq[i], w)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        used[w] = true;
        seq.push_back(w);
        std::uint64_t sub = naive_extend(t, seq, used, k);
        if (sub > best) best = sub;
        seq.pop_back();
        used[w] = false;
    }
    return best;
}

// Longest k-th power of a path by plain enumeration of every extendable
// sequence. Exponential; for n <= 8 or so.
inline std::uint64_t naive_longest_path_power(const Tournament& t,
                                              std::uint32_t k) {
    std::uint64_t best = 0;
    std::vector<bool> used(t.size(), false);
    std::vector<Vertex> seq;
    for (Vertex v = 0; v < t.size(); ++v) {
        used[v] = true;
        seq.assign(1, v);
        std::uint64_t got = naive_extend(t, seq, used, k);
        if (got > best) best = got;
        used[v] = false;
    }
    return best;
}

// Relocation gain by two full recounts on a copy.
inline std::int64_t recount_relocation_gain(const Tournament& t,
                                            const Ordering& ord, Vertex v,
                                            std::uint64_t target) {
    std::uint64_t before = forward_edge_count(t, ord);
    Ordering moved = ord;
    moved.move_position(ord.position_of(v), target);
    std::uint64_t after = forward_edge_count(t, moved);
    return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
}

// Common out-neighbourhood of `dominators` within `candidates`, by direct
// pair queries.
inline std::vector<Vertex> naive_common_out(
    const Tournament& t, const std::vector<Vertex>& dominators,
    const std::vector<Vertex>& candidates) {
    std::vector<Vertex> out;
    for (Vertex y : candidates) {
        bool all = true;
        for (Vertex x : dominators)
            if (!t.beats(x, y)) {
                all = false;
                break;
            }
        if (all) out.push_back(y);
    }
    return out;
}

// True iff every listed vertex beats all later ones, by raw pair checks.
inline bool naive_is_transitive(const Tournament& t,
                                const std::vector<Vertex>& order) {
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            if (!t.beats(order[a], order[b])) return false;
    return true;
}

}  // namespace pathpower::testing

#endif
