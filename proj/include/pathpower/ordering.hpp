#ifndef PATHPOWER_ORDERING_HPP
#define PATHPOWER_ORDERING_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathpower/tournament.hpp"
#include "pathpower/trn_io.hpp"

namespace pathpower {

// A permutation of {0,...,n-1} defining the "increasing direction" for
// forward-edge counting. Keeps the inverse in sync: inverse[perm[p]] = p.
class Ordering {
  public:
    static Ordering identity(Vertex n) {
        Ordering o;
        o.perm_.resize(n);
        std::iota(o.perm_.begin(), o.perm_.end(), Vertex{0});
        o.inverse_ = o.perm_;
        return o;
    }

    static Ordering reversed(Vertex n) {
        Ordering o = identity(n);
        std::reverse(o.perm_.begin(), o.perm_.end());
        o.rebuild_inverse();
        return o;
    }

    // Fisher-Yates with splitmix64-driven draws; deterministic in seed.
    static Ordering shuffled(Vertex n, std::uint64_t seed) {
        Ordering o = identity(n);
        std::uint64_t state = seed;
        for (Vertex i = n; i > 1; --i) {
            state = splitmix64(state);
            Vertex j = static_cast<Vertex>(state % i);
            std::swap(o.perm_[i - 1], o.perm_[j]);
        }
        o.rebuild_inverse();
        return o;
    }

    static Ordering from_perm(std::vector<Vertex> perm) {
        Ordering o;
        o.perm_ = std::move(perm);
        o.rebuild_inverse();  // validates bijection
        return o;
    }

    Vertex size() const { return static_cast<Vertex>(perm_.size()); }
    Vertex at(std::uint64_t pos) const { return perm_[pos]; }
    std::uint64_t position_of(Vertex v) const { return inverse_[v]; }
    const std::vector<Vertex>& perm() const { return perm_; }

    // Move the vertex at position `from` to position `to`, shifting the
    // vertices in between by one. O(|to - from|).
    void move_position(std::uint64_t from, std::uint64_t to) {
        if (from >= perm_.size() || to >= perm_.size())
            throw std::invalid_argument("move_position: position out of range");
        if (from == to) return;
        Vertex v = perm_[from];
        if (from < to) {
            for (std::uint64_t p = from; p < to; ++p) {
                perm_[p] = perm_[p + 1];
                inverse_[perm_[p]] = p;
            }
        } else {
            for (std::uint64_t p = from; p > to; --p) {
                perm_[p] = perm_[p - 1];
                inverse_[perm_[p]] = p;
            }
        }
        perm_[to] = v;
        inverse_[v] = to;
    }

    bool operator==(const Ordering& other) const {
        return perm_ == other.perm_;
    }

  private:
    void rebuild_inverse() {
        Vertex n = static_cast<Vertex>(perm_.size());
        inverse_.assign(n, n);
        for (Vertex p = 0; p < n; ++p) {
            Vertex v = perm_[p];
            if (v >= n || inverse_[v] != n)
                throw std::invalid_argument(
                    "Ordering: perm is not a permutation of [0, n)");
            inverse_[v] = p;
        }
    }

    std::vector<Vertex> perm_;
    std::vector<Vertex> inverse_;
};

// Number of pairs p < q whose edge is oriented perm[p] -> perm[q].
inline std::uint64_t forward_edge_count(const Tournament& t,
                                        const Ordering& ord) {
    if (ord.size() != t.size())
        throw std::invalid_argument("forward_edge_count: size mismatch");
    std::uint64_t count = 0;
    for (Vertex p = 0; p + 1 < ord.size(); ++p)
        for (Vertex q = p + 1; q < ord.size(); ++q)
            if (t.beats(ord.at(p), ord.at(q))) ++count;
    return count;
}

// Forward-edge delta of relocating vertex v to position `target` (shifting
// the span in between by one). O(|span|) orientation queries.
inline std::int64_t relocation_gain(const Tournament& t, const Ordering& ord,
                                    Vertex v, std::uint64_t target) {
    if (v >= t.size())
        throw std::invalid_argument("relocation_gain: vertex out of range");
    if (target >= ord.size())
        throw std::invalid_argument("relocation_gain: target out of range");
    std::uint64_t p = ord.position_of(v);
    std::int64_t gain = 0;
    if (target > p) {
        // v jumps over the vertices at (p, target]; for each such u the pair
        // order flips from (v, u) to (u, v)
        for (std::uint64_t q = p + 1; q <= target; ++q)
            gain += t.beats(ord.at(q), v) ? 1 : -1;
    } else {
        for (std::uint64_t q = target; q < p; ++q)
            gain += t.beats(v, ord.at(q)) ? 1 : -1;
    }
    return gain;
}

// ORD text format: "ORD 1", "n=<decimal>", then the permutation as
// space-separated decimals on one line.
inline void write_ordering(const Ordering& ord, std::ostream& out) {
    out << "ORD 1\n";
    out << "n=" << ord.size() << "\n";
    for (Vertex p = 0; p < ord.size(); ++p) {
        if (p) out << ' ';
        out << ord.at(p);
    }
    out << "\n";
}

inline void write_ordering(const Ordering& ord, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_ordering(ord, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Ordering read_ordering(std::istream& in) {
    std::string line;
    if (!detail::getline_strict(in, line))
        throw ParseError("unexpected end of file, expected \"ORD 1\"", 1, 1);
    if (line != "ORD 1") throw ParseError("expected header \"ORD 1\"", 1, 1);
    std::uint64_t n = detail::parse_n_line(in, 2);
    if (!detail::getline_strict(in, line))
        throw ParseError("unexpected end of file, expected permutation", 3, 1);
    std::istringstream iss(line);
    std::vector<Vertex> perm;
    perm.reserve(n);
    std::string tok;
    while (iss >> tok)
        perm.push_back(
            static_cast<Vertex>(detail::parse_decimal(tok, 3, 1)));
    if (perm.size() != n)
        throw ParseError("permutation has " + std::to_string(perm.size()) +
                             " entries, expected " + std::to_string(n),
                         3, 1);
    return Ordering::from_perm(std::move(perm));
}

inline Ordering read_ordering(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_ordering(in);
}

}  // namespace pathpower

#endif
