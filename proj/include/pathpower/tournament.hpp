#ifndef PATHPOWER_TOURNAMENT_HPP
#define PATHPOWER_TOURNAMENT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathpower {

using Vertex = std::uint32_t;

// SplitMix64 finalizer. Used both as the implicit orientation rule and as a
// general-purpose deterministic mixer (shuffles, digests).
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Implicit orientation rule "splitmix64": for u < v, hash seed^(u*GOLDEN+v)
// through the finalizer; lowest bit 1 means u->v. Bit-exact by contract.
inline bool splitmix64_forward_bit(std::uint64_t seed, Vertex u, Vertex v) {
    std::uint64_t x =
        seed ^ (std::uint64_t{u} * 0x9E3779B97F4A7C15ULL + std::uint64_t{v});
    return (splitmix64(x) & 1ULL) != 0;
}

// A complete orientation of the pairs of {0,...,n-1}. Immutable once built.
// Two backings:
//   - explicit: one bit per unordered pair, upper triangle, row-major
//     (pair (u,v), u<v, bit 1 means u->v)
//   - implicit: orientations computed on demand from a 64-bit seed through
//     the splitmix64 rule; O(1) memory, any n
class Tournament {
  public:
    enum class Backing { Explicit, Implicit };

    static Tournament transitive(Vertex n) {
        Tournament t(n, Backing::Explicit, 0);
        // all bits 1: u->v for u < v
        for (auto& w : t.bits_) w = ~std::uint64_t{0};
        return t;
    }

    // Explicit backing whose pair bits come from the splitmix64 rule, so it
    // agrees pair-for-pair with implicit_random(n, seed).
    static Tournament random_explicit(Vertex n, std::uint64_t seed) {
        Tournament t(n, Backing::Explicit, seed);
        std::uint64_t idx = 0;
        for (Vertex u = 0; u + 1 < n; ++u)
            for (Vertex v = u + 1; v < n; ++v, ++idx)
                if (splitmix64_forward_bit(seed, u, v))
                    t.bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        return t;
    }

    static Tournament implicit_random(Vertex n, std::uint64_t seed) {
        return Tournament(n, Backing::Implicit, seed);
    }

    // Explicit backing from raw pair bits in canonical order
    // (0,1),(0,2),...,(0,n-1),(1,2),...; bit true means low->high.
    static Tournament from_pair_bits(Vertex n, const std::vector<bool>& bits) {
        Tournament t(n, Backing::Explicit, 0);
        if (bits.size() != t.pair_count())
            throw std::invalid_argument("from_pair_bits: wrong bit count");
        for (std::uint64_t i = 0; i < bits.size(); ++i)
            if (bits[i]) t.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
        return t;
    }

    Vertex size() const { return n_; }
    Backing backing() const { return backing_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t pair_count() const {
        return std::uint64_t{n_} * (n_ - 1) / 2;
    }

    // True iff the edge between u and v is oriented u->v.
    bool beats(Vertex u, Vertex v) const {
        check_pair(u, v);
        if (backing_ == Backing::Implicit) {
            return u < v ? splitmix64_forward_bit(seed_, u, v)
                         : !splitmix64_forward_bit(seed_, v, u);
        }
        if (u < v) return pair_bit(u, v);
        return !pair_bit(v, u);
    }

    // Raw upper-triangle bit for u < v (no swap), used by serialization.
    bool forward_bit(Vertex u, Vertex v) const {
        check_pair(u, v);
        if (u >= v) throw std::invalid_argument("forward_bit: need u < v");
        if (backing_ == Backing::Implicit)
            return splitmix64_forward_bit(seed_, u, v);
        return pair_bit(u, v);
    }

    bool same_orientations(const Tournament& other) const {
        if (n_ != other.n_) return false;
        for (Vertex u = 0; u + 1 < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v)
                if (forward_bit(u, v) != other.forward_bit(u, v)) return false;
        return true;
    }

    std::uint64_t out_degree(Vertex v) const {
        check_vertex(v);
        std::uint64_t d = 0;
        for (Vertex u = 0; u < n_; ++u)
            if (u != v && beats(v, u)) ++d;
        return d;
    }

  private:
    Tournament(Vertex n, Backing b, std::uint64_t seed)
        : n_(n), backing_(b), seed_(seed) {
        if (n < 1) throw std::invalid_argument("Tournament: n must be >= 1");
        if (b == Backing::Explicit)
            bits_.assign((pair_count() + 63) / 64, 0);
    }

    void check_vertex(Vertex v) const {
        if (v >= n_)
            throw std::invalid_argument(
                "Tournament: vertex " + std::to_string(v) +
                " out of range [0, " + std::to_string(n_) + ")");
    }

    void check_pair(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw std::invalid_argument(
                "Tournament: orientation of a self-pair is undefined (v=" +
                std::to_string(u) + ")");
    }

    // index of pair (u,v), u<v, in row-major upper-triangle order
    std::uint64_t pair_index(Vertex u, Vertex v) const {
        std::uint64_t nu = n_;
        return std::uint64_t{u} * nu - (std::uint64_t{u} * (u + 1)) / 2 +
               (v - u - 1);
    }

    bool pair_bit(Vertex u, Vertex v) const {
        std::uint64_t idx = pair_index(u, v);
        return (bits_[idx >> 6] >> (idx & 63)) & 1ULL;
    }

    Vertex n_;
    Backing backing_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> bits_;  // empty for implicit backing
};

}  // namespace pathpower

#endif
