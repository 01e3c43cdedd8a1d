#ifndef PATHPOWER_PARAMS_HPP
#define PATHPOWER_PARAMS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathpower {

// Parameter triple driving the block-extraction machinery: k-vertex blocks
// are pulled from r-vertex seed sets inside width-t windows, scanning one
// source window plus W-1 target windows ahead.
struct LemmaParams {
    std::uint32_t k = 1;  // block size
    std::uint64_t r = 1;  // seed-set size
    std::uint64_t t = 1;  // window width
    std::uint32_t W = 3;  // window count (source + W-1 targets)

    void validate() const {
        if (k < 1) throw std::invalid_argument("LemmaParams: k must be >= 1");
        if (r < k) throw std::invalid_argument("LemmaParams: r must be >= k");
        if (t < r) throw std::invalid_argument("LemmaParams: t must be >= r");
        if (W < 3) throw std::invalid_argument("LemmaParams: W must be >= 3");
        if (t > ~std::uint64_t{0} / W)
            throw std::invalid_argument("LemmaParams: W*t overflows 64 bits");
    }

    // Out-degree threshold a window vertex must meet within the W-1 windows
    // ahead of it: theta = ceil(((W-2)*t + 1) / 2). At W=100 this is 49t+1.
    std::uint64_t theta() const {
        return ((W - 2) * t + 2) / 2;
    }

    // Width of the target region B = V[i+t, i+W*t).
    std::uint64_t b_width() const { return (std::uint64_t{W} - 1) * t; }

    // Per-step requirement on the common out-neighbourhood: (W-1)*r.
    std::uint64_t common_need() const { return (std::uint64_t{W} - 1) * r; }

    // Certified instance: r = 2^(3k), t = 2^(6k), W = 100. Needs k <= 9 so
    // W*t fits in 64 bits.
    static LemmaParams paper_instance(std::uint32_t k) {
        if (k < 1 || k > 9)
            throw std::invalid_argument("paper_instance: k must be in [1, 9]");
        LemmaParams p;
        p.k = k;
        p.r = std::uint64_t{1} << (3 * k);
        p.t = std::uint64_t{1} << (6 * k);
        p.W = 100;
        return p;
    }

    bool is_paper_instance() const {
        return k >= 1 && k <= 9 && W == 100 &&
               r == (std::uint64_t{1} << (3 * k)) &&
               t == (std::uint64_t{1} << (6 * k));
    }

    bool operator==(const LemmaParams&) const = default;
};

inline std::string to_string(const LemmaParams& p) {
    return "{k=" + std::to_string(p.k) + ", r=" + std::to_string(p.r) +
           ", t=" + std::to_string(p.t) + ", W=" + std::to_string(p.W) + "}";
}

}  // namespace pathpower

#endif
