#ifndef PATHPOWER_UTIL_HPP
#define PATHPOWER_UTIL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace pathpower {

// Resolve a worker-count setting: 0 means "use the hardware".
inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Run body(lo, hi) over a partition of [0, count) on `workers` threads.
// Callers must make body writes disjoint; results are then independent of
// the worker count.
template <typename Body>
void parallel_ranges(std::uint64_t count, unsigned workers, Body body) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count < 4096) {
        body(std::uint64_t{0}, count);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = std::uint64_t{w} * chunk;
        std::uint64_t hi = lo + chunk < count ? lo + chunk : count;
        if (lo >= hi) break;
        threads.emplace_back([=] { body(lo, hi); });
    }
    for (auto& th : threads) th.join();
}

// Count the i in [0, count) satisfying pred(i), splitting across workers.
template <typename Pred>
std::uint64_t parallel_count(std::uint64_t count, unsigned workers,
                             Pred pred) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count < 4096) {
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < count; ++i)
            if (pred(i)) ++total;
        return total;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = std::uint64_t{w} * chunk;
        std::uint64_t hi = lo + chunk < count ? lo + chunk : count;
        if (lo >= hi) break;
        threads.emplace_back([=, &partial] {
            std::uint64_t local = 0;
            for (std::uint64_t i = lo; i < hi; ++i)
                if (pred(i)) ++local;
            partial[w] = local;
        });
    }
    for (auto& th : threads) th.join();
    std::uint64_t total = 0;
    for (std::uint64_t part : partial) total += part;
    return total;
}

// FNV-1a over the 8-byte little-endian encodings of a u32 sequence.
inline std::uint64_t fnv1a_digest(const std::vector<std::uint32_t>& values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : values) {
        std::uint64_t x = v;
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (x >> (8 * byte)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace pathpower

#endif
