#ifndef PATHPOWER_AUDIT_HPP
#define PATHPOWER_AUDIT_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pathpower/builder.hpp"
#include "pathpower/extraction.hpp"
#include "pathpower/oracle.hpp"

namespace pathpower {

// Re-derive every certificate claim from raw orientation queries alone:
// block sizes and transitivity, set-theoretic disjointness, complete
// forward orientation between consecutive blocks, sequence structure, the
// path-power definition itself, window bookkeeping, and the length bound.
inline WitnessAudit audit_certificate(const Tournament& t,
                                      const PathPowerCertificate& c) {
    WitnessAudit audit;
    auto add = [&](std::string name, bool pass, std::string detail) {
        audit.lines.push_back({std::move(name), pass, std::move(detail)});
    };
    // a duplicated or identical pair can never be a forward edge; guards
    // below keep degenerate certificates rejectable rather than throwing
    auto forward = [&](Vertex a, Vertex b) {
        return a != b && a < t.size() && b < t.size() && t.beats(a, b);
    };

    std::uint64_t in_range = 0, total_ids = 0;
    for (const auto& b : c.blocks)
        for (Vertex v : b) {
            ++total_ids;
            if (v < t.size()) ++in_range;
        }
    add("vertices-in-range", in_range == total_ids,
        std::to_string(in_range) + "/" + std::to_string(total_ids) +
            " block vertex ids below n");

    std::uint64_t sized = 0;
    for (const auto& b : c.blocks)
        if (b.size() == c.k) ++sized;
    add("blocks-size", sized == c.blocks.size(),
        std::to_string(sized) + "/" + std::to_string(c.blocks.size()) +
            " blocks of size k=" + std::to_string(c.k));

    std::uint64_t transitive = 0;
    for (const auto& b : c.blocks) {
        bool ok = true;
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y)
                if (!forward(b[x], b[y])) ok = false;
        if (ok) ++transitive;
    }
    add("blocks-transitive", transitive == c.blocks.size(),
        std::to_string(transitive) + "/" + std::to_string(c.blocks.size()) +
            " blocks transitive in stored order");

    std::set<Vertex> distinct;
    std::uint64_t block_vertices = 0;
    for (const auto& b : c.blocks) {
        block_vertices += b.size();
        distinct.insert(b.begin(), b.end());
    }
    add("blocks-disjoint", distinct.size() == block_vertices,
        std::to_string(distinct.size()) + " distinct of " +
            std::to_string(block_vertices) + " block vertices");

    std::uint64_t links = 0, links_good = 0;
    for (std::size_t m = 0; m + 1 < c.blocks.size(); ++m)
        for (Vertex a : c.blocks[m])
            for (Vertex b : c.blocks[m + 1]) {
                ++links;
                if (forward(a, b)) ++links_good;
            }
    add("links-forward", links_good == links,
        std::to_string(links_good) + "/" + std::to_string(links) +
            " inter-block edges oriented forward");

    std::vector<Vertex> concat;
    for (const auto& b : c.blocks)
        concat.insert(concat.end(), b.begin(), b.end());
    add("sequence-structure", concat == c.sequence,
        "sequence " + std::string(concat == c.sequence ? "equals" : "differs from") +
            " block concatenation");

    VerifyResult vr = verify_path_power(t, c.sequence, c.k);
    add("power-edges", vr.pass(),
        vr.structural_ok
            ? std::to_string(vr.violations.size()) + " orientation violations"
            : "structural: " + vr.structural_error);

    bool windows_ok = !c.window_starts.empty() &&
                      c.window_starts.size() == c.blocks.size();
    for (std::size_t m = 0; windows_ok && m + 1 < c.window_starts.size(); ++m) {
        std::uint64_t gap = c.window_starts[m + 1] - c.window_starts[m];
        if (c.window_starts[m + 1] <= c.window_starts[m] || gap % c.params.t != 0 ||
            gap / c.params.t >= c.params.W)
            windows_ok = false;
    }
    add("window-steps", windows_ok,
        "window starts strictly increase by multiples of t below W*t");

    LengthBound lb = certificate_length_bound(c);
    add("length-bound", lb.satisfied,
        "length " + std::to_string(lb.length) + " vs bound " +
            std::to_string(lb.bound) +
            (lb.paper_params ? " (certified-instance target)" : " (generalized target)"));

    return audit;
}

}  // namespace pathpower

#endif
