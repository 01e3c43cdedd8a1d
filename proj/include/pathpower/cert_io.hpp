#ifndef PATHPOWER_CERT_IO_HPP
#define PATHPOWER_CERT_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pathpower/builder.hpp"

namespace pathpower {

// Certificate JSON schema: n, k, params{r,t,W}, mode, window_starts,
// blocks, sequence, ordering_digest, length, paper_bound, satisfied.
inline nlohmann::json certificate_to_json(const PathPowerCertificate& c) {
    LengthBound lb = certificate_length_bound(c);
    nlohmann::json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["params"] = {{"r", c.params.r}, {"t", c.params.t}, {"W", c.params.W}};
    j["mode"] = to_string(c.mode);
    j["window_starts"] = c.window_starts;
    j["blocks"] = c.blocks;
    j["sequence"] = c.sequence;
    j["ordering_digest"] = c.ordering_digest;
    j["length"] = lb.length;
    j["paper_bound"] = lb.bound;
    j["satisfied"] = lb.satisfied;
    return j;
}

inline PathPowerCertificate certificate_from_json(const nlohmann::json& j) {
    PathPowerCertificate c;
    c.n = j.at("n").get<Vertex>();
    c.k = j.at("k").get<std::uint32_t>();
    c.params.k = c.k;
    c.params.r = j.at("params").at("r").get<std::uint64_t>();
    c.params.t = j.at("params").at("t").get<std::uint64_t>();
    c.params.W = j.at("params").at("W").get<std::uint32_t>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "guaranteed") {
        c.mode = BuildMode::Guaranteed;
    } else if (mode == "heuristic") {
        c.mode = BuildMode::Heuristic;
    } else {
        throw std::invalid_argument("certificate: unknown mode \"" + mode +
                                    "\"");
    }
    c.window_starts = j.at("window_starts").get<std::vector<std::uint64_t>>();
    c.blocks = j.at("blocks").get<std::vector<std::vector<Vertex>>>();
    c.sequence = j.at("sequence").get<std::vector<Vertex>>();
    c.ordering_digest = j.at("ordering_digest").get<std::uint64_t>();
    return c;
}

inline void write_certificate(const PathPowerCertificate& c,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << certificate_to_json(c).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline PathPowerCertificate read_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return certificate_from_json(j);
}

}  // namespace pathpower

#endif
