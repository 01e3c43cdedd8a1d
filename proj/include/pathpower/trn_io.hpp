#ifndef PATHPOWER_TRN_IO_HPP
#define PATHPOWER_TRN_IO_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathpower/tournament.hpp"

namespace pathpower {

// Parse failure with 1-based line/column of the offending input.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string what, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + std::move(what)),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

  private:
    int line_;
    int col_;
};

namespace detail {

inline std::uint64_t parse_decimal(const std::string& s, int line, int col) {
    if (s.empty()) throw ParseError("expected a decimal number", line, col);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9')
            throw ParseError("invalid character '" + std::string(1, c) +
                                 "' in decimal number",
                             line, col + static_cast<int>(i));
        std::uint64_t nv = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (nv < v) throw ParseError("number too large", line, col);
        v = nv;
    }
    return v;
}

inline bool getline_strict(std::istream& in, std::string& out) {
    if (!std::getline(in, out)) return false;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
}

inline std::uint64_t parse_n_line(std::istream& in, int line_no) {
    std::string line;
    if (!getline_strict(in, line))
        throw ParseError("unexpected end of file, expected \"n=<decimal>\"",
                         line_no, 1);
    if (line.rfind("n=", 0) != 0)
        throw ParseError("expected \"n=<decimal>\"", line_no, 1);
    return parse_decimal(line.substr(2), line_no, 3);
}

}  // namespace detail

// TRN text format:
//   line 1: "TRN 1"
//   line 2: "n=<decimal>"
//   then n-1 lines; 0-based line i holds n-1-i characters from {0,1},
//   character j encoding pair (i, i+1+j): '1' means i -> i+1+j.
inline void write_tournament(const Tournament& t, std::ostream& out) {
    out << "TRN 1\n";
    out << "n=" << t.size() << "\n";
    std::string row;
    for (Vertex u = 0; u + 1 < t.size(); ++u) {
        row.clear();
        row.reserve(t.size() - u - 1);
        for (Vertex v = u + 1; v < t.size(); ++v)
            row.push_back(t.forward_bit(u, v) ? '1' : '0');
        out << row << "\n";
    }
}

inline void write_tournament(const Tournament& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_tournament(t, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Tournament read_tournament(std::istream& in) {
    std::string line;
    if (!detail::getline_strict(in, line))
        throw ParseError("unexpected end of file, expected \"TRN 1\"", 1, 1);
    if (line != "TRN 1") throw ParseError("expected header \"TRN 1\"", 1, 1);

    std::uint64_t n64 = detail::parse_n_line(in, 2);
    if (n64 < 1) throw ParseError("n must be >= 1", 2, 3);
    if (n64 > 1000000)
        throw ParseError("n too large for an explicit matrix", 2, 3);
    Vertex n = static_cast<Vertex>(n64);

    std::vector<bool> bits;
    bits.reserve(std::uint64_t{n} * (n - 1) / 2);
    for (Vertex u = 0; u + 1 < n; ++u) {
        int line_no = 3 + static_cast<int>(u);
        if (!detail::getline_strict(in, line))
            throw ParseError("unexpected end of file, expected a bit row",
                             line_no, 1);
        std::size_t want = n - 1 - u;
        if (line.size() != want)
            throw ParseError("bit row has " + std::to_string(line.size()) +
                                 " characters, expected " +
                                 std::to_string(want),
                             line_no,
                             static_cast<int>(std::min(line.size(), want)) + 1);
        for (std::size_t j = 0; j < want; ++j) {
            char c = line[j];
            if (c != '0' && c != '1')
                throw ParseError("invalid character '" + std::string(1, c) +
                                     "', expected 0 or 1",
                                 line_no, static_cast<int>(j) + 1);
            bits.push_back(c == '1');
        }
    }
    return Tournament::from_pair_bits(n, bits);
}

inline Tournament read_tournament(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_tournament(in);
}

// Implicit-rule string: "implicit:splitmix64:n=<decimal>:seed=<decimal>".
inline std::string implicit_descriptor(const Tournament& t) {
    if (t.backing() != Tournament::Backing::Implicit)
        throw std::invalid_argument("implicit_descriptor: explicit backing");
    return "implicit:splitmix64:n=" + std::to_string(t.size()) +
           ":seed=" + std::to_string(t.seed());
}

inline bool is_implicit_descriptor(const std::string& s) {
    return s.rfind("implicit:", 0) == 0;
}

inline Tournament parse_implicit_descriptor(const std::string& s) {
    auto fail = [&](const std::string& why, int col) -> ParseError {
        return ParseError("bad implicit descriptor: " + why, 1, col);
    };
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(':', pos);
        parts.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 4 || parts[0] != "implicit")
        throw fail("expected implicit:splitmix64:n=<dec>:seed=<dec>", 1);
    if (parts[1] != "splitmix64")
        throw fail("unknown rule \"" + parts[1] + "\"", 10);
    if (parts[2].rfind("n=", 0) != 0) throw fail("expected n=<decimal>", 1);
    if (parts[3].rfind("seed=", 0) != 0)
        throw fail("expected seed=<decimal>", 1);
    std::uint64_t n = detail::parse_decimal(parts[2].substr(2), 1, 1);
    std::uint64_t seed = detail::parse_decimal(parts[3].substr(5), 1, 1);
    if (n < 1) throw fail("n must be >= 1", 1);
    if (n > 0xFFFFFFFFULL) throw fail("n too large", 1);
    return Tournament::implicit_random(static_cast<Vertex>(n), seed);
}

// Load a tournament from either an implicit descriptor string or a file
// path. Files may hold TRN data or a single descriptor line.
inline Tournament load_tournament(const std::string& spec) {
    if (is_implicit_descriptor(spec)) return parse_implicit_descriptor(spec);
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot open: " + spec);
    std::string first;
    if (!detail::getline_strict(in, first))
        throw ParseError("empty input", 1, 1);
    if (is_implicit_descriptor(first)) return parse_implicit_descriptor(first);
    in.clear();
    in.seekg(0);
    return read_tournament(in);
}

}  // namespace pathpower

#endif
