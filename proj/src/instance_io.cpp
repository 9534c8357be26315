#include "hypercolor/instance_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace hypercolor {

namespace {

constexpr const char* kMagic = "hrg-instance v1";

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next(const char* what) {
        std::string line;
        if (!std::getline(in_, line)) {
            throw ParseError(line_ + 1, std::string("unexpected end of file, expected ") + what);
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return line;
    }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') {
            ++pos;
        }
        if (pos > start) {
            fields.push_back(line.substr(start, pos - start));
        }
    }
    return fields;
}

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* name) {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ParseError(line, std::string("invalid ") + name + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> expect_fields(const std::string& line, std::size_t count, std::size_t line_no,
                                            const char* what) {
    auto fields = split(line);
    if (fields.size() != count) {
        throw ParseError(line_no, std::string("expected ") + std::to_string(count) + " fields for " + what
                                      + ", found " + std::to_string(fields.size()));
    }
    return fields;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

void serialize(const HrgGraph& g, std::ostream& out) {
    const auto& p = g.params();
    out << kMagic << '\n';
    out << p.n << ' ' << format_double(p.alpha) << ' ' << format_double(p.C) << ' ' << p.seed << ' '
        << format_double(g.R()) << ' ' << g.size() << '\n';
    for (VertexId u = 0; u < g.size(); ++u) {
        out << u << ' ' << format_double(g.coord(u).r) << ' ' << format_double(g.coord(u).phi) << '\n';
    }
    const auto edges = g.edges();
    out << "edges " << edges.size() << '\n';
    for (const auto& [u, v] : edges) {
        out << u << ' ' << v << '\n';
    }
}

void save_instance(const HrgGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    serialize(g, out);
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

HrgGraph deserialize(std::istream& in, bool validate_geometry) {
    LineReader reader(in);
    if (reader.next("header") != kMagic) {
        throw ParseError(1, std::string("missing header '") + kMagic + "'");
    }

    const auto header = reader.next("parameter line");
    const auto fields = expect_fields(header, 6, reader.line(), "parameter line");
    HrgParams params;
    params.n = parse_field<std::uint64_t>(fields[0], reader.line(), "n");
    params.alpha = parse_field<double>(fields[1], reader.line(), "alpha");
    params.C = parse_field<double>(fields[2], reader.line(), "C");
    params.seed = parse_field<std::uint64_t>(fields[3], reader.line(), "seed");
    const double R = parse_field<double>(fields[4], reader.line(), "R");
    const auto count = parse_field<std::uint64_t>(fields[5], reader.line(), "N");
    if (!(R > 0.0)) {
        throw ParseError(reader.line(), "R must be positive");
    }
    if (count > UINT32_MAX) {
        throw ParseError(reader.line(), "N exceeds 32-bit vertex ids");
    }

    std::vector<PolarPoint> coords(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto line = reader.next("vertex line");
        const auto vf = expect_fields(line, 3, reader.line(), "vertex line");
        const auto id = parse_field<std::uint64_t>(vf[0], reader.line(), "vertex id");
        if (id != i) {
            throw ParseError(reader.line(), "vertex ids must be consecutive, expected " + std::to_string(i));
        }
        const double r = parse_field<double>(vf[1], reader.line(), "r");
        const double phi = parse_field<double>(vf[2], reader.line(), "phi");
        if (!(r >= 0.0) || r > R) {
            throw ParseError(reader.line(), "radius outside [0, R]");
        }
        if (!(phi >= 0.0) || phi >= kTwoPi) {
            throw ParseError(reader.line(), "angle outside [0, 2pi)");
        }
        coords[i] = {r, phi};
    }

    const auto edge_header = reader.next("edge header");
    const auto ef = expect_fields(edge_header, 2, reader.line(), "edge header");
    if (ef[0] != "edges") {
        throw ParseError(reader.line(), "expected 'edges M'");
    }
    const auto m = parse_field<std::uint64_t>(ef[1], reader.line(), "edge count");

    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const auto line = reader.next("edge line");
        const auto f = expect_fields(line, 2, reader.line(), "edge line");
        const auto u = parse_field<std::uint64_t>(f[0], reader.line(), "u");
        const auto v = parse_field<std::uint64_t>(f[1], reader.line(), "v");
        if (u >= v || v >= count) {
            throw ParseError(reader.line(), "edge endpoints must satisfy u < v < N");
        }
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }

    HrgGraph g;
    try {
        g = HrgGraph::from_edges(params, R, std::move(coords), edges);
    } catch (const InvariantViolation& e) {
        throw ParseError(reader.line(), e.what());
    }

    if (validate_geometry) {
        const auto expected = build_adjacency(g.coords(), R);
        for (VertexId u = 0; u < g.size(); ++u) {
            const auto actual = g.neighbours(u);
            if (!std::equal(actual.begin(), actual.end(), expected[u].begin(), expected[u].end())) {
                for (VertexId v = 0; v < g.size(); ++v) {
                    if (v == u) {
                        continue;
                    }
                    const bool should = std::binary_search(expected[u].begin(), expected[u].end(), v);
                    if (should != g.adjacent(u, v)) {
                        throw InvariantViolation("edge " + std::to_string(std::min(u, v)) + "-"
                                                 + std::to_string(std::max(u, v))
                                                 + (should ? " missing although within distance R"
                                                           : " present although farther than R"));
                    }
                }
            }
        }
    }
    return g;
}

HrgGraph load_instance(const std::filesystem::path& path, bool validate_geometry) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return deserialize(in, validate_geometry);
}

} // namespace hypercolor
