#pragma once

#include "hypercolor/hrg.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hypercolor {

/// Malformed instance file; what() carries the line number and offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Writes the versioned text format:
///
///     hrg-instance v1
///     n alpha C seed R N
///     id r phi            (N lines, shortest round-trip decimals)
///     edges M
///     u v                 (M lines, u < v)
void serialize(const HrgGraph& g, std::ostream& out);
void save_instance(const HrgGraph& g, const std::filesystem::path& path);

/// Reads the format written by serialize. With validate_geometry set, the edge set is
/// recomputed from the coordinates and any mismatch raises InvariantViolation.
HrgGraph deserialize(std::istream& in, bool validate_geometry = false);
HrgGraph load_instance(const std::filesystem::path& path, bool validate_geometry = false);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

} // namespace hypercolor
