#pragma once

#include "hypercolor/hrg.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypercolor {

class PaletteTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Half-open colour range [begin, begin + size).
struct ColourRange {
    std::uint64_t begin = 0;
    std::uint64_t size = 0;

    std::uint64_t end() const { return begin + size; }
    bool contains(std::uint64_t c) const { return c >= begin && c < end(); }
};

struct Partition {
    double epsilon = 0.0;
    double threshold = 0.0;         ///< outer iff r >= (2 - epsilon) ln n
    std::vector<VertexId> outer;    ///< ascending
    std::vector<VertexId> inner;    ///< ascending
    std::vector<bool> is_outer;
    ColourRange inner_palette;      ///< [0, chi_upper)
    ColourRange outer_palette;      ///< ceil(n^{3(1 - alpha)/4}) colours right after the inner range
};

/// Default split parameter (1 - alpha) / 2.
double default_epsilon(double alpha);

/// Throws DomainError unless epsilon lies in (0, 1).
Partition partition(const HrgGraph& g, double epsilon);

/// Induced subgraph with local ids 0..size-1; to_global maps them back.
struct InducedSubgraph {
    HrgGraph graph;
    std::vector<VertexId> to_global;
};

InducedSubgraph induced_subgraph(const HrgGraph& g, std::span<const VertexId> vertices);

struct LinialColouring {
    std::uint64_t q = 0;                 ///< field order
    std::uint32_t degree = 1;            ///< polynomial degree
    std::vector<std::uint64_t> colours;  ///< x * q + p(x), all below q * q
    std::uint64_t colour_space() const { return q * q; }
};

/// Smallest prime >= value.
std::uint64_t next_prime(std::uint64_t value);

/// One round of polynomial colouring. ids[i] is the id of local vertex i; ids must be distinct
/// and below m, otherwise PreconditionError. delta must bound the maximum degree of g.
LinialColouring linial_one_round(const HrgGraph& g, std::span<const std::uint64_t> ids, std::uint64_t m,
                                 std::size_t delta);

/// Exact diameter of the component containing `source`, measured by iterative fringe BFS.
std::size_t component_diameter(const HrgGraph& g, VertexId source);

struct InnerColouring {
    std::vector<std::uint32_t> colours; ///< local ids, 0-based within the inner palette
    std::uint32_t colours_used = 0;
    std::size_t components = 0;
    std::size_t diameter = 0;           ///< largest component diameter
    std::size_t rounds = 0;             ///< simulated gather rounds
    std::vector<VertexId> leaders;      ///< smallest vertex of each component, local ids
};

/// Leader-based gather: every component is collected at its minimum-id vertex, coloured there by
/// degeneracy greedy and the result sent back. Throws PaletteTooSmall when more than
/// palette_size colours are needed.
InnerColouring colour_inner(const HrgGraph& g, std::uint64_t palette_size);

struct DetStats {
    std::size_t rounds = 0;
    std::uint32_t colours_used_inner = 0;
    std::uint64_t colours_used_outer = 0;
    std::uint64_t colours_total = 0;
    std::size_t inner_diameter = 0;
    std::size_t inner_components = 0;
    std::size_t outer_max_degree = 0;
    std::uint64_t linial_q = 0;
};

struct DetResult {
    Partition part;
    std::vector<std::uint64_t> colours;  ///< per vertex, global palette indices
    DetStats stats;
};

/// Outer vertices by one polynomial round on the outer palette, inner vertices by the gather.
/// Throws PaletteTooSmall when either palette is too small for the instance.
DetResult run_deterministic(const HrgGraph& g, double epsilon);

} // namespace hypercolor
