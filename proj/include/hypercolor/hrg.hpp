#pragma once

#include "hypercolor/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hypercolor {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters of the threshold hyperbolic random graph G(n, alpha, C).
struct HrgParams {
    std::uint64_t n = 1;    ///< expected vertex count
    double alpha = 0.75;    ///< radial density exponent, power-law exponent is 2 alpha + 1
    double C = 0.0;         ///< radius offset
    std::uint64_t seed = 0;

    double radius() const { return disk_radius(static_cast<double>(n), C); }
    DiskSpec disk() const { return {radius(), alpha}; }
    void validate() const;

    friend bool operator==(const HrgParams&, const HrgParams&) = default;
};

struct GenerateOptions {
    /// Skips the Poisson draw and samples exactly this many vertices.
    std::optional<std::uint64_t> forced_vertex_count;
    /// Upper limit on undirected edges before generation aborts with ResourceError.
    std::uint64_t edge_budget = 100'000'000;
};

/// Immutable sampled graph: coordinates plus sorted CSR adjacency.
class HrgGraph {
public:
    HrgGraph() = default;

    /// Takes per-vertex neighbour lists; throws InvariantViolation unless they are sorted,
    /// symmetric and free of self loops.
    HrgGraph(HrgParams params, double R, std::vector<PolarPoint> coords,
             const std::vector<std::vector<VertexId>>& adjacency);

    /// Builds a graph from an explicit edge list (any order, each edge once). The geometric
    /// adjacency rule is not checked, which makes this the entry point for test doubles.
    static HrgGraph from_edges(HrgParams params, double R, std::vector<PolarPoint> coords,
                               std::span<const Edge> edges);

    const HrgParams& params() const { return params_; }
    double R() const { return R_; }
    std::size_t size() const { return coords_.size(); }
    std::size_t num_edges() const { return targets_.size() / 2; }

    const std::vector<PolarPoint>& coords() const { return coords_; }
    const PolarPoint& coord(VertexId u) const { return coords_.at(u); }

    std::span<const VertexId> neighbours(VertexId u) const;
    std::size_t degree(VertexId u) const;
    bool adjacent(VertexId u, VertexId v) const;

    /// Every edge once as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const HrgGraph&, const HrgGraph&) = default;

private:
    void check_index(VertexId u) const;

    HrgParams params_;
    double R_ = 0.0;
    std::vector<PolarPoint> coords_;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<VertexId> targets_;
};

/// Vertex partition into annuli of width one measured from the boundary.
struct Layering {
    std::vector<int> level_of;
    std::vector<std::vector<VertexId>> members;
    int max_level = -1; ///< largest non-empty level, -1 for the empty graph

    std::size_t count(int level) const {
        return level >= 0 && static_cast<std::size_t>(level) < members.size() ? members[level].size() : 0;
    }
};

/// Level of a radius: l such that R - l - 1 < r <= R - l.
int level_of_radius(double r, double R);

/// Samples G(n, alpha, C); a pure function of params and options.
HrgGraph generate(const HrgParams& params, const GenerateOptions& options = {});

/// Exact threshold adjacency of the given points by an angular band scan.
std::vector<std::vector<VertexId>> build_adjacency(std::span<const PolarPoint> coords, double R,
                                                   std::uint64_t edge_budget = UINT64_MAX);

/// O(N^2) all-pairs construction kept as the oracle for build_adjacency.
std::vector<std::vector<VertexId>> build_adjacency_reference(std::span<const PolarPoint> coords, double R);

Layering build_layering(const HrgGraph& g);

std::size_t degree(const HrgGraph& g, VertexId u);
std::size_t max_degree(const HrgGraph& g);

/// Degree-one neighbours of u.
std::vector<VertexId> leaves_of(const HrgGraph& g, VertexId u);

/// Neighbours whose degree is at least deg(u).
std::vector<VertexId> larger_degree_neighbourhood(const HrgGraph& g, VertexId u);

/// Vertices with radius at most R / 2, ascending by id. Always a clique.
std::vector<VertexId> core(const HrgGraph& g);

} // namespace hypercolor
