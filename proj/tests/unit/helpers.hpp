#pragma once

#include "hypercolor/hrg.hpp"

#include <vector>

namespace testing {

// Graph with the given edges; coordinates are placeholders at radius 1 unless given.
inline hypercolor::HrgGraph graph_from_edges(std::size_t count, const std::vector<hypercolor::Edge>& edges,
                                             std::vector<hypercolor::PolarPoint> coords = {}) {
    if (coords.empty()) {
        coords.assign(count, {1.0, 0.0});
    }
    hypercolor::HrgParams params;
    params.n = count == 0 ? 1 : count;
    params.alpha = 0.75;
    return hypercolor::HrgGraph::from_edges(params, 10.0, std::move(coords), edges);
}

inline hypercolor::HrgGraph path_graph(std::size_t count) {
    std::vector<hypercolor::Edge> edges;
    for (hypercolor::VertexId u = 0; u + 1 < count; ++u) {
        edges.emplace_back(u, u + 1);
    }
    return graph_from_edges(count, edges);
}

inline hypercolor::HrgGraph complete_graph(std::size_t count) {
    std::vector<hypercolor::Edge> edges;
    for (hypercolor::VertexId u = 0; u < count; ++u) {
        for (hypercolor::VertexId v = u + 1; v < count; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return graph_from_edges(count, edges);
}

inline hypercolor::HrgGraph star_graph(std::size_t leaves) {
    std::vector<hypercolor::Edge> edges;
    for (hypercolor::VertexId v = 1; v <= leaves; ++v) {
        edges.emplace_back(0, v);
    }
    return graph_from_edges(leaves + 1, edges);
}

} // namespace testing
