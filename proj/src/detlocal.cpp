#include "hypercolor/detlocal.hpp"

#include "hypercolor/structure.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_set>

namespace hypercolor {

namespace {

std::vector<std::size_t> bfs_distances(const HrgGraph& g, VertexId source, std::vector<VertexId>* order = nullptr) {
    constexpr auto kUnseen = SIZE_MAX;
    std::vector<std::size_t> dist(g.size(), kUnseen);
    std::queue<VertexId> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const VertexId u = frontier.front();
        frontier.pop();
        if (order) {
            order->push_back(u);
        }
        for (const VertexId v : g.neighbours(u)) {
            if (dist[v] == kUnseen) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return dist;
}

std::size_t eccentricity(const HrgGraph& g, VertexId source) {
    std::size_t ecc = 0;
    for (const auto d : bfs_distances(g, source)) {
        if (d != SIZE_MAX) {
            ecc = std::max(ecc, d);
        }
    }
    return ecc;
}

std::uint64_t ceil_sqrt(std::uint64_t m) {
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
    while (s * s > m) {
        --s;
    }
    while (s * s < m) {
        ++s;
    }
    return s;
}

bool is_prime(std::uint64_t v) {
    if (v < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

double default_epsilon(double alpha) {
    return (1.0 - alpha) / 2.0;
}

Partition partition(const HrgGraph& g, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1)");
    }
    const double n = static_cast<double>(g.params().n);
    const double alpha = g.params().alpha;

    Partition part;
    part.epsilon = epsilon;
    part.threshold = (2.0 - epsilon) * std::log(n);
    part.is_outer.assign(g.size(), false);
    for (VertexId u = 0; u < g.size(); ++u) {
        if (g.coord(u).r >= part.threshold) {
            part.is_outer[u] = true;
            part.outer.push_back(u);
        } else {
            part.inner.push_back(u);
        }
    }

    const auto chi_upper = estimate_chromatic(g).upper;
    part.inner_palette = {0, chi_upper};
    part.outer_palette = {chi_upper, static_cast<std::uint64_t>(std::ceil(std::pow(n, 3.0 * (1.0 - alpha) / 4.0)))};
    return part;
}

InducedSubgraph induced_subgraph(const HrgGraph& g, std::span<const VertexId> vertices) {
    InducedSubgraph sub;
    sub.to_global.assign(vertices.begin(), vertices.end());
    std::sort(sub.to_global.begin(), sub.to_global.end());
    sub.to_global.erase(std::unique(sub.to_global.begin(), sub.to_global.end()), sub.to_global.end());

    const auto& members = sub.to_global;
    std::vector<PolarPoint> coords;
    coords.reserve(members.size());
    for (const VertexId u : members) {
        coords.push_back(g.coord(u));
    }
    std::vector<std::vector<VertexId>> adjacency(members.size());
    for (VertexId i = 0; i < members.size(); ++i) {
        for (const VertexId v : g.neighbours(members[i])) {
            const auto it = std::lower_bound(members.begin(), members.end(), v);
            if (it != members.end() && *it == v) {
                adjacency[i].push_back(static_cast<VertexId>(it - members.begin()));
            }
        }
    }
    sub.graph = HrgGraph(g.params(), g.R(), std::move(coords), adjacency);
    return sub;
}

std::uint64_t next_prime(std::uint64_t value) {
    while (!is_prime(value)) {
        ++value;
    }
    return value;
}

LinialColouring linial_one_round(const HrgGraph& g, std::span<const std::uint64_t> ids, std::uint64_t m,
                                 std::size_t delta) {
    if (ids.size() != g.size()) {
        throw PreconditionError("one id per vertex required");
    }
    if (m == 0 && !ids.empty()) {
        throw PreconditionError("id space is empty");
    }
    std::unordered_set<std::uint64_t> seen;
    for (const auto id : ids) {
        if (id >= m) {
            throw PreconditionError("id " + std::to_string(id) + " outside [0, " + std::to_string(m) + ")");
        }
        if (!seen.insert(id).second) {
            throw PreconditionError("duplicate id " + std::to_string(id));
        }
    }
    if (max_degree(g) > delta) {
        throw PreconditionError("delta is below the maximum degree");
    }

    LinialColouring result;
    result.q = next_prime(std::max<std::uint64_t>(delta + 1, ceil_sqrt(m)));
    const auto q = result.q;
    const auto eval = [&](std::uint64_t id, std::uint64_t x) { return (id % q + (id / q) * x) % q; };

    result.colours.resize(g.size());
    for (VertexId u = 0; u < g.size(); ++u) {
        bool found = false;
        for (std::uint64_t x = 0; x < q && !found; ++x) {
            const auto value = eval(ids[u], x);
            const auto nbrs = g.neighbours(u);
            found = std::none_of(nbrs.begin(), nbrs.end(), [&](VertexId v) { return eval(ids[v], x) == value; });
            if (found) {
                result.colours[u] = x * q + value;
            }
        }
        if (!found) {
            throw std::logic_error("no separating evaluation point");
        }
    }
    return result;
}

std::size_t component_diameter(const HrgGraph& g, VertexId source) {
    std::vector<VertexId> members;
    bfs_distances(g, source, &members);
    const VertexId start = *std::max_element(members.begin(), members.end(), [&](VertexId a, VertexId b) {
        return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a > b);
    });

    const auto dist = bfs_distances(g, start);
    std::size_t depth = 0;
    for (const VertexId v : members) {
        depth = std::max(depth, dist[v]);
    }
    std::vector<std::vector<VertexId>> fringe(depth + 1);
    for (const VertexId v : members) {
        fringe[dist[v]].push_back(v);
    }

    // Every vertex above level i has eccentricity at most 2i relative to the start vertex.
    std::size_t lower = depth;
    for (std::size_t i = depth; i > 0; --i) {
        for (const VertexId v : fringe[i]) {
            lower = std::max(lower, eccentricity(g, v));
        }
        if (lower > 2 * (i - 1)) {
            return lower;
        }
    }
    return lower;
}

InnerColouring colour_inner(const HrgGraph& g, std::uint64_t palette_size) {
    InnerColouring result;
    result.colours.assign(g.size(), 0);
    std::vector<bool> done(g.size(), false);
    for (VertexId leader = 0; leader < g.size(); ++leader) {
        if (done[leader]) {
            continue;
        }
        std::vector<VertexId> members{leader};
        done[leader] = true;
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (const VertexId v : g.neighbours(members[head])) {
                if (!done[v]) {
                    done[v] = true;
                    members.push_back(v);
                }
            }
        }
        result.leaders.push_back(leader);
        ++result.components;
        const auto component = induced_subgraph(g, members);
        result.diameter = std::max(result.diameter, component_diameter(component.graph, 0));
        const auto colours = degeneracy_greedy_colouring(component.graph);
        for (VertexId i = 0; i < colours.size(); ++i) {
            result.colours[component.to_global[i]] = colours[i];
            result.colours_used = std::max(result.colours_used, colours[i] + 1);
        }
    }
    if (result.colours_used > palette_size) {
        throw PaletteTooSmall("inner palette holds " + std::to_string(palette_size) + " colours, greedy needs "
                              + std::to_string(result.colours_used));
    }
    // Flooding for diam rounds shows every vertex its whole component; one more round confirms it.
    result.rounds = g.size() == 0 ? 0 : result.diameter + 1;
    return result;
}

DetResult run_deterministic(const HrgGraph& g, double epsilon) {
    DetResult result;
    result.part = partition(g, epsilon);
    const auto& part = result.part;

    const auto outer = induced_subgraph(g, part.outer);
    result.stats.outer_max_degree = max_degree(outer.graph);
    const std::vector<std::uint64_t> ids(outer.to_global.begin(), outer.to_global.end());
    const auto linial = linial_one_round(outer.graph, ids, std::max<std::uint64_t>(g.size(), 1),
                                         result.stats.outer_max_degree);
    result.stats.linial_q = linial.q;
    if (!part.outer.empty() && linial.colour_space() > part.outer_palette.size) {
        throw PaletteTooSmall("outer palette holds " + std::to_string(part.outer_palette.size)
                              + " colours, the polynomial round needs " + std::to_string(linial.colour_space()));
    }

    const auto inner = induced_subgraph(g, part.inner);
    const auto inner_colours = colour_inner(inner.graph, part.inner_palette.size);
    result.stats.inner_diameter = inner_colours.diameter;
    result.stats.inner_components = inner_colours.components;
    result.stats.colours_used_inner = inner_colours.colours_used;
    result.stats.rounds = 1 + inner_colours.rounds;

    result.colours.assign(g.size(), 0);
    std::vector<std::uint64_t> outer_used;
    for (VertexId i = 0; i < outer.to_global.size(); ++i) {
        result.colours[outer.to_global[i]] = part.outer_palette.begin + linial.colours[i];
        outer_used.push_back(linial.colours[i]);
    }
    for (VertexId i = 0; i < inner.to_global.size(); ++i) {
        result.colours[inner.to_global[i]] = part.inner_palette.begin + inner_colours.colours[i];
    }
    std::sort(outer_used.begin(), outer_used.end());
    result.stats.colours_used_outer =
        static_cast<std::uint64_t>(std::unique(outer_used.begin(), outer_used.end()) - outer_used.begin());
    result.stats.colours_total = result.stats.colours_used_inner + result.stats.colours_used_outer;

    for (const auto& [u, v] : g.edges()) {
        if (result.colours[u] == result.colours[v]) {
            throw std::logic_error("deterministic colouring is improper on edge " + std::to_string(u) + "-"
                                   + std::to_string(v));
        }
    }
    return result;
}

} // namespace hypercolor
