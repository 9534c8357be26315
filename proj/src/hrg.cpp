#include "hypercolor/hrg.hpp"

#include "hypercolor/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>

namespace hypercolor {

void HrgParams::validate() const {
    if (n < 1) {
        throw DomainError("n must be at least 1");
    }
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0.5, 1), got " + std::to_string(alpha));
    }
    if (!(radius() > 0.0)) {
        throw DomainError("disk radius 2 ln n + C must be positive");
    }
}

HrgGraph::HrgGraph(HrgParams params, double R, std::vector<PolarPoint> coords,
                   const std::vector<std::vector<VertexId>>& adjacency)
    : params_(params), R_(R), coords_(std::move(coords)) {
    if (adjacency.size() != coords_.size()) {
        throw InvariantViolation("adjacency has " + std::to_string(adjacency.size()) + " lists for "
                                 + std::to_string(coords_.size()) + " vertices");
    }
    offsets_.assign(1, 0);
    offsets_.reserve(coords_.size() + 1);
    std::size_t total = 0;
    for (const auto& list : adjacency) {
        total += list.size();
    }
    targets_.reserve(total);
    for (VertexId u = 0; u < adjacency.size(); ++u) {
        const auto& list = adjacency[u];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const VertexId v = list[i];
            if (v >= coords_.size()) {
                throw InvariantViolation("neighbour id " + std::to_string(v) + " out of range");
            }
            if (v == u) {
                throw InvariantViolation("self loop at vertex " + std::to_string(u));
            }
            if (i > 0 && list[i - 1] >= v) {
                throw InvariantViolation("neighbour list of " + std::to_string(u) + " not strictly sorted");
            }
        }
        targets_.insert(targets_.end(), list.begin(), list.end());
        offsets_.push_back(targets_.size());
    }
    for (VertexId u = 0; u < coords_.size(); ++u) {
        for (const VertexId v : neighbours(u)) {
            if (!adjacent(v, u)) {
                throw InvariantViolation("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not symmetric");
            }
        }
    }
}

HrgGraph HrgGraph::from_edges(HrgParams params, double R, std::vector<PolarPoint> coords,
                              std::span<const Edge> edges) {
    std::vector<std::vector<VertexId>> adjacency(coords.size());
    for (const auto& [u, v] : edges) {
        if (u >= coords.size() || v >= coords.size()) {
            throw InvariantViolation("edge endpoint out of range");
        }
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    for (auto& list : adjacency) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
            throw InvariantViolation("duplicate edge");
        }
    }
    return HrgGraph(params, R, std::move(coords), adjacency);
}

void HrgGraph::check_index(VertexId u) const {
    if (u >= coords_.size()) {
        throw std::out_of_range("vertex " + std::to_string(u) + " out of range for graph with "
                                + std::to_string(coords_.size()) + " vertices");
    }
}

std::span<const VertexId> HrgGraph::neighbours(VertexId u) const {
    check_index(u);
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
}

std::size_t HrgGraph::degree(VertexId u) const {
    check_index(u);
    return offsets_[u + 1] - offsets_[u];
}

bool HrgGraph::adjacent(VertexId u, VertexId v) const {
    const auto list = neighbours(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> HrgGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(num_edges());
    for (VertexId u = 0; u < size(); ++u) {
        for (const VertexId v : neighbours(u)) {
            if (u < v) {
                result.emplace_back(u, v);
            }
        }
    }
    return result;
}

int level_of_radius(double r, double R) {
    return std::max(0, static_cast<int>(std::floor(R - r)));
}

std::vector<std::vector<VertexId>> build_adjacency(std::span<const PolarPoint> coords, double R,
                                                   std::uint64_t edge_budget) {
    const std::size_t count = coords.size();
    std::vector<std::vector<VertexId>> adjacency(count);
    if (count == 0) {
        return adjacency;
    }

    struct Entry {
        double phi;
        VertexId id;
    };
    const int band_count = level_of_radius(0.0, R) + 1;
    std::vector<std::vector<Entry>> bands(band_count);
    for (VertexId u = 0; u < count; ++u) {
        bands[std::min(level_of_radius(coords[u].r, R), band_count - 1)].push_back({coords[u].phi, u});
    }
    for (auto& band : bands) {
        std::sort(band.begin(), band.end(), [](const Entry& a, const Entry& b) {
            return a.phi < b.phi || (a.phi == b.phi && a.id < b.id);
        });
    }

    constexpr double kAngleSlack = 1e-9;
    std::atomic<std::uint64_t> directed{0};
    const std::uint64_t directed_budget = edge_budget >= UINT64_MAX / 2 ? UINT64_MAX : 2 * edge_budget;

    parallel_for(count, [&](std::size_t index) {
        const auto u = static_cast<VertexId>(index);
        const PolarPoint& pu = coords[u];
        auto& out = adjacency[u];

        auto scan = [&](const std::vector<Entry>& band, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const VertexId v = band[i].id;
                if (v != u && within_distance(pu, coords[v], R)) {
                    out.push_back(v);
                }
            }
        };
        auto first_at_least = [](const std::vector<Entry>& band, double phi) {
            return static_cast<std::size_t>(
                std::lower_bound(band.begin(), band.end(), phi, [](const Entry& e, double x) { return e.phi < x; })
                - band.begin());
        };
        auto first_above = [](const std::vector<Entry>& band, double phi) {
            return static_cast<std::size_t>(
                std::upper_bound(band.begin(), band.end(), phi, [](double x, const Entry& e) { return x < e.phi; })
                - band.begin());
        };

        for (int b = 0; b < band_count; ++b) {
            const auto& band = bands[b];
            if (band.empty()) {
                continue;
            }
            // theta is non-increasing in the radius, so the band's inner edge bounds the window
            const double inner = std::max(R - b - 1.0, 0.0);
            double theta = std::numbers::pi;
            if (pu.r + inner > R && pu.r > 0.0 && inner > 0.0) {
                theta = theta_threshold(pu.r, inner, R) + kAngleSlack;
            }
            if (theta >= std::numbers::pi) {
                scan(band, 0, band.size());
                continue;
            }
            const double lo = pu.phi - theta;
            const double hi = pu.phi + theta;
            if (lo < 0.0) {
                scan(band, first_at_least(band, lo + kTwoPi), band.size());
                scan(band, 0, first_above(band, hi));
            } else if (hi >= kTwoPi) {
                scan(band, first_at_least(band, lo), band.size());
                scan(band, 0, first_above(band, hi - kTwoPi));
            } else {
                scan(band, first_at_least(band, lo), first_above(band, hi));
            }
        }
        std::sort(out.begin(), out.end());
        if (directed.fetch_add(out.size()) + out.size() > directed_budget) {
            throw ResourceError("edge budget of " + std::to_string(edge_budget) + " exceeded");
        }
    });
    return adjacency;
}

std::vector<std::vector<VertexId>> build_adjacency_reference(std::span<const PolarPoint> coords, double R) {
    std::vector<std::vector<VertexId>> adjacency(coords.size());
    for (VertexId u = 0; u < coords.size(); ++u) {
        for (VertexId v = u + 1; v < coords.size(); ++v) {
            if (hyperbolic_distance(coords[u], coords[v]) <= R) {
                adjacency[u].push_back(v);
                adjacency[v].push_back(u);
            }
        }
    }
    return adjacency;
}

HrgGraph generate(const HrgParams& params, const GenerateOptions& options) {
    params.validate();
    const DiskSpec disk = params.disk();

    std::mt19937_64 rng(params.seed);
    std::uint64_t count;
    if (options.forced_vertex_count) {
        count = *options.forced_vertex_count;
    } else {
        std::poisson_distribution<std::uint64_t> poisson(static_cast<double>(params.n));
        count = poisson(rng);
    }
    if (count > UINT32_MAX) {
        throw ResourceError("vertex count exceeds 32-bit ids");
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PolarPoint> coords(count);
    for (auto& p : coords) {
        p.r = sample_radius(unit(rng), disk);
        p.phi = normalize_angle(kTwoPi * unit(rng));
    }
    auto adjacency = build_adjacency(coords, disk.R, options.edge_budget);
    return HrgGraph(params, disk.R, std::move(coords), adjacency);
}

Layering build_layering(const HrgGraph& g) {
    Layering layering;
    layering.level_of.resize(g.size());
    for (VertexId u = 0; u < g.size(); ++u) {
        const int level = level_of_radius(g.coord(u).r, g.R());
        layering.level_of[u] = level;
        if (static_cast<std::size_t>(level) >= layering.members.size()) {
            layering.members.resize(level + 1);
        }
        layering.members[level].push_back(u);
        layering.max_level = std::max(layering.max_level, level);
    }
    return layering;
}

std::size_t degree(const HrgGraph& g, VertexId u) {
    return g.degree(u);
}

std::size_t max_degree(const HrgGraph& g) {
    std::size_t best = 0;
    for (VertexId u = 0; u < g.size(); ++u) {
        best = std::max(best, g.degree(u));
    }
    return best;
}

std::vector<VertexId> leaves_of(const HrgGraph& g, VertexId u) {
    std::vector<VertexId> result;
    for (const VertexId v : g.neighbours(u)) {
        if (g.degree(v) == 1) {
            result.push_back(v);
        }
    }
    return result;
}

std::vector<VertexId> larger_degree_neighbourhood(const HrgGraph& g, VertexId u) {
    const std::size_t own = g.degree(u);
    std::vector<VertexId> result;
    for (const VertexId v : g.neighbours(u)) {
        if (g.degree(v) >= own) {
            result.push_back(v);
        }
    }
    return result;
}

std::vector<VertexId> core(const HrgGraph& g) {
    std::vector<VertexId> result;
    const double half = 0.5 * g.R();
    for (VertexId u = 0; u < g.size(); ++u) {
        if (g.coord(u).r <= half) {
            result.push_back(u);
        }
    }
    return result;
}

} // namespace hypercolor
