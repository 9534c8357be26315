#include "hypercolor/sim.hpp"

#include "hypercolor/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace hypercolor {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Small-state generator for the per-(vertex, round) streams.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return UINT64_MAX; }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

std::uint64_t stream_seed(std::uint64_t seed, VertexId u, std::uint32_t round) {
    std::uint64_t x = mix64(seed + 0x9e3779b97f4a7c15ULL);
    x = mix64(x ^ (static_cast<std::uint64_t>(u) + 0x632be59bd9b4e019ULL));
    x = mix64(x ^ (static_cast<std::uint64_t>(round) * 0xd1b54a32d192ed03ULL + 1));
    return x;
}

std::vector<std::uint32_t> identity_ids(std::size_t count) {
    std::vector<std::uint32_t> result(count);
    std::iota(result.begin(), result.end(), 0);
    return result;
}

} // namespace

std::string_view to_string(PriorityRule rule) {
    switch (rule) {
    case PriorityRule::Symmetric:
        return "rct";
    case PriorityRule::SmallerIdWins:
        return "rctid";
    case PriorityRule::LargerDegreeWins:
        return "rctdeg";
    }
    return "unknown";
}

std::optional<PriorityRule> rule_from_string(std::string_view name) {
    for (const auto rule : {PriorityRule::Symmetric, PriorityRule::SmallerIdWins, PriorityRule::LargerDegreeWins}) {
        if (to_string(rule) == name) {
            return rule;
        }
    }
    return std::nullopt;
}

std::string_view to_string(RunOutcome::Kind kind) {
    switch (kind) {
    case RunOutcome::Kind::Completed:
        return "completed";
    case RunOutcome::Kind::NeverTerminates:
        return "never_terminates";
    case RunOutcome::Kind::RoundLimit:
        return "round_limit";
    }
    return "unknown";
}

IdAssignment assign_ids(const HrgGraph& g, const IdStrategy& strategy) {
    IdAssignment result;
    if (std::holds_alternative<ids::ByIndex>(strategy)) {
        result.ids = identity_ids(g.size());
    } else if (const auto* random = std::get_if<ids::RandomPermutation>(&strategy)) {
        result.ids = identity_ids(g.size());
        std::mt19937_64 rng(random->seed);
        std::shuffle(result.ids.begin(), result.ids.end(), rng);
    } else {
        const auto& adversarial = std::get<ids::AdversarialLeafPriority>(strategy);
        const Layering layering = build_layering(g);

        std::vector<int> levels{adversarial.level};
        if (adversarial.search_adjacent) {
            const int deepest = static_cast<int>(layering.members.size());
            for (int offset = 1; offset <= deepest; ++offset) {
                levels.push_back(adversarial.level - offset);
                levels.push_back(adversarial.level + offset);
            }
        }

        std::optional<VertexId> target;
        std::size_t best = 0;
        for (const int level : levels) {
            if (level < 0 || layering.count(level) == 0) {
                continue;
            }
            for (const VertexId u : layering.members[level]) {
                const std::size_t leaves = leaves_of(g, u).size();
                if (leaves > best) {
                    best = leaves;
                    target = u;
                }
            }
            if (target) {
                break;
            }
        }
        if (!target) {
            throw NoEligibleTarget("no vertex with a leaf neighbour at level " + std::to_string(adversarial.level));
        }

        const auto leaves = leaves_of(g, *target);
        std::vector<bool> is_leaf(g.size(), false);
        for (const VertexId v : leaves) {
            is_leaf[v] = true;
        }
        result.ids.assign(g.size(), 0);
        std::uint32_t next = 0;
        for (const VertexId v : leaves) {
            result.ids[v] = next++;
        }
        for (VertexId v = 0; v < g.size(); ++v) {
            if (!is_leaf[v] && v != *target) {
                result.ids[v] = next++;
            }
        }
        result.ids[*target] = next;
        result.target = target;
    }
    return result;
}

SimState SimState::initial(const HrgGraph& g, PaletteSpec palette, const IdAssignment& assignment,
                           std::uint64_t seed) {
    if (palette.k < 1) {
        throw DomainError("colour space must hold at least one colour");
    }
    if (assignment.ids.size() != g.size()) {
        throw DomainError("id assignment size does not match the graph");
    }
    std::vector<bool> used(g.size(), false);
    for (const auto id : assignment.ids) {
        if (id >= g.size() || used[id]) {
            throw DomainError("ids must form a permutation of [0, N)");
        }
        used[id] = true;
    }
    SimState state;
    state.k = palette.k;
    state.seed = seed;
    state.assigned.assign(g.size(), std::nullopt);
    state.forbidden.assign(g.size(), {});
    state.ids = assignment.ids;
    return state;
}

std::size_t SimState::uncoloured_count() const {
    return static_cast<std::size_t>(std::count(assigned.begin(), assigned.end(), std::nullopt));
}

std::size_t SimState::uncoloured_degree(const HrgGraph& g, VertexId u) const {
    std::size_t count = 0;
    for (const VertexId v : g.neighbours(u)) {
        count += assigned[v] ? 0 : 1;
    }
    return count;
}

Colour select_free_colour(std::uint64_t j, const std::vector<Colour>& forbidden) {
    std::uint64_t colour = j;
    for (const Colour f : forbidden) {
        if (f > colour) {
            break;
        }
        ++colour;
    }
    return static_cast<Colour>(colour);
}

std::optional<Colour> candidate_colour(VertexId u, std::uint32_t round, const SimState& state) {
    const std::uint32_t size = state.palette_size(u);
    if (size == 0) {
        return std::nullopt;
    }
    SplitMix64 stream(stream_seed(state.seed, u, round));
    std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
    return select_free_colour(pick(stream), state.forbidden[u]);
}

bool blocks(PriorityRule rule, const TrialMessage& self, const TrialMessage& other) {
    if (!self.candidate || !other.candidate || *self.candidate != *other.candidate) {
        return false;
    }
    switch (rule) {
    case PriorityRule::Symmetric:
        return true;
    case PriorityRule::SmallerIdWins:
        return other.id < self.id;
    case PriorityRule::LargerDegreeWins:
        return other.degree > self.degree || (other.degree == self.degree && other.id < self.id);
    }
    return true;
}

void step_in_place(const HrgGraph& g, SimState& state, PriorityRule rule) {
    const std::size_t count = g.size();
    const std::uint32_t round = state.round + 1;

    // Each vertex's outgoing message depends only on its own state.
    std::vector<TrialMessage> outbox(count);
    std::vector<char> active(count, 0);
    parallel_for(count, [&](std::size_t i) {
        const auto u = static_cast<VertexId>(i);
        if (state.coloured(u)) {
            return;
        }
        active[u] = 1;
        outbox[u] = {candidate_colour(u, round, state), state.ids[u], static_cast<std::uint32_t>(g.degree(u))};
    });

    // Each vertex decides from its own message and those of its uncoloured neighbours.
    std::vector<char> commits(count, 0);
    parallel_for(count, [&](std::size_t i) {
        const auto u = static_cast<VertexId>(i);
        if (!active[u] || !outbox[u].candidate) {
            return;
        }
        for (const VertexId v : g.neighbours(u)) {
            if (active[v] && blocks(rule, outbox[u], outbox[v])) {
                return;
            }
        }
        commits[u] = 1;
    });

    // Commit bits travel to the neighbours, which drop the colours from their palettes.
    parallel_for(count, [&](std::size_t i) {
        const auto w = static_cast<VertexId>(i);
        std::vector<Colour> incoming;
        for (const VertexId v : g.neighbours(w)) {
            if (commits[v]) {
                incoming.push_back(*outbox[v].candidate);
            }
        }
        if (incoming.empty()) {
            return;
        }
        std::sort(incoming.begin(), incoming.end());
        incoming.erase(std::unique(incoming.begin(), incoming.end()), incoming.end());
        auto& current = state.forbidden[w];
        std::vector<Colour> merged;
        merged.reserve(current.size() + incoming.size());
        std::set_union(current.begin(), current.end(), incoming.begin(), incoming.end(), std::back_inserter(merged));
        current = std::move(merged);
    });

    for (VertexId u = 0; u < count; ++u) {
        if (commits[u]) {
            state.assigned[u] = outbox[u].candidate;
        }
    }
    state.round = round;
}

SimState step(const HrgGraph& g, SimState state, PriorityRule rule) {
    step_in_place(g, state, rule);
    return state;
}

std::optional<Certificate> find_certificate(const HrgGraph& g, const SimState& state, PriorityRule rule) {
    for (VertexId u = 0; u < g.size(); ++u) {
        if (!state.coloured(u) && state.palette_size(u) == 0) {
            return Certificate{Certificate::Kind::EmptyPalette, u, u, 0};
        }
    }
    if (rule != PriorityRule::Symmetric) {
        return std::nullopt;
    }
    for (VertexId u = 0; u < g.size(); ++u) {
        if (state.coloured(u) || state.palette_size(u) != 1) {
            continue;
        }
        const Colour only = select_free_colour(0, state.forbidden[u]);
        for (const VertexId v : g.neighbours(u)) {
            if (v > u && !state.coloured(v) && state.palette_size(v) == 1
                && select_free_colour(0, state.forbidden[v]) == only) {
                return Certificate{Certificate::Kind::LockedPair, u, v, only};
            }
        }
    }
    return std::nullopt;
}

RoundTrace trace_state(const HrgGraph& g, const SimState& state) {
    RoundTrace trace;
    trace.round = state.round;
    trace.uncoloured_per_level.assign(static_cast<std::size_t>(level_of_radius(0.0, g.R())) + 1, 0);
    for (VertexId u = 0; u < g.size(); ++u) {
        if (!state.coloured(u)) {
            ++trace.uncoloured_total;
            ++trace.uncoloured_per_level[level_of_radius(g.coord(u).r, g.R())];
            const auto size = state.palette_size(u);
            trace.min_palette = trace.min_palette ? std::min(*trace.min_palette, size) : size;
            trace.max_uncoloured_degree = std::max(trace.max_uncoloured_degree, state.uncoloured_degree(g, u));
        }
    }
    return trace;
}

RunResult run(const HrgGraph& g, const IdAssignment& ids, const RunConfig& config) {
    if (config.max_rounds < 1) {
        throw DomainError("max_rounds must be at least 1");
    }
    RunResult result;
    SimState& state = result.final_state;
    state = SimState::initial(g, {config.k}, ids, config.seed);
    if (config.record_trace) {
        result.trace.push_back(trace_state(g, state));
    }

    for (;;) {
        const std::size_t remaining = state.uncoloured_count();
        if (remaining == 0) {
            result.outcome = {RunOutcome::Kind::Completed, state.round, std::nullopt, 0};
            break;
        }
        if (auto certificate = find_certificate(g, state, config.rule)) {
            result.outcome = {RunOutcome::Kind::NeverTerminates, state.round, certificate, remaining};
            break;
        }
        if (state.round >= config.max_rounds) {
            result.outcome = {RunOutcome::Kind::RoundLimit, state.round, std::nullopt, remaining};
            break;
        }
        step_in_place(g, state, config.rule);
        if (config.record_trace) {
            result.trace.push_back(trace_state(g, state));
        }
    }

    if (!validate_colouring(g, state.assigned, false).ok) {
        throw std::logic_error("simulation produced an improper colouring");
    }
    return result;
}

ColouringCheck validate_colouring(const HrgGraph& g, const std::vector<std::optional<Colour>>& assigned,
                                  bool require_total) {
    ColouringCheck check;
    if (assigned.size() != g.size()) {
        throw DomainError("colouring size does not match the graph");
    }
    for (VertexId u = 0; u < g.size(); ++u) {
        if (!assigned[u]) {
            if (require_total && !check.first_uncoloured) {
                check.first_uncoloured = u;
                check.ok = false;
            }
            continue;
        }
        for (const VertexId v : g.neighbours(u)) {
            if (v > u && assigned[v] == assigned[u]) {
                check.ok = false;
                check.conflict = Edge{u, v};
                return check;
            }
        }
    }
    return check;
}

} // namespace hypercolor
