#pragma once

#include "hypercolor/hrg.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace hypercolor {

using Colour = std::uint32_t;

/// Colour space [0, k).
struct PaletteSpec {
    std::uint32_t k = 1;
};

/// Conflict rule between adjacent vertices that drew the same candidate.
enum class PriorityRule {
    Symmetric,        ///< RCT: any contender blocks
    SmallerIdWins,    ///< RCTID: blocked only by a contender with a smaller id
    LargerDegreeWins, ///< RCTDEG: blocked by a larger degree, equal degrees fall back to smaller id
};

std::string_view to_string(PriorityRule rule);
std::optional<PriorityRule> rule_from_string(std::string_view name);

class NoEligibleTarget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Priority ids: a permutation of [0, N).
struct IdAssignment {
    std::vector<std::uint32_t> ids;
    std::optional<VertexId> target; ///< vertex singled out by the adversarial strategy
};

namespace ids {
struct ByIndex {};
struct RandomPermutation {
    std::uint64_t seed = 0;
};
/// Picks the vertex with the most leaves at the target level, gives it the largest id and its
/// leaves the smallest ones. With search_adjacent, levels l-1, l+1, l-2, ... are tried in turn
/// when the target level has no vertex with a leaf.
struct AdversarialLeafPriority {
    int level = 0;
    bool search_adjacent = false;
};
} // namespace ids

using IdStrategy = std::variant<ids::ByIndex, ids::RandomPermutation, ids::AdversarialLeafPriority>;

IdAssignment assign_ids(const HrgGraph& g, const IdStrategy& strategy);

/// Colouring state between rounds. Palettes are never materialised: the palette of u is
/// [0, k) minus forbidden[u], which holds exactly the colours assigned in N(u).
struct SimState {
    std::uint32_t round = 0;
    std::uint32_t k = 1;
    std::uint64_t seed = 0;
    std::vector<std::optional<Colour>> assigned;
    std::vector<std::vector<Colour>> forbidden; ///< sorted, distinct
    std::vector<std::uint32_t> ids;

    static SimState initial(const HrgGraph& g, PaletteSpec palette, const IdAssignment& ids, std::uint64_t seed);

    std::uint32_t palette_size(VertexId u) const {
        return k - static_cast<std::uint32_t>(forbidden[u].size());
    }
    bool coloured(VertexId u) const { return assigned[u].has_value(); }
    std::size_t uncoloured_count() const;
    /// Number of uncoloured neighbours of u (deg_t(u)).
    std::size_t uncoloured_degree(const HrgGraph& g, VertexId u) const;
};

/// The j-th smallest colour of the palette with j uniform on [0, X_t(u)), drawn from a stream
/// that depends only on (seed, u, t). Returns nullopt when the palette is empty.
std::optional<Colour> candidate_colour(VertexId u, std::uint32_t round, const SimState& state);

/// j-th smallest colour of [0, k) \ forbidden, for sorted distinct forbidden and j < k - |forbidden|.
Colour select_free_colour(std::uint64_t j, const std::vector<Colour>& forbidden);

/// What a vertex tells its neighbours in one round: candidate plus the rule's tie-breaking data,
/// each O(log n) bits.
struct TrialMessage {
    std::optional<Colour> candidate;
    std::uint32_t id = 0;
    std::uint32_t degree = 0;
};

/// True when `other` prevents `self` from committing its candidate under `rule`.
bool blocks(PriorityRule rule, const TrialMessage& self, const TrialMessage& other);

/// One synchronous round: all uncoloured vertices draw, conflicts are resolved, winners commit.
void step_in_place(const HrgGraph& g, SimState& state, PriorityRule rule);
SimState step(const HrgGraph& g, SimState state, PriorityRule rule);

struct Certificate {
    enum class Kind { EmptyPalette, LockedPair };
    Kind kind = Kind::EmptyPalette;
    VertexId u = 0;
    VertexId v = 0;      ///< LockedPair only
    Colour colour = 0;   ///< LockedPair only
};

struct RunOutcome {
    enum class Kind { Completed, NeverTerminates, RoundLimit };
    Kind kind = Kind::RoundLimit;
    std::uint32_t rounds = 0; ///< rounds executed when the run stopped
    std::optional<Certificate> certificate;
    std::size_t uncoloured = 0;
};

std::string_view to_string(RunOutcome::Kind kind);

/// Searches for a proof that no continuation colours the graph: an uncoloured vertex with an
/// empty palette, or (Symmetric rule only) adjacent uncoloured vertices whose palettes are the
/// same single colour.
std::optional<Certificate> find_certificate(const HrgGraph& g, const SimState& state, PriorityRule rule);

struct RoundTrace {
    std::uint32_t round = 0;
    std::size_t uncoloured_total = 0;
    std::vector<std::size_t> uncoloured_per_level;
    std::size_t max_uncoloured_degree = 0;
    std::optional<std::uint32_t> min_palette; ///< over uncoloured vertices
};

struct RunResult {
    RunOutcome outcome;
    std::vector<RoundTrace> trace; ///< entry 0 is the initial state, entry t follows round t
    SimState final_state;
};

struct RunConfig {
    std::uint32_t k = 1;
    PriorityRule rule = PriorityRule::Symmetric;
    std::uint64_t seed = 0;
    std::uint32_t max_rounds = 64;
    bool record_trace = true;
};

RunResult run(const HrgGraph& g, const IdAssignment& ids, const RunConfig& config);

RoundTrace trace_state(const HrgGraph& g, const SimState& state);

struct ColouringCheck {
    bool ok = true;
    std::optional<Edge> conflict;             ///< first monochromatic edge
    std::optional<VertexId> first_uncoloured; ///< set only when totality was required
};

/// Proper iff no edge has two equally coloured endpoints; with require_total every vertex must
/// also carry a colour.
ColouringCheck validate_colouring(const HrgGraph& g, const std::vector<std::optional<Colour>>& assigned,
                                  bool require_total = true);

} // namespace hypercolor
