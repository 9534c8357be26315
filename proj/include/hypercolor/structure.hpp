#pragma once

#include "hypercolor/hrg.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypercolor {

enum class LemmaId {
    LayerCounts,
    LayerDegrees,
    MaxLevel,
    MaxDegree,
    Leaves,
    LargerDegreeRadius,
    LargerDegreeNbhd,
    CoreClique,
    ChromaticScaling,
};

std::string_view to_string(LemmaId id);
std::optional<LemmaId> lemma_from_string(std::string_view name);

/// One measured quantity against its predicted interval. The record passes iff
/// lower <= observed <= upper; unbounded sides are +-infinity.
struct LemmaRecord {
    LemmaId kind = LemmaId::LayerCounts;
    std::int64_t subject = 0; ///< level or vertex id, depending on kind
    double predicted = 0.0;   ///< central prediction, informational
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    double observed = 0.0;
    bool pass = false;

    bool consistent() const { return pass == (lower <= observed && observed <= upper); }
};

LemmaRecord make_record(LemmaId kind, std::int64_t subject, double predicted, double lower, double upper,
                        double observed);

struct LemmaReport {
    LemmaId lemma = LemmaId::LayerCounts;
    std::vector<LemmaRecord> records;
    std::vector<std::string> warnings;
    bool pass = true;

    /// Fraction of passing records, optionally restricted to one kind; 1 when there are none.
    double pass_ratio() const;
    double pass_ratio(LemmaId kind) const;
    bool all_pass(LemmaId kind) const { return pass_ratio(kind) == 1.0; }
    std::size_t count(LemmaId kind) const;
};

struct LayerLemmaConfig {
    double count_sigmas = 6.0;       ///< half-width of the count band in Poisson standard deviations
    double min_expected_count = 50.0;
    double degree_slack = 8.0;       ///< constant c in deg <= c (e^{l/2} + ln n)
};

/// Per-level counts against the exact expectation, per-level maximum degree, and the bound on
/// the deepest non-empty level. Statistical misses become failing records.
LemmaReport check_layer_lemma(const HrgGraph& g, const Layering& layering, const LayerLemmaConfig& config = {});

struct LeavesConfig {
    double leaf_fraction = 0.05;   ///< beta: a vertex qualifies when |L(u)| >= beta deg(u)
    double vertex_fraction = 0.05; ///< gamma: the level passes when at least this fraction qualifies
    double range_constant = 3.0;   ///< c in the admissible level range
};

/// Admissible levels [ceil(c ln ln n), floor((ln n - ln ln n - c) / alpha)].
std::pair<int, int> leaves_level_range(double n, double alpha, double c);

/// Throws DomainError when the level lies outside leaves_level_range.
LemmaReport check_leaves_lemma(const HrgGraph& g, const Layering& layering, int level,
                               const LeavesConfig& config = {});

struct LargerDegreeRadiusConfig {
    double radius_gap = 7.0;
    double required_fraction = 0.9;
};

/// For each u with r(u) <= R - 2 ln ln n / (1 - alpha): the number of vertices v with
/// r(v) >= r(u) + 7 and deg(v) >= deg(u). A record passes when that number is zero.
LemmaReport check_larger_degree_radius(const HrgGraph& g, const LargerDegreeRadiusConfig& config = {});

/// Three-regime bound on |N+(u)| by level, slack 8 on each leading term.
LemmaReport check_larger_degree_nbhd(const HrgGraph& g, const Layering& layering, double slack = 8.0);

/// Band n^{1/(2 alpha)} / ln^2 n <= Delta <= n^{1/(2 alpha)} ln n.
LemmaReport check_max_degree(const HrgGraph& g);

/// Core pairwise adjacency, checked exhaustively.
LemmaReport check_core_clique(const HrgGraph& g);

/// Smallest-last (degeneracy) order: vertices listed in removal order, minimum degree first.
std::vector<VertexId> smallest_last_order(const HrgGraph& g);

/// Greedy colouring visiting vertices in reverse smallest-last order. Colours are 0-based.
std::vector<std::uint32_t> degeneracy_greedy_colouring(const HrgGraph& g);

/// True iff the vertices are pairwise adjacent.
bool is_clique(const HrgGraph& g, const std::vector<VertexId>& vertices);

struct ChromaticEstimate {
    std::size_t lower = 0;  ///< certified clique size
    std::size_t upper = 0;  ///< colours used by the certified greedy colouring
    double theta_exponent = 0.0; ///< reference exponent 1 - alpha
    std::vector<VertexId> clique;
    std::vector<std::uint32_t> colouring;
};

/// Core clique grown greedily by common neighbours (lower bound) and degeneracy greedy
/// colouring (upper bound). Both certificates are re-checked before returning.
ChromaticEstimate estimate_chromatic(const HrgGraph& g);

} // namespace hypercolor
