#pragma once

#include "hypercolor/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypercolor {

/// Colour-space exponents as functions of alpha.
struct DerivedThresholds {
    double alpha = 0.0;
    double zeta1 = 0.0;       ///< 1 / (2 alpha + 1/2)
    double zeta2 = 0.0;       ///< 1 / (4 alpha - 1)
    double zeta_min = 0.0;    ///< min(zeta1, 2 (1 - alpha))
    double zeta_max = 0.0;    ///< max(2 (1 - alpha), 1/2)
    double zeta_min_prime = 0.0; ///< min(zeta1, zeta2)
    double delta_exponent = 0.0; ///< 1 / (2 alpha)
    double chi_exponent = 0.0;   ///< 1 - alpha
};

/// Throws DomainError unless alpha lies in (0.5, 1).
DerivedThresholds thresholds(double alpha);

/// Palette formulas evaluated on each sampled graph.
enum class PalettePreset {
    EpsDelta,      ///< ceil(Delta / 4)
    Rctdeg2Round,  ///< ceil(ln^4 n chi_upper^2) for alpha <= 3/4, ceil(ln^4 n sqrt n) above
    RctdegConst,   ///< ceil(ln n n^{zeta'_min})
    Lock,          ///< floor(0.05 n^{zeta_min} / ln n)
    RctidLock,     ///< floor(|L(u*)| / (4 ln n)) for the adversarial target u*
};

std::string_view to_string(PalettePreset preset);
std::optional<PalettePreset> preset_from_string(std::string_view name);

enum class IdMode { Index, Random, Adversarial };

std::string_view to_string(IdMode mode);
std::optional<IdMode> id_mode_from_string(std::string_view name);

/// Adversarial target level ceil((ln n - 1.1 ln ln n) / alpha).
int adversarial_level(double n, double alpha);

/// Palette size for a preset on g, clamped to at least one colour. RctidLock needs the target.
std::uint64_t preset_palette(PalettePreset preset, const HrgGraph& g, std::optional<VertexId> target = std::nullopt);

/// Palette size ceil(n^f).
std::uint64_t exponent_palette(double n, double f);

struct SweepConfig {
    std::vector<double> alphas;
    std::vector<double> exponents;  ///< ignored when a preset is set
    std::vector<std::uint64_t> ns{1U << 14, 1U << 16};
    std::uint32_t seeds = 10;
    PriorityRule rule = PriorityRule::Symmetric;
    IdMode ids = IdMode::Index;
    std::uint32_t max_rounds = 64;
    std::uint32_t const_rounds = 10; ///< completed runs above this count as round_limit
    std::optional<PalettePreset> preset;
    std::uint64_t master_seed = 0;
    double C = 0.0;

    /// Throws DomainError on out-of-range values.
    void validate() const;
};

/// Reads a TOML document; unknown keys are rejected.
SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct PhaseCell {
    double alpha = 0.0;
    double f = 0.0; ///< colour exponent; with a preset, the mean of ln k / ln n over the seeds
    std::uint64_t n = 0;
    std::uint32_t seed_count = 0;
    std::uint32_t completed2 = 0;
    std::uint32_t completed_const = 0;
    std::uint32_t round_limit = 0;
    std::uint32_t never = 0;
    double mean_rounds = 0.0;       ///< over completed runs, NaN when there are none
    std::optional<std::string> error; ///< set when a run of the cell failed

    enum class Outcome { Completed2, CompletedConst, RoundLimit, Never };
    /// Largest class, ties resolved in declaration order.
    Outcome majority() const;
};

char outcome_symbol(PhaseCell::Outcome outcome);
std::string_view to_string(PhaseCell::Outcome outcome);

/// Graph seed of one sweep run, a function of the cell coordinates only.
std::uint64_t sweep_graph_seed(std::uint64_t master, double alpha, std::uint64_t n, std::uint32_t index);

/// Runs every (alpha, f, n) cell, sorted by (alpha, f, n).
std::vector<PhaseCell> sweep(const SweepConfig& config);

std::string cells_csv(const std::vector<PhaseCell>& cells);
std::string cells_json(const std::vector<PhaseCell>& cells, const SweepConfig& config);
std::string heatmap_text(const std::vector<PhaseCell>& cells, std::uint64_t n);
std::string matrix_csv(const std::vector<PhaseCell>& cells, std::uint64_t n);

/// Writes cells.csv, cells.json and heatmap/matrix files per n into dir.
void write_report(const std::vector<PhaseCell>& cells, const SweepConfig& config, const std::filesystem::path& dir);

} // namespace hypercolor
