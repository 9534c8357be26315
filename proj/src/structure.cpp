#include "hypercolor/structure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hypercolor {

namespace {

constexpr std::array<std::pair<LemmaId, std::string_view>, 9> kLemmaNames{{
    {LemmaId::LayerCounts, "layer_counts"},
    {LemmaId::LayerDegrees, "layer_degrees"},
    {LemmaId::MaxLevel, "max_level"},
    {LemmaId::MaxDegree, "max_degree"},
    {LemmaId::Leaves, "leaves"},
    {LemmaId::LargerDegreeRadius, "larger_degree_radius"},
    {LemmaId::LargerDegreeNbhd, "larger_degree_nbhd"},
    {LemmaId::CoreClique, "core_clique"},
    {LemmaId::ChromaticScaling, "chromatic_scaling"},
}};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Logs {
    double ln_n;
    double lnln_n;
};

Logs logs_of(const HrgGraph& g) {
    const double ln_n = std::log(static_cast<double>(g.params().n));
    return {ln_n, std::log(ln_n)};
}

// Fenwick tree over degrees, counting inserted vertices with degree >= a bound.
class DegreeCounter {
public:
    explicit DegreeCounter(std::size_t max_degree) : tree_(max_degree + 2, 0) {}

    void insert(std::size_t degree) {
        for (std::size_t i = degree + 1; i < tree_.size(); i += i & (~i + 1)) {
            ++tree_[i];
        }
        ++total_;
    }

    std::size_t at_least(std::size_t degree) const { return total_ - below(degree); }

private:
    std::size_t below(std::size_t degree) const {
        std::size_t sum = 0;
        for (std::size_t i = std::min(degree, tree_.size() - 1); i > 0; i -= i & (~i + 1)) {
            sum += tree_[i];
        }
        return sum;
    }

    std::vector<std::size_t> tree_;
    std::size_t total_ = 0;
};

} // namespace

std::string_view to_string(LemmaId id) {
    for (const auto& [key, name] : kLemmaNames) {
        if (key == id) {
            return name;
        }
    }
    return "unknown";
}

std::optional<LemmaId> lemma_from_string(std::string_view name) {
    for (const auto& [key, text] : kLemmaNames) {
        if (text == name) {
            return key;
        }
    }
    return std::nullopt;
}

LemmaRecord make_record(LemmaId kind, std::int64_t subject, double predicted, double lower, double upper,
                        double observed) {
    LemmaRecord record{kind, subject, predicted, lower, upper, observed, false};
    record.pass = lower <= observed && observed <= upper;
    return record;
}

double LemmaReport::pass_ratio() const {
    if (records.empty()) {
        return 1.0;
    }
    const auto passed = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; });
    return static_cast<double>(passed) / static_cast<double>(records.size());
}

double LemmaReport::pass_ratio(LemmaId kind) const {
    std::size_t total = 0;
    std::size_t passed = 0;
    for (const auto& r : records) {
        if (r.kind == kind) {
            ++total;
            passed += r.pass ? 1 : 0;
        }
    }
    return total == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(total);
}

std::size_t LemmaReport::count(LemmaId kind) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [kind](const auto& r) { return r.kind == kind; }));
}

LemmaReport check_layer_lemma(const HrgGraph& g, const Layering& layering, const LayerLemmaConfig& config) {
    LemmaReport report;
    report.lemma = LemmaId::LayerCounts;
    const auto [ln_n, lnln_n] = logs_of(g);
    const double n = static_cast<double>(g.params().n);
    const double alpha = g.params().alpha;
    const DiskSpec disk{g.R(), alpha};
    const int outer_level = static_cast<int>(std::floor(g.R()));

    const int count_cap = static_cast<int>(std::ceil((ln_n - 2.0 * lnln_n) / alpha));
    for (int level = 0; level <= std::min(count_cap, outer_level); ++level) {
        const double hi = g.R() - level;
        const double lo = std::max(hi - 1.0, 0.0);
        const double mean = n * (ball_measure_origin(hi, disk) - ball_measure_origin(lo, disk));
        if (mean < config.min_expected_count) {
            continue;
        }
        const double width = config.count_sigmas * std::sqrt(mean);
        report.records.push_back(make_record(LemmaId::LayerCounts, level, mean, mean - width, mean + width,
                                             static_cast<double>(layering.count(level))));
    }

    for (int level = 0; level <= outer_level; ++level) {
        std::size_t level_max = 0;
        if (static_cast<std::size_t>(level) < layering.members.size()) {
            for (const VertexId u : layering.members[level]) {
                level_max = std::max(level_max, g.degree(u));
            }
        }
        const double bound = config.degree_slack * (std::exp(0.5 * level) + ln_n);
        report.records.push_back(
            make_record(LemmaId::LayerDegrees, level, bound, -kInf, bound, static_cast<double>(level_max)));
    }

    const double level_bound = std::ceil((ln_n + lnln_n) / alpha);
    report.records.push_back(make_record(LemmaId::MaxLevel, layering.max_level, level_bound, -kInf, level_bound,
                                         static_cast<double>(layering.max_level)));

    report.pass = report.pass_ratio() == 1.0;
    return report;
}

std::pair<int, int> leaves_level_range(double n, double alpha, double c) {
    const double ln_n = std::log(n);
    const double lnln_n = std::log(ln_n);
    return {static_cast<int>(std::ceil(c * lnln_n)), static_cast<int>(std::floor((ln_n - lnln_n - c) / alpha))};
}

LemmaReport check_leaves_lemma(const HrgGraph& g, const Layering& layering, int level, const LeavesConfig& config) {
    const auto [first, last] =
        leaves_level_range(static_cast<double>(g.params().n), g.params().alpha, config.range_constant);
    if (level < first || level > last) {
        throw DomainError("level " + std::to_string(level) + " outside the admissible range ["
                          + std::to_string(first) + ", " + std::to_string(last) + "]");
    }

    LemmaReport report;
    report.lemma = LemmaId::Leaves;
    if (layering.count(level) == 0) {
        report.warnings.push_back("level " + std::to_string(level) + " is empty; vacuous pass");
        report.pass = true;
        return report;
    }
    for (const VertexId u : layering.members[level]) {
        const std::size_t deg = g.degree(u);
        const double fraction =
            deg == 0 ? 0.0 : static_cast<double>(leaves_of(g, u).size()) / static_cast<double>(deg);
        report.records.push_back(make_record(LemmaId::Leaves, u, config.leaf_fraction, config.leaf_fraction, kInf,
                                             fraction));
    }
    report.pass = report.pass_ratio() >= config.vertex_fraction;
    return report;
}

LemmaReport check_larger_degree_radius(const HrgGraph& g, const LargerDegreeRadiusConfig& config) {
    LemmaReport report;
    report.lemma = LemmaId::LargerDegreeRadius;
    const auto [ln_n, lnln_n] = logs_of(g);
    const double radius_cap = g.R() - 2.0 * lnln_n / (1.0 - g.params().alpha);

    std::vector<VertexId> subjects;
    for (VertexId u = 0; u < g.size(); ++u) {
        if (g.coord(u).r <= radius_cap) {
            subjects.push_back(u);
        }
    }
    if (subjects.empty()) {
        report.warnings.push_back("no vertex within the radius cap; vacuous pass");
        report.pass = true;
        return report;
    }

    // Sweep thresholds r(u) + gap from the outside in, inserting every vertex beyond the threshold.
    std::vector<VertexId> by_radius(g.size());
    std::iota(by_radius.begin(), by_radius.end(), 0);
    std::sort(by_radius.begin(), by_radius.end(),
              [&](VertexId a, VertexId b) { return g.coord(a).r > g.coord(b).r; });
    std::sort(subjects.begin(), subjects.end(),
              [&](VertexId a, VertexId b) { return g.coord(a).r > g.coord(b).r; });

    DegreeCounter counter(max_degree(g));
    std::size_t inserted = 0;
    std::vector<LemmaRecord> records;
    for (const VertexId u : subjects) {
        const double threshold = g.coord(u).r + config.radius_gap;
        while (inserted < by_radius.size() && g.coord(by_radius[inserted]).r >= threshold) {
            counter.insert(g.degree(by_radius[inserted]));
            ++inserted;
        }
        const auto violators = counter.at_least(g.degree(u));
        records.push_back(make_record(LemmaId::LargerDegreeRadius, u, 0.0, -kInf, 0.0, static_cast<double>(violators)));
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.subject < b.subject; });
    report.records = std::move(records);
    report.pass = report.pass_ratio() >= config.required_fraction;
    return report;
}

LemmaReport check_larger_degree_nbhd(const HrgGraph& g, const Layering& layering, double slack) {
    LemmaReport report;
    report.lemma = LemmaId::LargerDegreeNbhd;
    const auto [ln_n, lnln_n] = logs_of(g);
    const double n = static_cast<double>(g.params().n);
    const double alpha = g.params().alpha;

    const double split = 2.0 / (1.0 - alpha) * lnln_n;
    const int small_last = static_cast<int>(std::floor(split));
    const int middle_first = static_cast<int>(std::ceil(split));
    const int half_level = static_cast<int>(std::ceil(g.R() / 2.0));
    const int deep_last = static_cast<int>(std::ceil((ln_n - 2.0 * lnln_n) / alpha));

    for (VertexId u = 0; u < g.size(); ++u) {
        const int level = layering.level_of.at(u);
        // adjacent regimes share their boundary level; the looser bound applies there
        double bound = -kInf;
        if (level <= small_last) {
            bound = std::max(bound, slack * (std::exp(0.5 * level) + ln_n));
        }
        if (level >= middle_first && level <= half_level) {
            bound = std::max(bound, slack * std::exp(level * (1.0 - alpha)));
        }
        if (level >= half_level && level <= deep_last) {
            bound = std::max(bound, slack * n * std::exp(-alpha * level));
        }
        if (bound == -kInf) {
            continue;
        }
        const auto observed = static_cast<double>(larger_degree_neighbourhood(g, u).size());
        report.records.push_back(make_record(LemmaId::LargerDegreeNbhd, u, bound, -kInf, bound, observed));
    }
    report.pass = report.pass_ratio() == 1.0;
    return report;
}

LemmaReport check_max_degree(const HrgGraph& g) {
    LemmaReport report;
    report.lemma = LemmaId::MaxDegree;
    const double n = static_cast<double>(g.params().n);
    const double ln_n = std::log(n);
    const double scale = std::pow(n, 1.0 / (2.0 * g.params().alpha));
    report.records.push_back(make_record(LemmaId::MaxDegree, 0, scale, scale / (ln_n * ln_n), scale * ln_n,
                                         static_cast<double>(max_degree(g))));
    report.pass = report.records.front().pass;
    return report;
}

LemmaReport check_core_clique(const HrgGraph& g) {
    LemmaReport report;
    report.lemma = LemmaId::CoreClique;
    const auto members = core(g);
    std::size_t missing = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            missing += g.adjacent(members[i], members[j]) ? 0 : 1;
        }
    }
    report.records.push_back(make_record(LemmaId::CoreClique, static_cast<std::int64_t>(members.size()), 0.0, -kInf,
                                         0.0, static_cast<double>(missing)));
    report.pass = missing == 0;
    return report;
}

std::vector<VertexId> smallest_last_order(const HrgGraph& g) {
    // bucket queue keyed by remaining degree, stale entries skipped on pop
    const std::size_t count = g.size();
    std::vector<VertexId> order;
    order.reserve(count);
    std::vector<std::size_t> deg(count);
    std::vector<std::vector<VertexId>> buckets(max_degree(g) + 1);
    for (VertexId u = 0; u < count; ++u) {
        deg[u] = g.degree(u);
        buckets[deg[u]].push_back(u);
    }
    for (auto& bucket : buckets) {
        std::reverse(bucket.begin(), bucket.end());
    }
    std::vector<bool> removed(count, false);
    std::size_t d = 0;
    while (order.size() < count) {
        while (buckets[d].empty()) {
            ++d;
        }
        const VertexId v = buckets[d].back();
        buckets[d].pop_back();
        if (removed[v] || deg[v] != d) {
            continue;
        }
        removed[v] = true;
        order.push_back(v);
        for (const VertexId u : g.neighbours(v)) {
            if (!removed[u]) {
                buckets[--deg[u]].push_back(u);
            }
        }
        // one removal lowers any degree by at most one
        d = d > 0 ? d - 1 : 0;
    }
    return order;
}

std::vector<std::uint32_t> degeneracy_greedy_colouring(const HrgGraph& g) {
    const auto order = smallest_last_order(g);
    constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> colour(g.size(), kNone);
    std::vector<std::size_t> seen_at(max_degree(g) + 2, SIZE_MAX);
    for (std::size_t i = order.size(); i-- > 0;) {
        const VertexId v = order[i];
        for (const VertexId u : g.neighbours(v)) {
            if (colour[u] != kNone && colour[u] < seen_at.size()) {
                seen_at[colour[u]] = i;
            }
        }
        std::uint32_t c = 0;
        while (seen_at[c] == i) {
            ++c;
        }
        colour[v] = c;
    }
    return colour;
}

bool is_clique(const HrgGraph& g, const std::vector<VertexId>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (!g.adjacent(vertices[i], vertices[j])) {
                return false;
            }
        }
    }
    return true;
}

ChromaticEstimate estimate_chromatic(const HrgGraph& g) {
    ChromaticEstimate estimate;
    estimate.theta_exponent = 1.0 - g.params().alpha;
    if (g.size() == 0) {
        return estimate;
    }

    auto by_radius = [&](VertexId a, VertexId b) {
        return g.coord(a).r < g.coord(b).r || (g.coord(a).r == g.coord(b).r && a < b);
    };
    VertexId seed = 0;
    for (VertexId u = 1; u < g.size(); ++u) {
        if (by_radius(u, seed)) {
            seed = u;
        }
    }
    // The seed is the innermost vertex, so the whole core sorts to the front of its neighbourhood.
    std::vector<VertexId> candidates(g.neighbours(seed).begin(), g.neighbours(seed).end());
    std::sort(candidates.begin(), candidates.end(), by_radius);
    estimate.clique.push_back(seed);
    for (const VertexId c : candidates) {
        const bool joins = std::all_of(estimate.clique.begin(), estimate.clique.end(),
                                       [&](VertexId member) { return g.adjacent(c, member); });
        if (joins) {
            estimate.clique.push_back(c);
        }
    }

    estimate.colouring = degeneracy_greedy_colouring(g);
    for (VertexId u = 0; u < g.size(); ++u) {
        for (const VertexId v : g.neighbours(u)) {
            if (estimate.colouring[u] == estimate.colouring[v]) {
                throw std::logic_error("greedy colouring is not proper");
            }
        }
    }
    if (!is_clique(g, estimate.clique)) {
        throw std::logic_error("clique certificate failed");
    }
    estimate.lower = estimate.clique.size();
    estimate.upper = *std::max_element(estimate.colouring.begin(), estimate.colouring.end()) + 1;
    return estimate;
}

} // namespace hypercolor
