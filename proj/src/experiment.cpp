#include "hypercolor/experiment.hpp"

#include "hypercolor/instance_io.hpp"
#include "hypercolor/structure.hpp"

#include <json.hpp>
#include <toml.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace hypercolor {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix(a ^ mix(b));
}

[[noreturn]] void config_error(const std::string& message) {
    throw DomainError("sweep config: " + message);
}

template <typename T>
std::vector<T> read_array(const toml::table& table, std::string_view key) {
    std::vector<T> values;
    const auto* node = table.get(key);
    if (!node) {
        return values;
    }
    const auto* array = node->as_array();
    if (!array) {
        config_error(std::string(key) + " must be an array");
    }
    for (const auto& element : *array) {
        const auto value = element.value<T>();
        if (!value) {
            config_error(std::string(key) + " holds a value of the wrong type");
        }
        values.push_back(*value);
    }
    return values;
}

template <typename T>
std::optional<T> read_scalar(const toml::table& table, std::string_view key) {
    const auto* node = table.get(key);
    if (!node) {
        return std::nullopt;
    }
    const auto value = node->value<T>();
    if (!value) {
        config_error(std::string(key) + " has the wrong type");
    }
    return value;
}

std::string fixed(double value, int digits) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << value;
    return out.str();
}

} // namespace

DerivedThresholds thresholds(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0.5, 1)");
    }
    DerivedThresholds t;
    t.alpha = alpha;
    t.zeta1 = 1.0 / (2.0 * alpha + 0.5);
    t.zeta2 = 1.0 / (4.0 * alpha - 1.0);
    t.zeta_min = std::min(t.zeta1, 2.0 * (1.0 - alpha));
    t.zeta_max = std::max(2.0 * (1.0 - alpha), 0.5);
    t.zeta_min_prime = std::min(t.zeta1, t.zeta2);
    t.delta_exponent = 1.0 / (2.0 * alpha);
    t.chi_exponent = 1.0 - alpha;
    return t;
}

std::string_view to_string(PalettePreset preset) {
    switch (preset) {
    case PalettePreset::EpsDelta:
        return "eps_delta";
    case PalettePreset::Rctdeg2Round:
        return "rctdeg_2round";
    case PalettePreset::RctdegConst:
        return "rctdeg_const";
    case PalettePreset::Lock:
        return "lock";
    case PalettePreset::RctidLock:
        return "rctid_lock";
    }
    return "unknown";
}

std::optional<PalettePreset> preset_from_string(std::string_view name) {
    for (const auto preset : {PalettePreset::EpsDelta, PalettePreset::Rctdeg2Round, PalettePreset::RctdegConst,
                              PalettePreset::Lock, PalettePreset::RctidLock}) {
        if (to_string(preset) == name) {
            return preset;
        }
    }
    return std::nullopt;
}

std::string_view to_string(IdMode mode) {
    switch (mode) {
    case IdMode::Index:
        return "index";
    case IdMode::Random:
        return "random";
    case IdMode::Adversarial:
        return "adversarial";
    }
    return "unknown";
}

std::optional<IdMode> id_mode_from_string(std::string_view name) {
    for (const auto mode : {IdMode::Index, IdMode::Random, IdMode::Adversarial}) {
        if (to_string(mode) == name) {
            return mode;
        }
    }
    return std::nullopt;
}

int adversarial_level(double n, double alpha) {
    const double ln_n = std::log(n);
    return static_cast<int>(std::ceil((ln_n - 1.1 * std::log(ln_n)) / alpha));
}

std::uint64_t exponent_palette(double n, double f) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::pow(n, f))));
}

std::uint64_t preset_palette(PalettePreset preset, const HrgGraph& g, std::optional<VertexId> target) {
    const double n = static_cast<double>(g.params().n);
    const double ln_n = std::log(n);
    const auto t = thresholds(g.params().alpha);
    double k = 0.0;
    switch (preset) {
    case PalettePreset::EpsDelta:
        k = std::ceil(static_cast<double>(max_degree(g)) / 4.0);
        break;
    case PalettePreset::Rctdeg2Round:
        if (g.params().alpha <= 0.75) {
            const double chi = static_cast<double>(estimate_chromatic(g).upper);
            k = std::ceil(std::pow(ln_n, 4) * chi * chi);
        } else {
            k = std::ceil(std::pow(ln_n, 4) * std::sqrt(n));
        }
        break;
    case PalettePreset::RctdegConst:
        k = std::ceil(ln_n * std::pow(n, t.zeta_min_prime));
        break;
    case PalettePreset::Lock:
        k = std::floor(0.05 * std::pow(n, t.zeta_min) / ln_n);
        break;
    case PalettePreset::RctidLock:
        if (!target) {
            throw DomainError("rctid_lock needs an adversarial target vertex");
        }
        k = std::floor(static_cast<double>(leaves_of(g, *target).size()) / (4.0 * ln_n));
        break;
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
}

void SweepConfig::validate() const {
    for (const double a : alphas) {
        if (!(a > 0.5 && a < 1.0)) {
            config_error("alpha " + format_double(a) + " outside (0.5, 1)");
        }
    }
    for (const double f : exponents) {
        if (!(f > 0.0 && f <= 1.0)) {
            config_error("exponent " + format_double(f) + " outside (0, 1]");
        }
    }
    for (const auto n : ns) {
        if (n < 2) {
            config_error("n must be at least 2");
        }
    }
    if (seeds < 1) {
        config_error("seeds must be at least 1");
    }
    if (max_rounds < 1) {
        config_error("max_rounds must be at least 1");
    }
    if (preset == PalettePreset::RctidLock && ids != IdMode::Adversarial) {
        config_error("preset rctid_lock requires ids = \"adversarial\"");
    }
}

SweepConfig parse_sweep_config(std::string_view text) {
    toml::table table;
    try {
        table = toml::parse(text);
    } catch (const toml::parse_error& e) {
        config_error(std::string(e.description()));
    }

    static const std::set<std::string_view> known{"alphas", "exponents", "n",          "seeds",
                                                  "algorithm", "ids",    "max_rounds", "const_rounds",
                                                  "preset", "master_seed", "C"};
    for (const auto& [key, value] : table) {
        if (!known.contains(key.str())) {
            config_error("unknown key '" + std::string(key.str()) + "'");
        }
    }

    SweepConfig config;
    config.alphas = read_array<double>(table, "alphas");
    config.exponents = read_array<double>(table, "exponents");
    if (table.contains("n")) {
        config.ns.clear();
        for (const auto n : read_array<std::int64_t>(table, "n")) {
            if (n < 2) {
                config_error("n must be at least 2");
            }
            config.ns.push_back(static_cast<std::uint64_t>(n));
        }
    }
    const auto non_negative = [](std::int64_t v, const char* key) {
        if (v < 0 || v > UINT32_MAX) {
            config_error(std::string(key) + " out of range");
        }
        return static_cast<std::uint32_t>(v);
    };
    if (const auto v = read_scalar<std::int64_t>(table, "seeds")) {
        config.seeds = non_negative(*v, "seeds");
    }
    if (const auto v = read_scalar<std::int64_t>(table, "max_rounds")) {
        config.max_rounds = non_negative(*v, "max_rounds");
    }
    if (const auto v = read_scalar<std::int64_t>(table, "const_rounds")) {
        config.const_rounds = non_negative(*v, "const_rounds");
    }
    if (const auto v = read_scalar<std::int64_t>(table, "master_seed")) {
        config.master_seed = static_cast<std::uint64_t>(*v);
    }
    if (const auto v = read_scalar<double>(table, "C")) {
        config.C = *v;
    }
    if (const auto v = read_scalar<std::string>(table, "algorithm")) {
        const auto rule = rule_from_string(*v);
        if (!rule) {
            config_error("unknown algorithm '" + *v + "'");
        }
        config.rule = *rule;
    }
    if (const auto v = read_scalar<std::string>(table, "ids")) {
        const auto mode = id_mode_from_string(*v);
        if (!mode) {
            config_error("unknown id strategy '" + *v + "'");
        }
        config.ids = *mode;
    }
    if (const auto v = read_scalar<std::string>(table, "preset")) {
        const auto preset = preset_from_string(*v);
        if (!preset) {
            config_error("unknown preset '" + *v + "'");
        }
        config.preset = preset;
    }
    config.validate();
    return config;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_config(buffer.str());
}

PhaseCell::Outcome PhaseCell::majority() const {
    Outcome best = Outcome::Completed2;
    std::uint32_t count = completed2;
    const std::pair<Outcome, std::uint32_t> rest[] = {
        {Outcome::CompletedConst, completed_const}, {Outcome::RoundLimit, round_limit}, {Outcome::Never, never}};
    for (const auto& [outcome, c] : rest) {
        if (c > count) {
            best = outcome;
            count = c;
        }
    }
    return best;
}

char outcome_symbol(PhaseCell::Outcome outcome) {
    switch (outcome) {
    case PhaseCell::Outcome::Completed2:
        return '2';
    case PhaseCell::Outcome::CompletedConst:
        return 'c';
    case PhaseCell::Outcome::RoundLimit:
        return 'L';
    case PhaseCell::Outcome::Never:
        return 'X';
    }
    return '?';
}

std::string_view to_string(PhaseCell::Outcome outcome) {
    switch (outcome) {
    case PhaseCell::Outcome::Completed2:
        return "completed2";
    case PhaseCell::Outcome::CompletedConst:
        return "completed_const";
    case PhaseCell::Outcome::RoundLimit:
        return "round_limit";
    case PhaseCell::Outcome::Never:
        return "never";
    }
    return "unknown";
}

std::uint64_t sweep_graph_seed(std::uint64_t master, double alpha, std::uint64_t n, std::uint32_t index) {
    return combine(combine(combine(master, std::bit_cast<std::uint64_t>(alpha)), n), index);
}

std::vector<PhaseCell> sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<double> slots = config.preset ? std::vector<double>{0.0} : config.exponents;

    struct Accumulator {
        PhaseCell cell;
        double rounds_sum = 0.0;
        std::uint32_t completed = 0;
        double exponent_sum = 0.0;
    };
    std::vector<Accumulator> acc;
    const auto index = [&](std::size_t a, std::size_t f, std::size_t n) {
        return (a * slots.size() + f) * config.ns.size() + n;
    };
    acc.resize(config.alphas.size() * slots.size() * config.ns.size());
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
        for (std::size_t f = 0; f < slots.size(); ++f) {
            for (std::size_t n = 0; n < config.ns.size(); ++n) {
                auto& cell = acc[index(a, f, n)].cell;
                cell.alpha = config.alphas[a];
                cell.f = slots[f];
                cell.n = config.ns[n];
            }
        }
    }
    const auto fail = [](Accumulator& entry, const std::string& message) {
        if (!entry.cell.error) {
            entry.cell.error = message;
        }
    };

    for (std::size_t a = 0; a < config.alphas.size() && !slots.empty(); ++a) {
        for (std::size_t ni = 0; ni < config.ns.size(); ++ni) {
            const double alpha = config.alphas[a];
            const std::uint64_t n = config.ns[ni];
            for (std::uint32_t s = 0; s < config.seeds; ++s) {
                const auto graph_seed = sweep_graph_seed(config.master_seed, alpha, n, s);
                HrgGraph g;
                IdAssignment ids;
                try {
                    g = generate({n, alpha, config.C, graph_seed});
                    switch (config.ids) {
                    case IdMode::Index:
                        ids = assign_ids(g, ids::ByIndex{});
                        break;
                    case IdMode::Random:
                        ids = assign_ids(g, ids::RandomPermutation{combine(graph_seed, 0x1d5)});
                        break;
                    case IdMode::Adversarial:
                        ids = assign_ids(g, ids::AdversarialLeafPriority{
                                                adversarial_level(static_cast<double>(n), alpha), true});
                        break;
                    }
                } catch (const std::exception& e) {
                    for (std::size_t f = 0; f < slots.size(); ++f) {
                        fail(acc[index(a, f, ni)], e.what());
                    }
                    continue;
                }

                for (std::size_t f = 0; f < slots.size(); ++f) {
                    auto& entry = acc[index(a, f, ni)];
                    try {
                        const auto k = config.preset ? preset_palette(*config.preset, g, ids.target)
                                                     : exponent_palette(static_cast<double>(n), slots[f]);
                        if (k > UINT32_MAX) {
                            throw DomainError("palette size exceeds 32-bit colours");
                        }
                        RunConfig rc;
                        rc.k = static_cast<std::uint32_t>(k);
                        rc.rule = config.rule;
                        rc.seed = combine(graph_seed, std::bit_cast<std::uint64_t>(slots[f]));
                        rc.max_rounds = config.max_rounds;
                        rc.record_trace = false;
                        const auto result = run(g, ids, rc);
                        const auto& outcome = result.outcome;
                        if (outcome.kind == RunOutcome::Kind::Completed) {
                            if (!validate_colouring(g, result.final_state.assigned).ok) {
                                throw std::logic_error("completed run failed revalidation");
                            }
                            entry.rounds_sum += outcome.rounds;
                            ++entry.completed;
                            if (outcome.rounds <= 2) {
                                ++entry.cell.completed2;
                            } else if (outcome.rounds <= config.const_rounds) {
                                ++entry.cell.completed_const;
                            } else {
                                ++entry.cell.round_limit;
                            }
                        } else if (outcome.kind == RunOutcome::Kind::NeverTerminates) {
                            ++entry.cell.never;
                        } else {
                            ++entry.cell.round_limit;
                        }
                        ++entry.cell.seed_count;
                        entry.exponent_sum += std::log(static_cast<double>(k)) / std::log(static_cast<double>(n));
                    } catch (const std::exception& e) {
                        fail(entry, e.what());
                    }
                }
            }
        }
    }

    std::vector<PhaseCell> cells;
    cells.reserve(acc.size());
    for (auto& entry : acc) {
        entry.cell.mean_rounds = entry.completed ? entry.rounds_sum / entry.completed : std::nan("");
        if (config.preset && entry.cell.seed_count > 0) {
            entry.cell.f = std::round(entry.exponent_sum / entry.cell.seed_count * 1e6) / 1e6;
        }
        cells.push_back(entry.cell);
    }
    std::stable_sort(cells.begin(), cells.end(), [](const PhaseCell& x, const PhaseCell& y) {
        return std::tie(x.alpha, x.f, x.n) < std::tie(y.alpha, y.f, y.n);
    });
    return cells;
}

std::string cells_csv(const std::vector<PhaseCell>& cells) {
    std::ostringstream out;
    out << "alpha,f,n,seed_count,completed2,completed_const,round_limit,never,mean_rounds\n";
    for (const auto& c : cells) {
        out << format_double(c.alpha) << ',' << format_double(c.f) << ',' << c.n << ',' << c.seed_count << ','
            << c.completed2 << ',' << c.completed_const << ',' << c.round_limit << ',' << c.never << ','
            << format_double(c.mean_rounds) << '\n';
    }
    return out.str();
}

std::string cells_json(const std::vector<PhaseCell>& cells, const SweepConfig& config) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = to_string(config.rule);
    doc["ids"] = to_string(config.ids);
    doc["preset"] = config.preset ? nlohmann::ordered_json(to_string(*config.preset)) : nlohmann::ordered_json();
    doc["master_seed"] = config.master_seed;
    doc["max_rounds"] = config.max_rounds;
    doc["const_rounds"] = config.const_rounds;
    auto& list = doc["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json entry;
        entry["alpha"] = c.alpha;
        entry["f"] = c.f;
        entry["n"] = c.n;
        entry["seed_count"] = c.seed_count;
        entry["completed2"] = c.completed2;
        entry["completed_const"] = c.completed_const;
        entry["round_limit"] = c.round_limit;
        entry["never"] = c.never;
        entry["mean_rounds"] = std::isnan(c.mean_rounds) ? nlohmann::ordered_json() : nlohmann::ordered_json(c.mean_rounds);
        entry["majority"] = to_string(c.majority());
        entry["error"] = c.error ? nlohmann::ordered_json(*c.error) : nlohmann::ordered_json();
        list.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string heatmap_text(const std::vector<PhaseCell>& cells, std::uint64_t n) {
    std::set<double> alphas;
    std::set<double, std::greater<>> exponents;
    std::map<std::pair<double, double>, const PhaseCell*> grid;
    for (const auto& c : cells) {
        if (c.n == n) {
            alphas.insert(c.alpha);
            exponents.insert(c.f);
            grid[{c.alpha, c.f}] = &c;
        }
    }

    std::ostringstream out;
    out << "majority outcome, n = " << n << "\n";
    out << "rows: colour exponent f (largest first), columns: alpha\n";
    out << "legend: 2 = completed within 2 rounds, c = completed within the constant cut-off, "
           "L = round limit, X = never terminates, ! = failed cell, . = no cell\n\n";
    out << "       ";
    for (const double a : alphas) {
        out << ' ' << fixed(a, 3);
    }
    out << '\n';
    for (const double f : exponents) {
        out << ' ' << fixed(f, 4) << ' ';
        for (const double a : alphas) {
            const auto it = grid.find({a, f});
            char symbol = '.';
            if (it != grid.end()) {
                symbol = it->second->error ? '!' : outcome_symbol(it->second->majority());
            }
            out << "     " << symbol;
        }
        out << '\n';
    }
    return out.str();
}

std::string matrix_csv(const std::vector<PhaseCell>& cells, std::uint64_t n) {
    std::ostringstream out;
    out << "alpha,f,majority,completed2,completed_const,round_limit,never,delta_exponent,chi_exponent\n";
    for (const auto& c : cells) {
        if (c.n != n) {
            continue;
        }
        const auto t = thresholds(c.alpha);
        out << format_double(c.alpha) << ',' << format_double(c.f) << ',' << to_string(c.majority()) << ','
            << c.completed2 << ',' << c.completed_const << ',' << c.round_limit << ',' << c.never << ','
            << format_double(t.delta_exponent) << ',' << format_double(t.chi_exponent) << '\n';
    }
    return out.str();
}

void write_report(const std::vector<PhaseCell>& cells, const SweepConfig& config, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + (dir / name).string());
        }
        out << content;
    };
    write("cells.csv", cells_csv(cells));
    write("cells.json", cells_json(cells, config));
    std::set<std::uint64_t> ns;
    for (const auto& c : cells) {
        ns.insert(c.n);
    }
    for (const auto n : ns) {
        write("heatmap_n" + std::to_string(n) + ".txt", heatmap_text(cells, n));
        write("matrix_n" + std::to_string(n) + ".csv", matrix_csv(cells, n));
    }
}

} // namespace hypercolor
