#include "hypercolor/detlocal.hpp"
#include "hypercolor/experiment.hpp"
#include "hypercolor/instance_io.hpp"
#include "hypercolor/sim.hpp"
#include "hypercolor/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using namespace hypercolor;
using Json = nlohmann::ordered_json;

namespace {

Json bound(double value) {
    return std::isfinite(value) ? Json(value) : Json();
}

Json report_json(const LemmaReport& report) {
    Json out;
    out["lemma"] = to_string(report.lemma);
    out["pass"] = report.pass;
    out["pass_ratio"] = report.pass_ratio();
    out["warnings"] = report.warnings;
    auto& records = out["records"] = Json::array();
    for (const auto& r : report.records) {
        records.push_back({{"kind", to_string(r.kind)},
                           {"subject", r.subject},
                           {"predicted", bound(r.predicted)},
                           {"lower", bound(r.lower)},
                           {"upper", bound(r.upper)},
                           {"observed", r.observed},
                           {"pass", r.pass}});
    }
    return out;
}

void write_json(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << doc.dump(2) << '\n';
}

int cmd_gen(std::uint64_t n, double alpha, double C, std::uint64_t seed, const std::string& out) {
    const auto g = generate({n, alpha, C, seed});
    save_instance(g, out);
    std::cout << "N = " << g.size() << ", M = " << g.num_edges() << ", R = " << g.R()
              << ", max degree = " << max_degree(g) << '\n';
    return 0;
}

int cmd_check(const std::string& in, const std::string& lemma, int level, const std::string& json_path) {
    const auto g = load_instance(in);
    const auto layering = build_layering(g);
    const double n = static_cast<double>(g.params().n);

    std::vector<LemmaReport> reports;
    const auto wanted = [&](std::initializer_list<LemmaId> ids) {
        if (lemma == "all") {
            return true;
        }
        for (const auto id : ids) {
            if (to_string(id) == lemma) {
                return true;
            }
        }
        return false;
    };
    if (lemma != "all" && !lemma_from_string(lemma)) {
        throw CLI::ValidationError("--lemma", "unknown lemma '" + lemma + "'");
    }

    if (wanted({LemmaId::LayerCounts, LemmaId::LayerDegrees, LemmaId::MaxLevel})) {
        reports.push_back(check_layer_lemma(g, layering));
    }
    if (wanted({LemmaId::MaxDegree})) {
        reports.push_back(check_max_degree(g));
    }
    if (wanted({LemmaId::Leaves})) {
        const LeavesConfig config;
        const int chosen = level >= 0 ? level : static_cast<int>(std::ceil(config.range_constant * std::log(std::log(n))));
        try {
            reports.push_back(check_leaves_lemma(g, layering, chosen, config));
        } catch (const DomainError& e) {
            LemmaReport skipped;
            skipped.lemma = LemmaId::Leaves;
            skipped.pass = false;
            skipped.warnings.push_back(e.what());
            reports.push_back(skipped);
        }
    }
    if (wanted({LemmaId::LargerDegreeRadius})) {
        reports.push_back(check_larger_degree_radius(g));
    }
    if (wanted({LemmaId::LargerDegreeNbhd})) {
        reports.push_back(check_larger_degree_nbhd(g, layering));
    }
    if (wanted({LemmaId::CoreClique})) {
        reports.push_back(check_core_clique(g));
    }

    Json doc;
    doc["instance"] = {{"n", g.params().n}, {"alpha", g.params().alpha}, {"C", g.params().C},
                       {"seed", g.params().seed}, {"R", g.R()}, {"N", g.size()}, {"M", g.num_edges()}};
    if (wanted({LemmaId::ChromaticScaling})) {
        const auto estimate = estimate_chromatic(g);
        doc["chromatic"] = {{"lower", estimate.lower},
                            {"upper", estimate.upper},
                            {"theta_exponent", estimate.theta_exponent},
                            {"reference", std::pow(n, estimate.theta_exponent)}};
    }
    auto& list = doc["reports"] = Json::array();
    for (const auto& report : reports) {
        list.push_back(report_json(report));
        std::cout << to_string(report.lemma) << ": " << (report.pass ? "pass" : "FAIL") << " ("
                  << report.records.size() << " records, pass ratio " << report.pass_ratio() << ")\n";
        for (const auto& w : report.warnings) {
            std::cout << "  warning: " << w << '\n';
        }
    }
    if (doc.contains("chromatic")) {
        std::cout << "chromatic: " << doc["chromatic"]["lower"] << " <= chi <= " << doc["chromatic"]["upper"] << '\n';
    }
    if (!json_path.empty()) {
        write_json(json_path, doc);
    }
    return 0;
}

int cmd_run(const std::string& in, const std::string& algo, std::uint32_t colours, const std::string& id_mode,
            std::uint64_t seed, std::uint32_t max_rounds, int level, const std::string& trace_path) {
    const auto g = load_instance(in);
    const auto rule = rule_from_string(algo);
    const auto mode = id_mode_from_string(id_mode);
    if (!rule) {
        throw CLI::ValidationError("--algo", "expected rct, rctid or rctdeg");
    }
    if (!mode) {
        throw CLI::ValidationError("--ids", "expected index, random or adversarial");
    }

    IdAssignment ids;
    switch (*mode) {
    case IdMode::Index:
        ids = assign_ids(g, ids::ByIndex{});
        break;
    case IdMode::Random:
        ids = assign_ids(g, ids::RandomPermutation{seed});
        break;
    case IdMode::Adversarial:
        ids = assign_ids(g, ids::AdversarialLeafPriority{
                                level >= 0 ? level : adversarial_level(static_cast<double>(g.params().n), g.params().alpha),
                                true});
        break;
    }

    RunConfig config;
    config.k = colours;
    config.rule = *rule;
    config.seed = seed;
    config.max_rounds = max_rounds;
    const auto result = run(g, ids, config);
    const auto& outcome = result.outcome;

    std::cout << to_string(outcome.kind) << " after " << outcome.rounds << " rounds, " << outcome.uncoloured
              << " uncoloured";
    if (outcome.certificate) {
        const auto& c = *outcome.certificate;
        if (c.kind == Certificate::Kind::EmptyPalette) {
            std::cout << ", empty palette at vertex " << c.u;
        } else {
            std::cout << ", vertices " << c.u << " and " << c.v << " locked on colour " << c.colour;
        }
    }
    std::cout << '\n';

    if (!trace_path.empty()) {
        Json doc;
        doc["algorithm"] = to_string(*rule);
        doc["colours"] = colours;
        doc["seed"] = seed;
        doc["outcome"] = to_string(outcome.kind);
        doc["rounds_used"] = outcome.rounds;
        if (ids.target) {
            doc["target"] = *ids.target;
        }
        if (outcome.certificate) {
            const auto& c = *outcome.certificate;
            doc["certificate"] = c.kind == Certificate::Kind::EmptyPalette
                                     ? Json{{"kind", "empty_palette"}, {"vertex", c.u}}
                                     : Json{{"kind", "locked_pair"}, {"u", c.u}, {"v", c.v}, {"colour", c.colour}};
        }
        auto& rounds = doc["rounds"] = Json::array();
        for (const auto& t : result.trace) {
            rounds.push_back({{"round", t.round},
                              {"uncoloured_total", t.uncoloured_total},
                              {"uncoloured_per_level", t.uncoloured_per_level},
                              {"max_uncoloured_degree", t.max_uncoloured_degree},
                              {"min_palette", t.min_palette ? Json(*t.min_palette) : Json()}});
        }
        write_json(trace_path, doc);
    }
    return 0;
}

int cmd_det(const std::string& in, std::optional<double> epsilon, const std::string& out_path) {
    const auto g = load_instance(in);
    const double eps = epsilon.value_or(default_epsilon(g.params().alpha));
    DetResult result;
    try {
        result = run_deterministic(g, eps);
    } catch (const PaletteTooSmall& e) {
        std::cerr << "deterministic colouring failed: " << e.what() << '\n';
        return 2;
    }
    const auto& s = result.stats;
    std::cout << "colours: " << s.colours_total << " (inner " << s.colours_used_inner << ", outer "
              << s.colours_used_outer << "), rounds: " << s.rounds << ", inner diameter: " << s.inner_diameter
              << ", outer max degree: " << s.outer_max_degree << '\n';

    if (!out_path.empty()) {
        Json doc;
        Json colours = Json::object();
        for (VertexId u = 0; u < g.size(); ++u) {
            colours[std::to_string(u)] = result.colours[u];
        }
        doc["colours"] = std::move(colours);
        doc["palettes"] = {{"inner", {result.part.inner_palette.begin, result.part.inner_palette.end()}},
                           {"outer", {result.part.outer_palette.begin, result.part.outer_palette.end()}}};
        doc["stats"] = {{"epsilon", eps},
                        {"rounds", s.rounds},
                        {"colours_used_inner", s.colours_used_inner},
                        {"colours_used_outer", s.colours_used_outer},
                        {"colours_total", s.colours_total},
                        {"inner_vertices", result.part.inner.size()},
                        {"outer_vertices", result.part.outer.size()},
                        {"inner_components", s.inner_components},
                        {"inner_diameter", s.inner_diameter},
                        {"outer_max_degree", s.outer_max_degree},
                        {"linial_q", s.linial_q}};
        write_json(out_path, doc);
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    const auto config = load_sweep_config(config_path);
    const auto cells = sweep(config);
    write_report(cells, config, out_dir);
    std::size_t failed = 0;
    for (const auto& c : cells) {
        failed += c.error ? 1 : 0;
    }
    std::cout << cells.size() << " cells written to " << out_dir;
    if (failed) {
        std::cout << ", " << failed << " with errors";
    }
    std::cout << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic random graphs and distributed colour trials"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "sample an instance");
    std::uint64_t n = 1024;
    double alpha = 0.75;
    double C = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    gen->add_option("--n", n, "expected vertex count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--alpha", alpha, "radial density exponent in (0.5, 1)")->required();
    gen->add_option("--C", C, "radius offset")->capture_default_str();
    gen->add_option("--seed", seed, "random seed")->capture_default_str();
    gen->add_option("--out", out, "instance file")->required();

    auto* check = app.add_subcommand("check", "test structural lemmas on an instance");
    std::string in;
    std::string lemma = "all";
    int level = -1;
    std::string json_path;
    check->add_option("--in", in, "instance file")->required()->check(CLI::ExistingFile);
    check->add_option("--lemma", lemma, "lemma name or 'all'")->capture_default_str();
    check->add_option("--level", level, "level for the leaves check (default ceil(3 ln ln n))");
    check->add_option("--json", json_path, "report file");

    auto* run_cmd = app.add_subcommand("run", "simulate a random colour trial");
    std::string algo = "rct";
    std::uint32_t colours = 0;
    std::string id_mode = "index";
    std::uint32_t max_rounds = 64;
    std::string trace_path;
    int target_level = -1;
    run_cmd->add_option("--in", in, "instance file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--algo", algo, "rct, rctid or rctdeg")->capture_default_str();
    run_cmd->add_option("--colours", colours, "colour space size")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--ids", id_mode, "index, random or adversarial")->capture_default_str();
    run_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    run_cmd->add_option("--max-rounds", max_rounds, "round limit")->capture_default_str()->check(CLI::PositiveNumber);
    run_cmd->add_option("--level", target_level, "target level for adversarial ids");
    run_cmd->add_option("--trace", trace_path, "trace file");

    auto* det = app.add_subcommand("det", "deterministic colouring");
    std::optional<double> epsilon;
    det->add_option("--in", in, "instance file")->required()->check(CLI::ExistingFile);
    det->add_option("--epsilon", epsilon, "split parameter in (0, 1), default (1 - alpha) / 2");
    det->add_option("--out", out, "colouring file");

    auto* sweep_cmd = app.add_subcommand("sweep", "phase diagram sweep");
    std::string config_path;
    sweep_cmd->add_option("--config", config_path, "TOML configuration")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_gen(n, alpha, C, seed, out);
        }
        if (check->parsed()) {
            return cmd_check(in, lemma, level, json_path);
        }
        if (run_cmd->parsed()) {
            return cmd_run(in, algo, colours, id_mode, seed, max_rounds, target_level, trace_path);
        }
        if (det->parsed()) {
            return cmd_det(in, epsilon, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(config_path, out);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
