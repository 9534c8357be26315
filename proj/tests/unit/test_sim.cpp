#include "helpers.hpp"

#include "hypercolor/parallel.hpp"
#include "hypercolor/sim.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

using namespace hypercolor;
using testing::graph_from_edges;

namespace {

IdAssignment by_index(const HrgGraph& g) {
    return assign_ids(g, ids::ByIndex{});
}

SimState fresh(const HrgGraph& g, std::uint32_t k, std::uint64_t seed = 0) {
    return SimState::initial(g, {k}, by_index(g), seed);
}

bool is_permutation(const std::vector<std::uint32_t>& ids) {
    std::vector<std::uint32_t> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
            return false;
        }
    }
    return true;
}

// Commits of one round decided from explicit candidates, independent of the engine.
std::vector<bool> decide(const HrgGraph& g, PriorityRule rule, const std::vector<Colour>& candidate,
                         const std::vector<std::uint32_t>& ids) {
    std::vector<bool> commit(g.size(), true);
    for (VertexId u = 0; u < g.size(); ++u) {
        for (const VertexId v : g.neighbours(u)) {
            if (candidate[u] != candidate[v]) {
                continue;
            }
            const bool beaten = rule == PriorityRule::Symmetric
                                || (rule == PriorityRule::SmallerIdWins && ids[v] < ids[u])
                                || (rule == PriorityRule::LargerDegreeWins
                                    && (g.degree(v) > g.degree(u) || (g.degree(v) == g.degree(u) && ids[v] < ids[u])));
            if (beaten) {
                commit[u] = false;
            }
        }
    }
    return commit;
}

} // namespace

TEST_CASE("rule names round trip") {
    for (const auto rule : {PriorityRule::Symmetric, PriorityRule::SmallerIdWins, PriorityRule::LargerDegreeWins}) {
        CHECK(rule_from_string(to_string(rule)) == rule);
    }
    CHECK_FALSE(rule_from_string("rctx"));
}

TEST_CASE("rank selection skips forbidden colours") {
    const std::vector<Colour> forbidden{0, 2, 3, 7};
    std::vector<Colour> free;
    for (Colour c = 0; c < 12; ++c) {
        if (!std::binary_search(forbidden.begin(), forbidden.end(), c)) {
            free.push_back(c);
        }
    }
    for (std::uint64_t j = 0; j < free.size(); ++j) {
        CHECK(select_free_colour(j, forbidden) == free[j]);
    }
}

TEST_CASE("candidate from a singleton palette") {
    const auto g = testing::path_graph(3);
    auto state = fresh(g, 3);
    state.forbidden[1] = {0, 2};
    for (std::uint32_t t = 1; t < 50; ++t) {
        CHECK(candidate_colour(1, t, state) == Colour{1});
    }
    state.forbidden[0] = {0, 1, 2};
    CHECK_FALSE(candidate_colour(0, 1, state));
}

TEST_CASE("candidates are uniform over the palette") {
    const auto g = graph_from_edges(1, {});
    const auto state = fresh(g, 3, 12345);
    std::array<int, 3> counts{};
    const int draws = 100000;
    for (int t = 1; t <= draws; ++t) {
        ++counts[*candidate_colour(0, static_cast<std::uint32_t>(t), state)];
    }
    double chi2 = 0.0;
    for (const int c : counts) {
        CHECK(std::abs(c / static_cast<double>(draws) - 1.0 / 3.0) <= 0.01);
        const double expected = draws / 3.0;
        chi2 += (c - expected) * (c - expected) / expected;
    }
    CHECK(chi2 < 13.8); // chi-square, 2 degrees of freedom, p = 0.001
}

TEST_CASE("candidates are a pure function of seed, vertex and round") {
    const auto g = graph_from_edges(4, {});
    const auto a = fresh(g, 1000, 7);
    const auto b = fresh(g, 1000, 7);
    const auto c = fresh(g, 1000, 8);
    int differs = 0;
    for (VertexId u = 0; u < 4; ++u) {
        for (std::uint32_t t = 1; t < 20; ++t) {
            CHECK(candidate_colour(u, t, a) == candidate_colour(u, t, b));
            differs += candidate_colour(u, t, a) != candidate_colour(u, t, c) ? 1 : 0;
        }
    }
    CHECK(differs > 60);
}

TEST_CASE("two adjacent vertices with one colour") {
    const auto g = graph_from_edges(2, {{0, 1}});
    SUBCASE("symmetric rule locks") {
        auto state = fresh(g, 1);
        step_in_place(g, state, PriorityRule::Symmetric);
        CHECK(state.round == 1);
        CHECK(state.uncoloured_count() == 2);
        const auto certificate = find_certificate(g, state, PriorityRule::Symmetric);
        REQUIRE(certificate);
        CHECK(certificate->kind == Certificate::Kind::LockedPair);
        CHECK(certificate->u == 0);
        CHECK(certificate->v == 1);
        CHECK(certificate->colour == 0);
        const auto result = run(g, by_index(g), {1, PriorityRule::Symmetric, 0, 64, true});
        CHECK(result.outcome.kind == RunOutcome::Kind::NeverTerminates);
        CHECK(result.outcome.rounds == 0);
    }
    SUBCASE("smaller id commits, the other runs out of colours") {
        auto state = fresh(g, 1);
        step_in_place(g, state, PriorityRule::SmallerIdWins);
        CHECK(state.assigned[0] == Colour{0});
        CHECK_FALSE(state.assigned[1]);
        const auto certificate = find_certificate(g, state, PriorityRule::SmallerIdWins);
        REQUIRE(certificate);
        CHECK(certificate->kind == Certificate::Kind::EmptyPalette);
        CHECK(certificate->u == 1);
    }
}

TEST_CASE("triangle with three colours: exact round-one law") {
    const auto g = testing::complete_graph(3);
    const std::vector<std::uint32_t> ids{0, 1, 2};
    int full = 0;
    for (Colour a = 0; a < 3; ++a) {
        for (Colour b = 0; b < 3; ++b) {
            for (Colour c = 0; c < 3; ++c) {
                const auto commit = decide(g, PriorityRule::Symmetric, {a, b, c}, ids);
                full += std::all_of(commit.begin(), commit.end(), [](bool x) { return x; }) ? 1 : 0;
            }
        }
    }
    CHECK(full == 6);

    const int runs = 100000;
    int coloured = 0;
    for (int seed = 0; seed < runs; ++seed) {
        auto state = fresh(g, 3, static_cast<std::uint64_t>(seed));
        step_in_place(g, state, PriorityRule::Symmetric);
        coloured += state.uncoloured_count() == 0 ? 1 : 0;
    }
    CHECK(std::abs(coloured / static_cast<double>(runs) - 6.0 / 27.0) <= 0.01);
}

TEST_CASE("engine commits match the independent decision rule") {
    const auto g = generate({600, 0.6, 0.0, 4});
    for (const auto rule : {PriorityRule::Symmetric, PriorityRule::SmallerIdWins, PriorityRule::LargerDegreeWins}) {
        const auto ids = assign_ids(g, ids::RandomPermutation{3});
        auto state = SimState::initial(g, {6}, ids, 99);
        const auto before = state;
        std::vector<Colour> candidate(g.size());
        for (VertexId u = 0; u < g.size(); ++u) {
            candidate[u] = *candidate_colour(u, 1, before);
        }
        const auto commit = decide(g, rule, candidate, ids.ids);
        step_in_place(g, state, rule);
        for (VertexId u = 0; u < g.size(); ++u) {
            CHECK(state.coloured(u) == commit[u]);
            if (commit[u]) {
                CHECK(state.assigned[u] == candidate[u]);
            }
        }
    }
}

TEST_CASE("path on three vertices, two colours, degree priority: done within two rounds") {
    const auto g = testing::path_graph(3);
    // every round-one candidate triple leaves a state that round two always completes
    const std::vector<std::uint32_t> ids{0, 1, 2};
    for (int mask = 0; mask < 8; ++mask) {
        const std::vector<Colour> candidate{Colour(mask & 1), Colour((mask >> 1) & 1), Colour((mask >> 2) & 1)};
        const auto commit = decide(g, PriorityRule::LargerDegreeWins, candidate, ids);
        CHECK(commit[1]); // the centre has the largest degree
        std::vector<std::optional<Colour>> assigned(3);
        for (VertexId u = 0; u < 3; ++u) {
            if (commit[u]) {
                assigned[u] = candidate[u];
            }
        }
        // leaves are not adjacent, so each leaf's single free colour commits next round
        for (const VertexId leaf : {0u, 2u}) {
            if (!assigned[leaf]) {
                assigned[leaf] = 1 - *assigned[1];
            }
        }
        CHECK(validate_colouring(g, assigned).ok);
    }
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto result = run(g, by_index(g), {2, PriorityRule::LargerDegreeWins, seed, 64, false});
        CHECK(result.outcome.kind == RunOutcome::Kind::Completed);
        CHECK(result.outcome.rounds <= 2);
    }
}

TEST_CASE("two adjacent vertices, two colours, id priority: done within two rounds") {
    const auto g = graph_from_edges(2, {{0, 1}});
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto result = run(g, by_index(g), {2, PriorityRule::SmallerIdWins, seed, 64, false});
        CHECK(result.outcome.kind == RunOutcome::Kind::Completed);
        CHECK(result.outcome.rounds <= 2);
    }
}

TEST_CASE("single vertex with one colour completes in one round") {
    const auto g = graph_from_edges(1, {});
    const auto result = run(g, by_index(g), {1, PriorityRule::Symmetric, 0, 64, true});
    CHECK(result.outcome.kind == RunOutcome::Kind::Completed);
    CHECK(result.outcome.rounds == 1);
    CHECK(result.trace.size() == 2);
    CHECK(result.trace[0].uncoloured_total == 1);
    CHECK(result.trace[1].uncoloured_total == 0);
    CHECK_FALSE(result.trace[1].min_palette);
}

TEST_CASE("round limit is reported separately") {
    const auto g = testing::complete_graph(6);
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 50 && !seen; ++seed) {
        const auto result = run(g, by_index(g), {12, PriorityRule::Symmetric, seed, 1, false});
        if (result.outcome.kind == RunOutcome::Kind::RoundLimit) {
            seen = true;
            CHECK(result.outcome.rounds == 1);
            CHECK(result.outcome.uncoloured > 0);
            CHECK_FALSE(result.outcome.certificate);
        }
    }
    CHECK(seen);
    CHECK_THROWS_AS(run(g, by_index(g), {12, PriorityRule::Symmetric, 0, 0, false}), DomainError);
}

TEST_CASE("id assignment strategies") {
    const auto star = testing::star_graph(5);
    CHECK(by_index(star).ids == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});

    auto coords = star.coords();
    const double R = 10.0;
    coords[0] = {R - 4.5, 0.0};
    for (VertexId v = 1; v <= 5; ++v) {
        coords[v] = {R - 0.5, 0.1 * v};
    }
    const auto placed = HrgGraph::from_edges(star.params(), R, coords, star.edges());
    const auto adversarial = assign_ids(placed, ids::AdversarialLeafPriority{4, false});
    CHECK(adversarial.target == VertexId{0});
    CHECK(adversarial.ids == std::vector<std::uint32_t>{5, 0, 1, 2, 3, 4});
    CHECK_THROWS_AS(assign_ids(placed, ids::AdversarialLeafPriority{3, false}), NoEligibleTarget);
    CHECK(assign_ids(placed, ids::AdversarialLeafPriority{3, true}).target == VertexId{0});

    const auto g = generate({3000, 0.6, 0.0, 2});
    CHECK(is_permutation(assign_ids(g, ids::RandomPermutation{1}).ids));
    CHECK(assign_ids(g, ids::RandomPermutation{1}).ids == assign_ids(g, ids::RandomPermutation{1}).ids);
    const auto adv = assign_ids(g, ids::AdversarialLeafPriority{8, true});
    CHECK(is_permutation(adv.ids));
    REQUIRE(adv.target);
    CHECK(adv.ids[*adv.target] == g.size() - 1);
    for (const VertexId leaf : leaves_of(g, *adv.target)) {
        CHECK(adv.ids[leaf] < leaves_of(g, *adv.target).size());
    }
}

TEST_CASE("initial state validation") {
    const auto g = testing::path_graph(3);
    CHECK_THROWS_AS(SimState::initial(g, {0}, by_index(g), 0), DomainError);
    CHECK_THROWS_AS(SimState::initial(g, {2}, IdAssignment{{0, 0, 1}, std::nullopt}, 0), DomainError);
    CHECK_THROWS_AS(SimState::initial(g, {2}, IdAssignment{{0, 1}, std::nullopt}, 0), DomainError);
}

TEST_CASE("colouring validation") {
    const auto g = testing::path_graph(3);
    CHECK(validate_colouring(g, {0u, 1u, 0u}).ok);
    const auto bad = validate_colouring(g, {0u, 1u, 1u});
    CHECK_FALSE(bad.ok);
    CHECK(bad.conflict == Edge{1, 2});
    const std::vector<std::optional<Colour>> partial{0u, std::nullopt, 0u};
    CHECK(validate_colouring(g, partial, false).ok);
    const auto total = validate_colouring(g, partial, true);
    CHECK_FALSE(total.ok);
    CHECK(total.first_uncoloured == VertexId{1});
}

TEST_CASE("properness and monotonicity every round") {
    const auto g = generate({3000, 0.65, 0.0, 8});
    for (const auto rule : {PriorityRule::Symmetric, PriorityRule::SmallerIdWins, PriorityRule::LargerDegreeWins}) {
        auto state = SimState::initial(g, {static_cast<std::uint32_t>(max_degree(g) / 3 + 1)},
                                       assign_ids(g, ids::RandomPermutation{5}), 21);
        for (int t = 0; t < 6 && state.uncoloured_count() > 0; ++t) {
            const auto before = state;
            step_in_place(g, state, rule);
            CHECK(validate_colouring(g, state.assigned, false).ok);
            for (VertexId u = 0; u < g.size(); ++u) {
                if (before.coloured(u)) {
                    CHECK(state.assigned[u] == before.assigned[u]);
                } else if (!state.coloured(u)) {
                    CHECK(state.palette_size(u) <= before.palette_size(u));
                }
                std::set<Colour> expected;
                for (const VertexId v : g.neighbours(u)) {
                    if (state.assigned[v]) {
                        expected.insert(*state.assigned[v]);
                    }
                }
                CHECK(std::vector<Colour>(expected.begin(), expected.end()) == state.forbidden[u]);
            }
        }
    }
}

TEST_CASE("round two palettes keep the slack") {
    const auto g = generate({4000, 0.7, 0.0, 3});
    const auto k = static_cast<std::uint32_t>(3 * max_degree(g));
    auto state = fresh(g, k, 4);
    step_in_place(g, state, PriorityRule::Symmetric);
    for (VertexId u = 0; u < g.size(); ++u) {
        CHECK(state.palette_size(u) >= k - g.degree(u));
        CHECK(state.palette_size(u) >= 2 * k / 3);
    }
}

TEST_CASE("runs do not depend on the thread count") {
    const auto g = generate({20000, 0.6, 0.0, 10});
    const RunConfig config{static_cast<std::uint32_t>(max_degree(g) / 4 + 1), PriorityRule::LargerDegreeWins, 3, 64, true};
    const auto ids = assign_ids(g, ids::RandomPermutation{2});
    set_thread_count(1);
    const auto single = run(g, ids, config);
    set_thread_count(4);
    const auto multi = run(g, ids, config);
    set_thread_count(0);
    CHECK(single.final_state.assigned == multi.final_state.assigned);
    CHECK(single.outcome.rounds == multi.outcome.rounds);
    CHECK(single.trace.size() == multi.trace.size());
}

TEST_CASE("trace records per-level counts and palette minima") {
    const auto g = generate({3000, 0.75, 0.0, 6});
    const auto result = run(g, by_index(g), {static_cast<std::uint32_t>(max_degree(g)), PriorityRule::Symmetric, 1, 64, true});
    REQUIRE(result.trace.size() == result.outcome.rounds + 1);
    for (const auto& t : result.trace) {
        CHECK(std::accumulate(t.uncoloured_per_level.begin(), t.uncoloured_per_level.end(), std::size_t{0})
              == t.uncoloured_total);
    }
    CHECK(result.trace[0].max_uncoloured_degree == max_degree(g));
    CHECK(result.trace[0].min_palette == static_cast<std::uint32_t>(max_degree(g)));
}
