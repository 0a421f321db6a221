#include <doctest.h>

#include <algorithm>
#include <map>

#include "common.hpp"
#include "tc8/coloring.hpp"
#include "tc8/extension.hpp"
#include "tc8/suites.hpp"

using namespace tc8;
using namespace tc8::test;

namespace {

MatchWitness first(const PlanarEmbedding& g, const std::string& lemma) {
    auto ws = match_configuration(catalog_pattern(lemma), g);
    REQUIRE_FALSE(ws.empty());
    return ws.front();
}

std::vector<int> sorted_colors(const TotalColoring& phi, const std::vector<int>& xs) {
    std::vector<int> out;
    for (int x : xs) out.push_back(phi[x]);
    std::sort(out.begin(), out.end());
    return out;
}

// Keeps drawing canonical-environment colorings until a branch with the given
// prefix runs; returns that result.
std::optional<ExtensionResult> find_branch(const std::string& fixture, const std::string& lemma,
                                           const std::string& prefix, int tries = 4000) {
    auto g = fx(fixture);
    auto w = first(g, lemma);
    auto plan = plan_reduction(g, lemma, w);
    Rng rng(7);
    for (int i = 0; i < tries; ++i) {
        auto red = sample_reduced_coloring(g.graph(), plan, rng, true);
        if (!red) continue;
        ExtendOptions eo;
        eo.reduced = &*red;
        auto res = reduce_and_extend(g, lemma, w, eo);
        if (res.branch.rfind(prefix, 0) == 0) return res;
    }
    return std::nullopt;
}

} // namespace

TEST_SUITE("extension") {

TEST_CASE("available colors") {
    auto g = fx("p2").graph();
    TotalColoring phi(g.element_count(), 9);
    phi.set(1, 2);
    phi.set(2, 3);
    CHECK(available_colors(g, phi, 0) == std::vector<int>{1, 4, 5, 6, 7, 8, 9});
    CHECK(error_code([&] { available_colors(g, phi, 1); }) == code(Errc::ElementAlreadyColored));

    // Center of a 4-star plus its edges and leaves use nine colors around edge 0-1.
    auto s = rot("5 4\n0: 1 2 3 4\n1: 0\n2: 0\n3: 0\n4: 0\n").graph();
    TotalColoring full(s.element_count(), 9);
    full.set(0, 1);
    full.set(1, 2);
    full.set(s.edge_element(0, 2), 3);
    full.set(s.edge_element(0, 3), 4);
    full.set(s.edge_element(0, 4), 5);
    // e0-1 sees v0, v1 and the three other edges: colors 1..5 are gone.
    CHECK(available_colors(s, full, s.edge_element(0, 1)) == std::vector<int>{6, 7, 8, 9});

    auto k = rot("10 9\n0: 1 2 3 4 5 6 7 8 9\n1: 0\n2: 0\n3: 0\n4: 0\n5: 0\n6: 0\n7: 0\n8: 0\n9: 0\n").graph();
    TotalColoring tight(k.element_count(), 9);
    for (int i = 2; i <= 9; ++i) tight.set(k.edge_element(0, i), i - 1);
    tight.set(1, 9);
    CHECK(available_colors(k, tight, k.edge_element(0, 1)).empty());
}

TEST_CASE("move text") {
    auto g = fx("k4").graph();
    std::vector<Move> ms = {assign_move(3, 5), uncolor_move({0, 1}), swap_move(g.edge_element(0, 1), g.edge_element(0, 2)),
                            alternate_move({g.edge_element(0, 1), g.edge_element(1, 2), g.edge_element(2, 3)})};
    CHECK(format_move(g, ms[0]) == "assign v3 5");
    CHECK(format_move(g, ms[2]) == "swap e0-1 e0-2");
    auto text = format_move_log(g, ms);
    CHECK(parse_move_log(g, "# header\n\n" + text) == ms);
    CHECK(error_code([&] { parse_move(g, "assign e0-9 1"); }) != 0);
    CHECK(error_code([&] { parse_move(g, "paint v1 1"); }) == code(Errc::ParseError));
}

TEST_CASE("swap and alternate") {
    auto g = fx("c4").graph();
    // C4 edges 0-1, 0-3, 1-2, 2-3 alternate 1, 2 around the cycle.
    TotalColoring phi(g.element_count(), 9);
    phi.set(0, 3);
    phi.set(1, 4);
    phi.set(2, 3);
    phi.set(3, 4);
    phi.set(g.edge_element(0, 1), 1);
    phi.set(g.edge_element(1, 2), 2);
    phi.set(g.edge_element(2, 3), 1);
    phi.set(g.edge_element(0, 3), 2);
    REQUIRE(verify_total_coloring(g, phi).empty());

    std::vector<int> cyc = {g.edge_element(0, 1), g.edge_element(1, 2), g.edge_element(2, 3), g.edge_element(0, 3)};
    auto r = apply_move(g, phi, alternate_move(cyc));
    CHECK(r.conflicts.empty());
    CHECK(verify_total_coloring(g, r.coloring).empty());
    CHECK(sorted_colors(r.coloring, cyc) == sorted_colors(phi, cyc));
    CHECK(r.coloring[cyc[0]] == 2);

    // Swapping a vertex with its own edge's neighbour creates a clash.
    auto s = apply_move(g, phi, swap_move(0, g.edge_element(1, 2)));
    CHECK_FALSE(s.conflicts.empty());
    CHECK(sorted_colors(s.coloring, {0, g.edge_element(1, 2)}) == sorted_colors(phi, {0, g.edge_element(1, 2)}));

    // Part of the cycle: the ends now clash with the untouched edge.
    std::vector<int> path(cyc.begin(), cyc.begin() + 3);
    CHECK_FALSE(apply_move(g, phi, alternate_move(path)).conflicts.empty());

    CHECK(error_code([&] { apply_move(g, phi, alternate_move({cyc[0], cyc[1], 0})); }) == code(Errc::InapplicableMove));
    CHECK(error_code([&] { apply_move(g, phi, swap_move(1, 1)); }) == code(Errc::InapplicableMove));
    CHECK(error_code([&] { apply_move(g, phi, assign_move(0, 10)); }) == code(Errc::InapplicableMove));
    auto holes = phi;
    holes.uncolor(1);
    CHECK(error_code([&] { apply_move(g, holes, swap_move(0, 1)); }) == code(Errc::InapplicableMove));
}

TEST_CASE("swaps with empty reports keep colorings proper") {
    auto e = fx("cfg-4e");
    const auto& g = e.graph();
    Rng rng(3);
    int clean = 0;
    for (int round = 0; round < 30; ++round) {
        auto phi = solve(g, 9, {.rng = &rng});
        REQUIRE(phi);
        for (int t = 0; t < 40; ++t) {
            int a = static_cast<int>(rng.below(g.element_count()));
            int b = static_cast<int>(rng.below(g.element_count()));
            if (a == b) continue;
            auto r = apply_move(g, *phi, swap_move(a, b));
            CHECK(sorted_colors(r.coloring, {a, b}) == sorted_colors(*phi, {a, b}));
            if (r.conflicts.empty()) {
                CHECK(verify_total_coloring(g, r.coloring).empty());
                ++clean;
            }
        }
    }
    CHECK(clean > 0);
}

TEST_CASE("greedy finish") {
    auto g = fx("cube").graph();
    auto phi = *solve(g, 9);
    phi.uncolor(0);
    std::vector<Move> log;
    auto done = greedy_finish_small(g, phi, 9, &log);
    CHECK(verify_total_coloring(g, done).empty());
    REQUIRE(log.size() == 1);
    CHECK(log[0].kind == Move::Assign);

    // 4-vertex whose eight partners use 1..8: only 9 is left.
    auto s = rot("5 4\n0: 1 2 3 4\n1: 0\n2: 0\n3: 0\n4: 0\n").graph();
    TotalColoring st(s.element_count(), 9);
    for (int i = 1; i <= 4; ++i) {
        st.set(i, i);
        st.set(s.edge_element(0, i), 4 + i);
    }
    CHECK(greedy_finish_small(s, st)[0] == 9);

    auto fan = fx("icosahedron").graph();
    auto f = *solve(fan, 9);
    f.uncolor(0);
    CHECK(error_code([&] { greedy_finish_small(fan, f); }) == code(Errc::PreconditionViolated));
    auto h = phi;
    h.uncolor(g.element_count() - 1);
    CHECK(error_code([&] { greedy_finish_small(g, h); }) == code(Errc::PreconditionViolated));
}

TEST_CASE("greedy never fails on 4- vertices") {
    Rng rng(11);
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        auto e = fx(fixture);
        const auto& g = e.graph();
        for (int round = 0; round < 5; ++round) {
            auto phi = solve(g, 9, {.rng = &rng});
            REQUIRE(phi);
            for (int v = 0; v < g.vertex_count(); ++v)
                if (g.degree(v) <= 4 && rng.chance(1, 2)) phi->uncolor(v);
            auto done = greedy_finish_small(g, *phi);
            CHECK(verify_total_coloring(g, done).empty());
        }
    }
}

TEST_CASE("uv-10 on P3") {
    auto g = fx("p3");
    auto w = first(g, "lem:uv-10");
    auto res = reduce_and_extend(g, "lem:uv-10", w);
    CHECK(verify_total_coloring(g.graph(), res.coloring).empty());
    CHECK(res.branch == "available");
    REQUIRE(res.moves.size() >= 2);
    CHECK(res.moves[0].kind == Move::Uncolor);
}

TEST_CASE("two 2-neighbours with a shared neighbour use surgery") {
    auto g = fx("lem-8-has-one-2-shared");
    auto w = first(g, "lem:8-has-one-2");
    auto plan = plan_reduction(g, "lem:8-has-one-2", w);
    CHECK(plan.scenario == "shared");
    CHECK(plan.surgery == "delete x1, x2; add v-y");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto res = reduce_and_extend(g, "lem:8-has-one-2", w, {.seed = seed});
        CHECK(res.branch == "surgery");
        CHECK(verify_total_coloring(g.graph(), res.coloring).empty());
    }
}

TEST_CASE("the swap branch of the 7-vertex lemma") {
    auto res = find_branch("lem-7-two-3s-adjacent", "lem:7-two-3s", "#3");
    REQUIRE(res.has_value());
    auto g = fx("lem-7-two-3s-adjacent");
    CHECK(verify_total_coloring(g.graph(), res->coloring).empty());
    CHECK(std::any_of(res->moves.begin(), res->moves.end(), [](auto& m) { return m.kind == Move::Swap; }));
    CHECK(res->branch == "#3 " + script_branches("lem:7-two-3s", "adjacent")[2]);
}

TEST_CASE("supplied reduced colorings") {
    auto g = fx("cfg-4e");
    auto w = first(g, "cfg:4e");
    auto plan = plan_reduction(g, "cfg:4e", w);
    auto red = solve(plan.reduced, 9);
    REQUIRE(red);
    auto res = reduce_and_extend(g, "cfg:4e", w, {.reduced = &*red});
    CHECK(verify_total_coloring(g.graph(), res.coloring).empty());
    // The moves replay on the transferred coloring.
    auto phi = transfer_to_host(g.graph(), plan, *red);
    for (std::size_t i = 1; i < res.moves.size(); ++i) phi = apply_move(g.graph(), phi, res.moves[i]).coloring;
    CHECK(phi == res.coloring);

    auto bad = *red;
    auto [a, b] = plan.reduced.edges().front();
    bad.set(a, bad[b]);
    CHECK(error_code([&] { reduce_and_extend(g, "cfg:4e", w, {.reduced = &bad}); }) == code(Errc::InvalidArgument));
}

TEST_CASE("witness that does not fit") {
    auto g = fx("cfg-4e");
    auto w = first(g, "cfg:4e");
    w.map[0] = w.map[1];
    CHECK(error_code([&] { plan_reduction(g, "cfg:4e", w); }) == code(Errc::PreconditionViolated));
}

TEST_CASE("case tables") {
    std::map<std::string, std::uint64_t> expect_envs = {
        {"lem-8-has-one-2-adjacent", 0}, {"lem-7-two-3s-adjacent", 0}, {"lem-8-2and3-apart", 0},
        {"lem-8-diamond3-no2", 0},       {"lem-8-233383-4", 0},        {"cfg-4d", 0},
        {"cfg-4e", 0},                   {"cfg-4a", 0},                {"lem-8-two-diamonds", 0},
    };
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        if (!expect_envs.count(fixture)) continue;
        CAPTURE(fixture);
        auto g = fx(fixture);
        auto rep = check_case_table(g, lemma, first(g, lemma), false);
        CHECK(rep.environments > 0);
        CHECK(rep.misses == 0);
        std::uint64_t sum = 0;
        for (auto& [b, c] : rep.branch_counts) sum += c;
        CHECK(sum == rep.environments);
    }
}

TEST_CASE("the written two-diamond argument leaves gaps that the repairs close") {
    auto g = fx("lem-8-two-diamonds");
    auto w = first(g, "lem:8-two-diamonds");
    auto strict = check_case_table(g, "lem:8-two-diamonds", w, true);
    CHECK(strict.misses > 0);
    REQUIRE_FALSE(strict.first_misses.empty());
    auto plan = plan_reduction(g, "lem:8-two-diamonds", w);
    auto label = run_case_table(g, plan, w, strict.first_misses[0], false);
    REQUIRE(label.has_value());
    CHECK(label->find("repair") != std::string::npos);
    CHECK_FALSE(run_case_table(g, plan, w, strict.first_misses[0], true).has_value());
}

TEST_CASE("search extension") {
    auto k4 = fx("k4").graph();
    TotalColoring empty(k4.element_count(), 5);
    CHECK(search_extension(k4, empty, 5, 0).has_value());
    CHECK_FALSE(search_extension(k4, TotalColoring(k4.element_count(), 4), 4, 0).has_value());

    // No proper 4-coloring of K4 leaves just the edge 0-1 open, so the
    // search starts from the vertices and one edge instead.
    auto cut = Graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    bool one_edge_short = false;
    enumerate_colorings(cut, 4, nullptr, ~std::uint64_t{0}, [&](const TotalColoring& c) {
        one_edge_short = c[0] != c[1];
        return !one_edge_short;
    });
    CHECK_FALSE(one_edge_short);
    TotalColoring c4(k4.element_count(), 4);
    for (int v = 0; v < 4; ++v) c4.set(v, v + 1);
    c4.set(k4.edge_element(2, 3), 1);
    REQUIRE(verify_total_coloring(k4, c4, true).empty());
    CHECK_FALSE(search_extension(k4, c4, 4, 3).has_value());

    auto g = fx("cfg-4e");
    auto w = first(g, "cfg:4e");
    auto plan = plan_reduction(g, "cfg:4e", w);
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        auto red = sample_reduced_coloring(g.graph(), plan, rng, true);
        if (!red) continue;
        auto phi = transfer_to_host(g.graph(), plan, *red);
        auto got = search_extension(g.graph(), phi, 9, 3);
        REQUIRE(got.has_value());
        CHECK(verify_total_coloring(g.graph(), *got).empty());
    }
}

TEST_CASE("every scripted lemma extends on its fixture") {
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        CAPTURE(fixture);
        auto g = fx(fixture);
        auto w = first(g, lemma);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto res = reduce_and_extend(g, lemma, w, {.seed = seed});
            CHECK(verify_total_coloring(g.graph(), res.coloring).empty());
            CHECK(res.coloring.complete());
        }
    }
}

} // TEST_SUITE

TEST_SUITE("casetable") {

// Every blocked environment of every case table, except the i=7 instance
// whose enumeration takes minutes.
TEST_CASE("exhaustive case tables") {
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        if (fixture == "lem-8-233383-7") continue;
        CAPTURE(fixture);
        auto g = fx(fixture);
        auto w = first(g, lemma);
        auto rep = check_case_table(g, lemma, w, false);
        CHECK(rep.misses == 0);
        if (plan_reduction(g, lemma, w).anchors.empty()) {
            CHECK(rep.environments == 0);
            continue;
        }
        CHECK(rep.environments > 0);
        auto strict = check_case_table(g, lemma, w, true);
        CHECK(strict.environments == rep.environments);
        if (lemma == "lem:8-two-diamonds") CHECK(strict.misses > 0);
        else CHECK(strict.misses == 0);
    }
}

} // TEST_SUITE
