#include <doctest.h>

#include <algorithm>

#include "common.hpp"
#include "tc8/generator.hpp"
#include "tc8/patterns.hpp"
#include "tc8/rng.hpp"
#include "tc8/suites.hpp"

using namespace tc8;
using namespace tc8::test;

namespace {

bool has_lemma(const std::vector<StructuralViolation>& vs, const std::string& id) {
    return std::any_of(vs.begin(), vs.end(), [&](auto& v) { return v.lemma == id; });
}

PlanarEmbedding without_edge(const PlanarEmbedding& g, int a, int b) {
    auto r = g.rotation();
    std::erase(r[a], b);
    std::erase(r[b], a);
    return PlanarEmbedding::build(r);
}

} // namespace

TEST_SUITE("patterns") {

TEST_CASE("catalog ids") {
    std::vector<std::string> ids;
    for (auto& p : pattern_catalog()) ids.push_back(p.id);
    for (auto id : {"lem:min-deg", "lem:uv-10", "lem:8-has-one-2", "lem:7-two-3s", "lem:8-2and3", "lem:8-diamond3-no2",
                    "lem:8-two-diamonds", "lem:8-233383-4", "lem:8-233383-5", "lem:8-233383-6", "lem:8-233383-7",
                    "cfg:4a", "cfg:4b", "cfg:4c", "cfg:4d", "cfg:4e"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    CHECK(error_code([] { catalog_pattern("lem:nope"); }) == code(Errc::UnknownPattern));
}

TEST_CASE("pattern text round trip") {
    for (auto& p : pattern_catalog()) {
        auto again = parse_pattern(format_pattern(p));
        CHECK(format_pattern(again) == format_pattern(p));
    }
    CHECK(error_code([] { parse_pattern("pattern x\nvertex a exact:3\nedge a b\n"); }) != 0);
    CHECK(error_code([] { parse_pattern("pattern x\nvertex a sometimes:3\n"); }) == code(Errc::ParseError));
}

TEST_CASE("4-fan detection") {
    auto fan = fx("fan4");
    auto w = contains_four_fan(fan);
    REQUIRE(w.has_value());
    CHECK(w->map[0] == 0);
    CHECK_FALSE(contains_four_fan(fx("c4")).has_value());
    CHECK_FALSE(contains_four_fan(fx("cube")).has_value());

    auto ico = fx("icosahedron");
    CHECK(contains_four_fan(ico).has_value());
    CHECK_FALSE(brute_force_matches(four_fan_pattern(), ico).empty());
}

TEST_CASE("small hosts") {
    CHECK(match_configuration(catalog_pattern("cfg:4a"), fx("c8")).empty());
    CHECK(match_configuration(catalog_pattern("lem:uv-10"), fx("k3")).size() == 3);

    auto k3 = structural_violations(fx("k3"));
    CHECK(has_lemma(k3, "lem:uv-10"));
    CHECK(has_lemma(structural_violations(fx("k1")), "lem:min-deg"));
    CHECK(has_lemma(structural_violations(fx("star3")), "lem:uv-10"));
}

TEST_CASE("each lemma fixture contains its configuration") {
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        CAPTURE(fixture);
        auto g = fx(fixture);
        CHECK(g.graph().max_degree() <= 8);
        CHECK_FALSE(contains_four_fan(g).has_value());
        auto ws = match_configuration(catalog_pattern(lemma), g);
        CHECK_FALSE(ws.empty());
        CHECK(has_lemma(structural_violations(g), lemma));
    }
}

TEST_CASE("matcher agrees with brute force on fixtures") {
    for (auto& name : fixture_names()) {
        auto g = fx(name);
        if (g.vertex_count() > 10) continue;
        CAPTURE(name);
        for (auto& p : pattern_catalog()) {
            CAPTURE(p.id);
            auto a = match_configuration(p, g);
            auto b = brute_force_matches(p, g);
            std::sort(b.begin(), b.end(), [](auto& x, auto& y) {
                return std::tie(x.variant, x.map) < std::tie(y.variant, y.map);
            });
            CHECK(a == b);
        }
    }
}

TEST_CASE("witnesses re-validate") {
    for (auto& [fixture, lemma] : reducibility_fixtures()) {
        auto g = fx(fixture);
        for (auto& p : pattern_catalog())
            for (auto& w : match_configuration(p, g)) CHECK(validate_witness(p, w, g));
    }
    auto g = fx("k3");
    auto& p = catalog_pattern("lem:uv-10");
    auto w = match_configuration(p, g).front();
    w.map[1] = w.map[0];
    CHECK_FALSE(validate_witness(p, w, g));
}

TEST_CASE("4-fans do not appear when edges are removed") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 9 + static_cast<int>(seed % 5);
        cfg.seed = seed;
        cfg.forbid_four_fan = false;
        cfg.max_degree = 8;
        auto g = generate_planar(cfg);
        Rng rng(seed);
        bool had = contains_four_fan(g).has_value();
        for (int step = 0; step < 12; ++step) {
            auto edges = g.graph().edges();
            rng.shuffle(edges);
            bool removed = false;
            for (auto [a, b] : edges) {
                try {
                    g = without_edge(g, a, b);
                    removed = true;
                    break;
                } catch (const Error&) {
                }
            }
            if (!removed) break;
            bool has = contains_four_fan(g).has_value();
            CHECK((has <= had));
            had = has;
        }
    }
}

} // TEST_SUITE
