#include <doctest.h>

#include <set>

#include "common.hpp"
#include "tc8/generator.hpp"

using namespace tc8;
using namespace tc8::test;

namespace {

// Faces counted by walking darts with an explicit visited table.
int count_faces_by_hand(const PlanarEmbedding::Rotation& r) {
    std::set<std::pair<int, int>> seen;
    int faces = 0;
    for (int u = 0; u < static_cast<int>(r.size()); ++u)
        for (int v : r[u]) {
            if (seen.count({u, v})) continue;
            ++faces;
            int a = u, b = v;
            while (!seen.count({a, b})) {
                seen.insert({a, b});
                const auto& rb = r[b];
                std::size_t i = 0;
                while (rb[i] != a) ++i;
                int c = rb[(i + 1) % rb.size()];
                a = b;
                b = c;
            }
        }
    return faces;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("K3 has three edges and two triangular faces") {
    auto g = PlanarEmbedding::build({{1, 2}, {2, 0}, {0, 1}});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    REQUIRE(g.face_count() == 2);
    for (auto& f : g.faces()) CHECK(f.length() == 3);
}

TEST_CASE("the 4-fan fixture") {
    auto g = fx("fan4");
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 9);
    CHECK(g.face_count() == 5);
    auto s = g.degree_stats(0);
    CHECK(s.degree == 5);
    CHECK(s.m[3] == 4);
}

TEST_CASE("K5 with ascending rotations is rejected") {
    PlanarEmbedding::Rotation r(5);
    for (int v = 0; v < 5; ++v)
        for (int w = 0; w < 5; ++w)
            if (w != v) r[v].push_back(w);
    CHECK(count_faces_by_hand(r) != 2 - 5 + 10);
    CHECK(error_code([&] { PlanarEmbedding::build(r); }) == code(Errc::NonPlanarEmbedding));
}

TEST_CASE("bridge faces") {
    auto p2 = fx("p2");
    REQUIRE(p2.face_count() == 1);
    CHECK(p2.faces()[0].length() == 2);

    auto star = fx("star3");
    REQUIRE(star.face_count() == 1);
    CHECK(star.faces()[0].length() == 6);
    CHECK(star.faces()[0].repeats_vertex());
    for (int leaf = 1; leaf <= 3; ++leaf) {
        auto s = star.degree_stats(leaf);
        CHECK(s.degree == 1);
        CHECK(s.m[3] == 0);
    }
}

TEST_CASE("cube faces match a hand trace") {
    auto g = fx("cube");
    CHECK(g.face_count() == count_faces_by_hand(g.rotation()));
    REQUIRE(g.face_count() == 6);
    for (auto& f : g.faces()) CHECK(f.length() == 4);
}

TEST_CASE("K3 degree stats") {
    auto g = fx("k3");
    for (int v = 0; v < 3; ++v) {
        auto s = g.degree_stats(v);
        CHECK(s.degree == 2);
        CHECK(s.m[3] == 2);
        CHECK(s.n[2] == 2);
    }
}

TEST_CASE("malformed rotation tables") {
    CHECK(error_code([] { PlanarEmbedding::build({{1}, {}}); }) == code(Errc::AsymmetricAdjacency));
    CHECK(error_code([] { PlanarEmbedding::build({{0}}); }) == code(Errc::LoopOrMultiEdge));
    CHECK(error_code([] { PlanarEmbedding::build({{1, 1}, {0, 0}}); }) == code(Errc::LoopOrMultiEdge));
    CHECK(error_code([] { PlanarEmbedding::build({{1}, {0}, {3}, {2}}); }) == code(Errc::Disconnected));
    CHECK(error_code([] { PlanarEmbedding::build({{5}, {}}); }) == code(Errc::UnknownVertex));
}

TEST_CASE("element ids") {
    auto g = fx("k3").graph();
    CHECK(g.element_count() == 6);
    CHECK(g.edge_element(0, 1) == 3);
    CHECK(g.edge_element(2, 1) == 5);
    CHECK(g.element_name(4) == "e0-2");
    CHECK(g.element_name(2) == "v2");
}

TEST_CASE("face and degree invariants on generated graphs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 5 + static_cast<int>(seed % 30);
        cfg.seed = seed;
        cfg.deletion_probability = (seed % 3) * 0.2;
        PlanarEmbedding g;
        try {
            g = generate_planar(cfg);
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::GenerationStalled);
            continue;
        }
        CAPTURE(seed);
        int total = 0;
        for (auto& f : g.faces()) total += f.length();
        CHECK(total == 2 * g.edge_count());
        CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
        CHECK(g.face_count() == count_faces_by_hand(g.rotation()));
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto s = g.degree_stats(v);
            int nk = 0, mk = 0;
            for (auto& [k, c] : s.n) nk += c;
            for (auto& [k, c] : s.m) mk += c;
            CHECK(nk == s.degree);
            CHECK(mk == s.degree);
        }
    }
}

} // TEST_SUITE
