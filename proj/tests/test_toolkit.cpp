#include <doctest.h>

#include <filesystem>

#include "common.hpp"
#include "tc8/generator.hpp"
#include "tc8/manifest.hpp"
#include "tc8/patterns.hpp"
#include "tc8/rng.hpp"

using namespace tc8;
using namespace tc8::test;

namespace {

const std::string src_dir = TC8_SOURCE_DIR;

// Reference xoshiro256** written out from the published algorithm.
struct RefXoshiro {
    std::uint64_t s[4];
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    explicit RefXoshiro(std::uint64_t seed) {
        for (auto& w : s) {
            seed += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = seed;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }
    std::uint64_t next() {
        std::uint64_t r = rotl(s[1] * 5, 7) * 9;
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return r;
    }
};

} // namespace

TEST_SUITE("toolkit") {

TEST_CASE("splitmix64 and xoshiro256**") {
    std::uint64_t st = 0;
    CHECK(splitmix64(st) == 0xe220a8397b1dcdafULL);
    for (std::uint64_t seed : {0ULL, 1ULL, 2024ULL, ~0ULL}) {
        Rng a(seed);
        RefXoshiro b(seed);
        for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    }
    Rng r(9);
    for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
}

TEST_CASE("embedding text round trip") {
    auto text = fixture_text("k3");
    CHECK(serialize_embedding(parse_embedding(text)) == text);
    for (auto& name : fixture_names()) {
        auto g = fx(name);
        auto again = parse_embedding(serialize_embedding(g));
        CHECK(again.rotation() == g.rotation());
    }
    CHECK(parse_embedding("3 3\r\n0: 1 2\r\n1: 2 0\r\n2: 0 1\r\n").face_count() == 2);
}

TEST_CASE("embedding parse errors carry lines") {
    try {
        parse_embedding("# comment\n3 2\n0: 1\n1: 0 2\n2: 0\n");
        FAIL("accepted an asymmetric table");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AsymmetricAdjacency);
        CHECK(e.line() > 0);
    }
    try {
        parse_embedding("2 1\n0: 1\n1: x\n");
        FAIL("accepted a bad token");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(e.line() == 3);
    }
    CHECK(error_code([] { parse_embedding("3 3\n0: 1 2\n1: 2 0\n"); }) != 0);
    CHECK(error_code([] { parse_embedding("2 5\n0: 1\n1: 0\n"); }) != 0);
}

TEST_CASE("cfg:4a fixture structure") {
    auto g = fx("cfg-4a");
    auto w = match_configuration(catalog_pattern("cfg:4a"), g);
    REQUIRE(w.size() == 1);
    int v = w[0].map[0];
    CHECK(g.degree(v) == 8);
    CHECK(g.graph().max_degree() == 8);
    auto& var = catalog_pattern("cfg:4a").variants[0];
    for (auto name : {"t", "y", "z"}) CHECK(g.degree(w[0].map[var.index_of(name)]) == 3);
}

TEST_CASE("generator") {
    GeneratorConfig k4;
    k4.n = 4;
    k4.seed = 3;
    k4.forbid_four_fan = false;
    auto g = generate_planar(k4);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 6);
    CHECK(g.face_count() == 4);

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 8 + static_cast<int>(seed);
        cfg.seed = seed;
        cfg.deletion_probability = 0.15;
        try {
            auto a = generate_planar(cfg);
            auto b = generate_planar(cfg);
            CHECK(serialize_embedding(a) == serialize_embedding(b));
            CHECK(a.vertex_count() == cfg.n);
            CHECK(a.vertex_count() - a.edge_count() + a.face_count() == 2);
            CHECK(a.graph().max_degree() <= 8);
            CHECK_FALSE(contains_four_fan(a).has_value());
        } catch (const Error& e) {
            CHECK(e.code() == Errc::GenerationStalled);
        }
    }
    GeneratorConfig tiny;
    tiny.n = 2;
    CHECK(error_code([&] { generate_planar(tiny); }) == code(Errc::InvalidArgument));
}

TEST_CASE("generator golden output") {
    auto dir = src_dir + "/tests/golden";
    auto m = CorpusManifest::parse(read_text_file(dir + "/MANIFEST"));
    CHECK(m.verify(dir).empty());
    const auto* e = m.find("gen-n12.rot");
    REQUIRE(e != nullptr);
    GeneratorConfig cfg;
    cfg.n = 12;
    cfg.seed = 2024;
    CHECK(e->provenance == "gen:" + cfg.describe());
    CHECK(serialize_embedding(generate_planar(cfg)) == read_text_file(dir + "/gen-n12.rot"));
}

TEST_CASE("checksums and manifests") {
    CHECK(content_checksum("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(content_checksum("a\r\nb\r\n") == content_checksum("a\nb\n"));
    CHECK(content_checksum("a\rb\r") == content_checksum("a\nb\n"));

    auto dir = src_dir + "/data/fixtures";
    auto m = CorpusManifest::parse(read_text_file(dir + "/MANIFEST"));
    CHECK(m.verify(dir).empty());
    for (auto& name : fixture_names()) {
        const auto* e = m.find(name + ".rot");
        REQUIRE_MESSAGE(e != nullptr, name);
        CHECK(e->provenance == "fixture:" + name);
        CHECK(e->checksum == content_checksum(fixture_text(name)));
    }
    CHECK(CorpusManifest::parse(m.format()).format() == m.format());

    auto tampered = m;
    tampered.entries[0].checksum = std::string(64, '0');
    CHECK(tampered.verify(dir) == std::vector<std::string>{m.entries[0].path});
    tampered.entries[0] = {"missing.rot", "fixture:missing", std::string(64, '0')};
    CHECK(tampered.verify(dir) == std::vector<std::string>{"missing.rot"});
    CHECK(error_code([] { CorpusManifest::parse("abc file.rot x\n"); }) == code(Errc::ParseError));
}

} // TEST_SUITE
