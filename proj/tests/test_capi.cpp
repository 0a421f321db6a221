#include <doctest.h>

#include <cstring>
#include <string>

#include "tc8/tc8.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    tc8_string_free(s);
    return out;
}

tc8_graph* fixture(const char* name) {
    tc8_graph* g = nullptr;
    REQUIRE(tc8_graph_fixture(name, &g) == TC8_OK);
    return g;
}

} // namespace

TEST_CASE("graphs through the C API") {
    tc8_graph* g = nullptr;
    REQUIRE(tc8_graph_parse("3 3\n0: 1 2\n1: 2 0\n2: 0 1\n", &g) == TC8_OK);
    CHECK(tc8_graph_vertex_count(g) == 3);
    CHECK(tc8_graph_edge_count(g) == 3);
    CHECK(tc8_graph_face_count(g) == 2);
    CHECK(tc8_graph_max_degree(g) == 2);
    char* text = nullptr;
    REQUIRE(tc8_graph_serialize(g, &text) == TC8_OK);
    CHECK(take(text) == "3 3\n0: 1 2\n1: 2 0\n2: 0 1\n");
    tc8_graph_free(g);

    tc8_graph* bad = nullptr;
    CHECK(tc8_graph_parse("3 2\n0: 1\n1: 0 2\n2: 0\n", &bad) == TC8_ASYMMETRIC_ADJACENCY);
    CHECK(bad == nullptr);
    CHECK(std::strlen(tc8_last_error()) > 0);
    CHECK(tc8_last_error_line() > 0);
    CHECK(std::string(tc8_status_name(TC8_ASYMMETRIC_ADJACENCY)) == "AsymmetricAdjacency");

    CHECK(tc8_graph_load("/nonexistent/file.rot", &bad) == TC8_IO_ERROR);
    CHECK(tc8_graph_fixture("no-such-fixture", &bad) != TC8_OK);
    CHECK(tc8_graph_parse(nullptr, &bad) == TC8_INVALID_ARGUMENT);

    char* names = nullptr;
    REQUIRE(tc8_fixture_names(&names) == TC8_OK);
    CHECK(take(names).find("icosahedron\n") != std::string::npos);
}

TEST_CASE("coloring through the C API") {
    tc8_graph* k4 = fixture("k4");
    tc8_coloring* c = nullptr;
    REQUIRE(tc8_solve(k4, 4, 0, &c) == TC8_OK);
    CHECK(c == nullptr);
    REQUIRE(tc8_solve(k4, 5, 0, &c) == TC8_OK);
    REQUIRE(c != nullptr);
    int bad = -1;
    char* report = nullptr;
    REQUIRE(tc8_verify(k4, c, 5, 0, &bad, &report) == TC8_OK);
    CHECK(bad == 0);
    CHECK(take(report).empty());

    char* text = nullptr;
    REQUIRE(tc8_coloring_format(k4, c, &text) == TC8_OK);
    std::string t = take(text);
    tc8_coloring* again = nullptr;
    REQUIRE(tc8_coloring_parse(k4, t.c_str(), &again) == TC8_OK);
    REQUIRE(tc8_verify(k4, again, 4, 0, &bad, nullptr) == TC8_COLOR_OUT_OF_RANGE);

    int chi = 0;
    REQUIRE(tc8_total_chromatic_number(k4, &chi) == TC8_OK);
    CHECK(chi == 5);

    tc8_graph* k3 = fixture("k3");
    CHECK(tc8_coloring_format(k3, c, &text) == TC8_INVALID_ARGUMENT);
    tc8_coloring_free(again);
    tc8_coloring_free(c);
    tc8_graph_free(k3);
    tc8_graph_free(k4);
}

TEST_CASE("patterns and discharging through the C API") {
    tc8_graph* ico = fixture("icosahedron");
    int found = 0;
    char* w = nullptr;
    REQUIRE(tc8_four_fan(ico, &found, &w) == TC8_OK);
    CHECK(found == 1);
    CHECK(take(w).rfind("fan4", 0) == 0);

    char* rep = nullptr;
    REQUIRE(tc8_discharge(ico, 0, &rep, nullptr) == TC8_OK);
    CHECK(take(rep).find("final total -8") != std::string::npos);
    char* log = nullptr;
    REQUIRE(tc8_discharge(ico, 1, &rep, &log) == TC8_OK);
    CHECK(take(rep).find("\"initial_total\": \"-8\"") != std::string::npos);
    CHECK(take(log).find("R3") != std::string::npos);

    int count = 0;
    CHECK(tc8_match(ico, "lem:nope", &count, nullptr) == TC8_UNKNOWN_PATTERN);
    tc8_graph_free(ico);

    tc8_graph* k3 = fixture("k3");
    REQUIRE(tc8_match(k3, "lem:uv-10", &count, nullptr) == TC8_OK);
    CHECK(count == 3);
    REQUIRE(tc8_violations(k3, &count, &rep) == TC8_OK);
    CHECK(count > 0);
    CHECK(take(rep).find("lem:uv-10") != std::string::npos);
    tc8_graph_free(k3);

    char* list = nullptr;
    REQUIRE(tc8_pattern_list(&list) == TC8_OK);
    CHECK(take(list).find("cfg:4e") != std::string::npos);
}

TEST_CASE("extension through the C API") {
    tc8_graph* g = fixture("cfg-4e");
    char* moves = nullptr;
    char* branch = nullptr;
    tc8_coloring* c = nullptr;
    REQUIRE(tc8_extend(g, "cfg:4e", 0, nullptr, 5, &moves, &c, &branch) == TC8_OK);
    REQUIRE(c != nullptr);
    int bad = -1;
    REQUIRE(tc8_verify(g, c, 9, 0, &bad, nullptr) == TC8_OK);
    CHECK(bad == 0);
    CHECK(take(moves).rfind("uncolor", 0) == 0);
    CHECK_FALSE(take(branch).empty());
    tc8_coloring_free(c);
    CHECK(tc8_extend(g, "cfg:4e", 99, nullptr, 0, nullptr, &c, nullptr) == TC8_PRECONDITION_VIOLATED);
    tc8_graph_free(g);
}

TEST_CASE("generator and corpus through the C API") {
    tc8_graph* a = nullptr;
    tc8_graph* b = nullptr;
    REQUIRE(tc8_graph_generate(20, 8, 1, 0.1, 77, &a) == TC8_OK);
    REQUIRE(tc8_graph_generate(20, 8, 1, 0.1, 77, &b) == TC8_OK);
    char* ta = nullptr;
    char* tb = nullptr;
    tc8_graph_serialize(a, &ta);
    tc8_graph_serialize(b, &tb);
    CHECK(take(ta) == take(tb));
    tc8_graph_free(a);
    tc8_graph_free(b);

    int ok = 0;
    char* rep = nullptr;
    REQUIRE(tc8_corpus_run(3, 1, "2", &ok, &rep) == TC8_OK);
    CHECK(ok == 1);
    CHECK(take(rep).find("criterion 2") != std::string::npos);
    CHECK(tc8_corpus_run(3, 1, "9", &ok, &rep) == TC8_INVALID_ARGUMENT);
}
