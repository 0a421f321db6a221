#include "tc8/tc8.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <fmt/format.h>

#include "tc8/coloring.hpp"
#include "tc8/discharging.hpp"
#include "tc8/extension.hpp"
#include "tc8/fixtures.hpp"
#include "tc8/generator.hpp"
#include "tc8/io.hpp"
#include "tc8/patterns.hpp"
#include "tc8/suites.hpp"

struct tc8_graph {
    tc8::PlanarEmbedding g;
};

struct tc8_coloring {
    tc8::TotalColoring c;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F> tc8_status guard(F&& f) {
    last_error.clear();
    last_line = 0;
    try {
        f();
        return TC8_OK;
    } catch (const tc8::Error& e) {
        last_error = e.what();
        last_line = e.line();
        return static_cast<tc8_status>(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return TC8_INTERNAL;
    }
}

tc8_status null_arg(const char* what) {
    last_error = fmt::format("{} must not be null", what);
    last_line = 0;
    return TC8_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* tc8_status_name(tc8_status s) {
    if (s == TC8_OK) return "Ok";
    if (s == TC8_IO_ERROR) return "IoError";
    if (s == TC8_INTERNAL) return "Internal";
    if (s >= 1 && s <= TC8_INVALID_ARGUMENT) return tc8::errc_name(static_cast<tc8::Errc>(s));
    return "Unknown";
}

const char* tc8_last_error(void) { return last_error.c_str(); }
int tc8_last_error_line(void) { return last_line; }
void tc8_string_free(char* s) { std::free(s); }

tc8_status tc8_graph_parse(const char* text, tc8_graph** out) {
    if (!text || !out) return null_arg("text and out");
    return guard([&] { *out = new tc8_graph{tc8::parse_embedding(text)}; });
}

tc8_status tc8_graph_load(const char* path, tc8_graph** out) {
    if (!path || !out) return null_arg("path and out");
    std::string text;
    tc8_status s = guard([&] { text = tc8::read_text_file(path); });
    if (s != TC8_OK) return s == TC8_INVALID_ARGUMENT ? TC8_IO_ERROR : s;
    return tc8_graph_parse(text.c_str(), out);
}

tc8_status tc8_graph_fixture(const char* name, tc8_graph** out) {
    if (!name || !out) return null_arg("name and out");
    return guard([&] { *out = new tc8_graph{tc8::load_fixture(name)}; });
}

tc8_status tc8_graph_generate(int n, int max_degree, int forbid_four_fan, double deletion_probability, uint64_t seed,
                              tc8_graph** out) {
    if (!out) return null_arg("out");
    return guard([&] {
        tc8::GeneratorConfig cfg;
        cfg.n = n;
        cfg.max_degree = max_degree;
        cfg.forbid_four_fan = forbid_four_fan != 0;
        cfg.deletion_probability = deletion_probability;
        cfg.seed = seed;
        *out = new tc8_graph{tc8::generate_planar(cfg)};
    });
}

void tc8_graph_free(tc8_graph* g) { delete g; }
int tc8_graph_vertex_count(const tc8_graph* g) { return g ? g->g.vertex_count() : 0; }
int tc8_graph_edge_count(const tc8_graph* g) { return g ? g->g.edge_count() : 0; }
int tc8_graph_face_count(const tc8_graph* g) { return g ? g->g.face_count() : 0; }
int tc8_graph_max_degree(const tc8_graph* g) { return g ? g->g.graph().max_degree() : 0; }

tc8_status tc8_graph_serialize(const tc8_graph* g, char** out) {
    if (!g || !out) return null_arg("graph and out");
    return guard([&] { *out = dup(tc8::serialize_embedding(g->g)); });
}

tc8_status tc8_fixture_names(char** out) {
    if (!out) return null_arg("out");
    return guard([&] {
        std::string s;
        for (auto& n : tc8::fixture_names()) s += n + "\n";
        *out = dup(s);
    });
}

tc8_status tc8_coloring_parse(const tc8_graph* g, const char* text, tc8_coloring** out) {
    if (!g || !text || !out) return null_arg("graph, text and out");
    return guard([&] { *out = new tc8_coloring{tc8::parse_coloring(g->g.graph(), text)}; });
}

tc8_status tc8_coloring_format(const tc8_graph* g, const tc8_coloring* c, char** out) {
    if (!g || !c || !out) return null_arg("graph, coloring and out");
    return guard([&] {
        if (c->c.size() != g->g.graph().element_count())
            throw tc8::Error(tc8::Errc::InvalidArgument, "coloring does not belong to this graph");
        *out = dup(tc8::format_coloring(g->g.graph(), c->c));
    });
}

void tc8_coloring_free(tc8_coloring* c) { delete c; }

tc8_status tc8_verify(const tc8_graph* g, const tc8_coloring* c, int k, int partial, int* violations, char** report) {
    if (!g || !c || !violations) return null_arg("graph, coloring and violations");
    return guard([&] {
        const auto& gr = g->g.graph();
        if (c->c.size() != gr.element_count())
            throw tc8::Error(tc8::Errc::InvalidArgument, "coloring does not belong to this graph");
        tc8::TotalColoring phi = c->c;
        phi.set_k(k);
        auto vs = tc8::verify_total_coloring(gr, phi, partial != 0);
        *violations = static_cast<int>(vs.size());
        if (report) {
            std::string s;
            for (auto& v : vs) {
                if (v.kind == tc8::Violation::Uncolored) s += fmt::format("uncolored {}\n", gr.element_name(v.a));
                else s += fmt::format("conflict {} {} color {}\n", gr.element_name(v.a), gr.element_name(v.b), v.color);
            }
            *report = dup(s);
        }
    });
}

tc8_status tc8_solve(const tc8_graph* g, int k, uint64_t seed, tc8_coloring** out) {
    if (!g || !out) return null_arg("graph and out");
    return guard([&] {
        *out = nullptr;
        tc8::SolveOptions so;
        tc8::Rng rng(seed);
        if (seed) so.rng = &rng;
        auto c = tc8::solve(g->g.graph(), k, so);
        if (c) *out = new tc8_coloring{*c};
    });
}

tc8_status tc8_total_chromatic_number(const tc8_graph* g, int* out) {
    if (!g || !out) return null_arg("graph and out");
    return guard([&] { *out = tc8::total_chromatic_number(g->g.graph()); });
}

tc8_status tc8_pattern_list(char** out) {
    if (!out) return null_arg("out");
    return guard([&] {
        std::string s;
        for (auto& p : tc8::pattern_catalog())
            s += fmt::format("{}\t{}\t{}\n", p.id, p.variants.size(), p.description);
        *out = dup(s);
    });
}

tc8_status tc8_four_fan(const tc8_graph* g, int* found, char** witness) {
    if (!g || !found) return null_arg("graph and found");
    return guard([&] {
        auto w = tc8::contains_four_fan(g->g);
        *found = w.has_value();
        if (witness) *witness = dup(w ? tc8::format_witness(tc8::four_fan_pattern(), *w) + "\n" : "");
    });
}

tc8_status tc8_match(const tc8_graph* g, const char* pattern_id, int* count, char** report) {
    if (!g || !pattern_id || !count) return null_arg("graph, pattern and count");
    return guard([&] {
        const auto& p = tc8::catalog_pattern(pattern_id);
        auto ws = tc8::match_configuration(p, g->g);
        *count = static_cast<int>(ws.size());
        if (report) {
            std::string s;
            for (auto& w : ws) s += tc8::format_witness(p, w) + "\n";
            *report = dup(s);
        }
    });
}

tc8_status tc8_violations(const tc8_graph* g, int* count, char** report) {
    if (!g || !count) return null_arg("graph and count");
    return guard([&] {
        auto vs = tc8::structural_violations(g->g);
        *count = static_cast<int>(vs.size());
        if (report) {
            std::string s;
            for (auto& v : vs) s += tc8::format_witness(tc8::catalog_pattern(v.lemma), v.witness) + "\n";
            *report = dup(s);
        }
    });
}

tc8_status tc8_discharge(const tc8_graph* g, int json, char** report, char** log) {
    if (!g || !report) return null_arg("graph and report");
    return guard([&] {
        auto a = tc8::audit(g->g);
        std::string r = json ? tc8::format_audit_json(g->g, a) : tc8::format_audit(g->g, a);
        std::string l;
        if (log) l = tc8::format_log(tc8::apply_rules(g->g, tc8::initial_charges(g->g)).log);
        *report = dup(r);
        if (log) *log = dup(l);
    });
}

tc8_status tc8_extend(const tc8_graph* g, const char* lemma, int witness_index, const char* reduced, uint64_t seed,
                      char** moves, tc8_coloring** out, char** branch) {
    if (!g || !lemma || !out) return null_arg("graph, lemma and out");
    return guard([&] {
        *out = nullptr;
        auto ws = tc8::match_configuration(tc8::catalog_pattern(lemma), g->g);
        if (witness_index < 0 || witness_index >= static_cast<int>(ws.size()))
            throw tc8::Error(tc8::Errc::PreconditionViolated,
                             fmt::format("{} has {} match(es) in the graph; index {} requested", lemma, ws.size(),
                                         witness_index));
        const auto& w = ws[witness_index];
        tc8::ExtendOptions eo;
        eo.seed = seed;
        tc8::TotalColoring red;
        if (reduced) {
            auto plan = tc8::plan_reduction(g->g, lemma, w);
            red = tc8::parse_coloring(plan.reduced, reduced);
            eo.reduced = &red;
        }
        auto res = tc8::reduce_and_extend(g->g, lemma, w, eo);
        std::string m = tc8::format_move_log(g->g.graph(), res.moves);
        std::string b = res.branch;
        auto* c = new tc8_coloring{res.coloring};
        if (moves) *moves = dup(m);
        if (branch) *branch = dup(b);
        *out = c;
    });
}

tc8_status tc8_corpus_run(uint64_t seed, int quick, const char* criteria, int* all_pass, char** report) {
    if (!report) return null_arg("report");
    return guard([&] {
        tc8::SuiteOptions opt = quick ? tc8::SuiteOptions::quick(seed) : tc8::SuiteOptions{};
        opt.seed = seed;
        std::string ids = criteria ? criteria : "123456";
        std::vector<tc8::CriterionReport> reps;
        for (char ch : ids) {
            if (ch < '1' || ch > '6')
                throw tc8::Error(tc8::Errc::InvalidArgument, fmt::format("unknown criterion '{}'", ch));
            reps.push_back(tc8::run_criterion(ch - '0', opt));
        }
        bool ok = true;
        for (auto& r : reps) ok = ok && r.pass;
        if (all_pass) *all_pass = ok;
        *report = dup(tc8::format_report(opt, reps));
    });
}

} // extern "C"
