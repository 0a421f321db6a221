// Command-line front end over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tc8/tc8.h"

namespace {

struct Failure {
    int code;
    std::string message;
};

void check(tc8_status s) {
    if (s != TC8_OK) throw Failure{2, std::string(tc8_status_name(s)) + ": " + tc8_last_error()};
}

struct Str {
    char* p = nullptr;
    ~Str() { tc8_string_free(p); }
    std::string get() const { return p ? p : ""; }
};

using GraphPtr = std::unique_ptr<tc8_graph, decltype(&tc8_graph_free)>;
using ColoringPtr = std::unique_ptr<tc8_coloring, decltype(&tc8_coloring_free)>;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{2, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{2, "cannot write " + path};
}

// "fixture:<name>" loads an embedded fixture.
GraphPtr load_graph(const std::string& spec) {
    tc8_graph* g = nullptr;
    if (spec.rfind("fixture:", 0) == 0) check(tc8_graph_fixture(spec.c_str() + 8, &g));
    else check(tc8_graph_parse(slurp(spec).c_str(), &g));
    return GraphPtr(g, tc8_graph_free);
}

ColoringPtr load_coloring(const tc8_graph* g, const std::string& path) {
    tc8_coloring* c = nullptr;
    check(tc8_coloring_parse(g, slurp(path).c_str(), &c));
    return ColoringPtr(c, tc8_coloring_free);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total coloring toolkit for plane graphs with maximum degree 8"};
    app.require_subcommand(1);

    std::string graph, coloring, out, lemma, log, criteria = "123456";
    int colors = 9, witness = 0, n = 12, max_degree = 8;
    std::uint64_t seed = 0, corpus_seed = 1;
    double deletion = 0.0;
    bool partial = false, json = false, quick = false, allow_fan = false;

    auto* verify = app.add_subcommand("verify", "check a total coloring");
    verify->add_option("--graph", graph, "embedding file or fixture:<name>")->required();
    verify->add_option("--coloring", coloring, "coloring file")->required();
    verify->add_option("--colors", colors, "palette size");
    verify->add_flag("--partial", partial, "ignore uncolored elements");

    auto* solve = app.add_subcommand("solve", "find a total coloring");
    solve->add_option("--graph", graph)->required();
    solve->add_option("--colors", colors)->required();
    solve->add_option("--seed", seed, "0 keeps the deterministic order");
    solve->add_option("--out", out);

    auto* chromatic = app.add_subcommand("chromatic", "total chromatic number");
    chromatic->add_option("--graph", graph)->required();

    auto* fan4 = app.add_subcommand("fan4", "look for a 4-fan");
    fan4->add_option("--graph", graph)->required();

    auto* match = app.add_subcommand("match", "match a catalog pattern");
    match->add_option("--graph", graph)->required();
    match->add_option("--lemma,--pattern", lemma, "catalog id")->required();

    auto* violations = app.add_subcommand("violations", "catalog configurations present in the graph");
    violations->add_option("--graph", graph)->required();

    auto* discharge = app.add_subcommand("discharge", "run the discharging rules and audit the result");
    discharge->add_option("--graph", graph)->required();
    discharge->add_option("--log", log, "write the transfer log here");
    discharge->add_flag("--json", json);
    discharge->add_option("--out", out);

    auto* extend = app.add_subcommand("extend", "reduce, color and extend back for one lemma");
    extend->add_option("--graph", graph)->required();
    extend->add_option("--lemma", lemma)->required();
    extend->add_option("--coloring", coloring, "coloring of the reduced graph");
    extend->add_option("--witness", witness, "index among the lemma's matches");
    extend->add_option("--seed", seed, "randomizes the reduced solve; 0 = deterministic");
    extend->add_option("--log", log, "move log destination (default stdout)");
    extend->add_option("--out", out, "final coloring destination (default stdout after the log)");

    auto* gen = app.add_subcommand("gen", "generate a plane embedding");
    gen->add_option("--n", n)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--max-degree", max_degree);
    gen->add_option("--delete", deletion, "per-edge deletion probability");
    gen->add_flag("--allow-fan4", allow_fan);
    gen->add_option("--out", out);

    auto* corpus = app.add_subcommand("corpus-run", "run the acceptance suites");
    corpus->add_option("--seed", corpus_seed);
    corpus->add_flag("--quick", quick, "small counts for smoke runs");
    corpus->add_option("--criteria", criteria, "subset such as 135");
    corpus->add_option("--out", out);

    auto* patterns = app.add_subcommand("patterns", "pattern catalog");
    patterns->require_subcommand(1);
    patterns->add_subcommand("list", "list catalog ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            auto g = load_graph(graph);
            auto c = load_coloring(g.get(), coloring);
            int bad = 0;
            Str rep;
            check(tc8_verify(g.get(), c.get(), colors, partial, &bad, &rep.p));
            std::cout << rep.get();
            std::cout << (bad ? std::to_string(bad) + " violation(s)\n" : std::string("proper\n"));
            return bad ? 1 : 0;
        }
        if (*solve) {
            auto g = load_graph(graph);
            tc8_coloring* c = nullptr;
            check(tc8_solve(g.get(), colors, seed, &c));
            if (!c) {
                std::cout << "no total " << colors << "-coloring\n";
                return 1;
            }
            ColoringPtr cp(c, tc8_coloring_free);
            Str text;
            check(tc8_coloring_format(g.get(), c, &text.p));
            emit(out, text.get());
            return 0;
        }
        if (*chromatic) {
            auto g = load_graph(graph);
            int chi = 0;
            check(tc8_total_chromatic_number(g.get(), &chi));
            std::cout << chi << "\n";
            return 0;
        }
        if (*fan4) {
            auto g = load_graph(graph);
            int found = 0;
            Str w;
            check(tc8_four_fan(g.get(), &found, &w.p));
            std::cout << (found ? w.get() : std::string("no 4-fan\n"));
            return found ? 0 : 1;
        }
        if (*match) {
            auto g = load_graph(graph);
            int count = 0;
            Str rep;
            check(tc8_match(g.get(), lemma.c_str(), &count, &rep.p));
            std::cout << rep.get() << count << " match(es)\n";
            return count ? 0 : 1;
        }
        if (*violations) {
            auto g = load_graph(graph);
            int count = 0;
            Str rep;
            check(tc8_violations(g.get(), &count, &rep.p));
            std::cout << rep.get() << count << " violation(s)\n";
            return count ? 0 : 1;
        }
        if (*discharge) {
            auto g = load_graph(graph);
            Str rep, lg;
            check(tc8_discharge(g.get(), json, &rep.p, log.empty() ? nullptr : &lg.p));
            emit(out, rep.get());
            if (!log.empty()) emit(log, lg.get());
            return 0;
        }
        if (*extend) {
            auto g = load_graph(graph);
            std::string reduced = coloring.empty() ? "" : slurp(coloring);
            Str moves, branch;
            tc8_coloring* c = nullptr;
            check(tc8_extend(g.get(), lemma.c_str(), witness, coloring.empty() ? nullptr : reduced.c_str(), seed,
                             &moves.p, &c, &branch.p));
            ColoringPtr cp(c, tc8_coloring_free);
            Str text;
            check(tc8_coloring_format(g.get(), c, &text.p));
            std::string head = "# branch: " + branch.get() + "\n";
            if (log.empty() && out.empty()) {
                std::cout << head << moves.get() << "# coloring\n" << text.get();
            } else {
                emit(log, head + moves.get());
                emit(out, text.get());
            }
            return 0;
        }
        if (*gen) {
            tc8_graph* g = nullptr;
            check(tc8_graph_generate(n, max_degree, !allow_fan, deletion, seed, &g));
            GraphPtr gp(g, tc8_graph_free);
            Str text;
            check(tc8_graph_serialize(g, &text.p));
            emit(out, text.get());
            return 0;
        }
        if (*corpus) {
            int ok = 0;
            Str rep;
            check(tc8_corpus_run(corpus_seed, quick, criteria.c_str(), &ok, &rep.p));
            emit(out, rep.get());
            return ok ? 0 : 1;
        }
        if (*patterns) {
            Str list;
            check(tc8_pattern_list(&list.p));
            std::cout << list.get();
            return 0;
        }
    } catch (const Failure& f) {
        std::cerr << "tc8: " << f.message << "\n";
        return f.code;
    }
    return 2;
}
