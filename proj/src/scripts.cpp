#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include <fmt/format.h>

#include "tc8/extension.hpp"

namespace tc8 {
namespace {

// Element references are vertex names ("v") or edges ("v-u").
struct Step {
    enum Kind { Assign, AssignFrom, Swap, Alternate, Restart } kind = Assign;
    std::vector<std::string> refs;
    int label = 0;
};

struct Branch {
    std::vector<Step> steps;
    bool repair = false;
};

struct Derived {
    std::string name;
    std::string of;
    std::vector<std::string> excluding;
};

struct Script {
    std::string lemma;
    std::string scenario;
    std::string center = "v";
    std::string target; // edge reference, or empty
    std::vector<std::string> uncolor;
    std::vector<Derived> derived;
    std::vector<std::pair<std::string, int>> anchors;
    std::vector<int> pool;
    std::vector<Branch> branches;
    bool surgery = false;
};

Step A(std::string e, int label) { return {Step::Assign, {std::move(e)}, label}; }
Step F(std::string e, std::string from) { return {Step::AssignFrom, {std::move(e), std::move(from)}, 0}; }
Step S(std::string a, std::string b) { return {Step::Swap, {std::move(a), std::move(b)}, 0}; }
Step Alt(std::vector<std::string> path) { return {Step::Alternate, std::move(path), 0}; }
Step Again() { return {Step::Restart, {}, 0}; }

std::string step_text(const Step& s) {
    switch (s.kind) {
    case Step::Assign: return fmt::format("{}={}", s.refs[0], s.label);
    case Step::AssignFrom: return fmt::format("{}=c({})", s.refs[0], s.refs[1]);
    case Step::Swap: return fmt::format("swap {}/{}", s.refs[0], s.refs[1]);
    case Step::Alternate: return fmt::format("alternate {}", fmt::join(s.refs, "-"));
    case Step::Restart: return "restart";
    }
    return {};
}

std::string branch_text(const Branch& b) {
    std::vector<std::string> parts;
    for (auto& s : b.steps) parts.push_back(step_text(s));
    return (b.repair ? "repair: " : "") + fmt::format("{}", fmt::join(parts, ", "));
}

std::vector<Script> build_scripts() {
    std::vector<Script> out;

    {
        Script s;
        s.lemma = "lem:min-deg";
        s.scenario = "isolated";
        s.center = "u";
        s.uncolor = {"u"};
        out.push_back(s);
        s.scenario = "leaf";
        s.derived = {{"w", "u", {}}};
        s.target = "u-w";
        out.push_back(s);
    }
    {
        Script s;
        s.lemma = "lem:uv-10";
        s.scenario = "main";
        s.target = "u-v";
        s.uncolor = {"u"};
        out.push_back(s);
    }

    // Two 2-neighbours x1, x2 of an 8-vertex; y1, y2 their other neighbours.
    {
        Script base;
        base.lemma = "lem:8-has-one-2";
        base.derived = {{"y1", "x1", {"v"}}, {"y2", "x2", {"v"}}};
        Script s = base;
        s.scenario = "triangle";
        s.target = "x1-x2";
        s.uncolor = {"x1", "x2"};
        out.push_back(s);
        s = base;
        s.scenario = "adjacent";
        s.target = "v-x2";
        s.uncolor = {"x1", "x2"};
        s.anchors = {{"v", 9}, {"v-x1", 1}, {"v-y1", 2}};
        s.pool = {3, 4, 5, 6, 7};
        s.branches = {{{S("x1-y1", "v-y1"), F("v-x2", "v-y1")}},
                      {{F("v-x1", "x2-y2"), F("v-x2", "v-x1")}}};
        out.push_back(s);
        s = base;
        s.scenario = "shared";
        s.uncolor = {"x1", "x2"};
        s.surgery = true;
        out.push_back(s);
        s.scenario = "apart";
        out.push_back(s);
    }

    for (const char* sc : {"adjacent", "apart"}) {
        Script s;
        s.lemma = "lem:7-two-3s";
        s.scenario = sc;
        s.target = "u-v";
        s.uncolor = {"u", "w"};
        bool adj = s.scenario == "adjacent";
        s.derived = {{"u3", "u", {"v", "x"}}, {"w3", "w", {"v", adj ? "x" : "y"}}};
        s.anchors = {{"v", 7}, {"v-w", 5}, {"v-x", 6}, {"u-x", 8}, {"u-u3", 9}};
        if (adj) s.pool = {1, 2, 3, 4};
        else {
            s.anchors.push_back({"v-y", 4});
            s.pool = {1, 2, 3};
        }
        s.branches = {{{A("v-w", 9), A("u-v", 5)}},
                      {{A("v-w", 8), A("u-v", 5)}},
                      {{S("x-v", "x-u"), A("v-w", 6), A("u-v", 5)}}};
        out.push_back(s);
    }

    for (const char* sc : {"adjacent", "apart"}) {
        Script s;
        s.lemma = "lem:8-2and3";
        s.scenario = sc;
        s.target = "u-v";
        s.uncolor = {"u", "w"};
        s.anchors = {{"v", 8}, {"v-x", 7}, {"v-w", 6}};
        s.pool = {1, 2, 3, 4, 5};
        s.branches = {{{A("v-w", 9), A("u-v", 6)}},
                      {{S("x-v", "x-u"), A("v-w", 7), A("u-v", 6)}}};
        if (s.scenario == "apart") {
            s.anchors.push_back({"v-y", 5});
            s.pool = {1, 2, 3, 4};
            s.branches.push_back({{S("y-v", "y-w"), A("u-v", 5)}});
            s.branches.push_back({{S("y-v", "y-w"), S("x-v", "x-u"), A("u-v", 5)}});
        }
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "lem:8-diamond3-no2";
        s.scenario = "main";
        s.target = "u-v";
        s.uncolor = {"u", "w"};
        s.anchors = {{"v", 8}, {"v-x", 7}, {"v-w", 6}, {"v-y", 5}};
        s.pool = {1, 2, 3, 4};
        s.branches = {{{A("v-w", 9), A("u-v", 6)}},
                      {{S("x-v", "x-w"), A("u-v", 7)}},
                      {{S("x-v", "x-w"), S("y-v", "y-w"), A("u-v", 5)}},
                      {{S("y-v", "y-w"), A("u-v", 5)}},
                      {{S("y-v", "y-w"), S("x-v", "x-w"), A("u-v", 7)}}};
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "lem:8-two-diamonds";
        s.scenario = "main";
        s.target = "v-z";
        s.uncolor = {"u", "w", "z"};
        s.anchors = {{"v", 8}, {"v-u", 6}, {"v-y", 7}, {"v-s", 1}, {"v-w", 2}, {"v-p", 3}, {"v-t", 4}, {"v-x", 5}};
        s.branches = {{{A("v-u", 9), A("v-z", 6)}},
                      {{S("x-u", "x-v"), A("v-z", 5)}},
                      {{A("v-w", 9), A("v-z", 2)}},
                      {{S("s-w", "s-v"), A("v-z", 1)}},
                      {{S("p-v", "p-w"), A("v-z", 3)}},
                      {{S("y-v", "y-u"), A("v-z", 7)}},
                      {{S("x-u", "x-v"), S("y-v", "y-u"), A("v-z", 7)}, true},
                      {{S("x-u", "x-v"), S("y-v", "y-u"), A("v-z", 5)}, true},
                      {{S("s-w", "s-v"), S("p-v", "p-w"), A("v-z", 3)}, true},
                      {{S("s-w", "s-v"), S("p-v", "p-w"), A("v-z", 1)}, true}};
        out.push_back(s);
    }

    for (int i = 4; i <= 7; ++i) {
        Script s;
        s.lemma = fmt::format("lem:8-233383-{}", i);
        s.scenario = "main";
        auto vv = [](int j) { return fmt::format("v-v{}", j); };
        s.target = vv(i);
        s.uncolor = {"v1"};
        for (int j = 3; j <= i; ++j) s.uncolor.push_back(fmt::format("v{}", j));
        s.anchors = {{"v", 8}, {vv(1), 2}, {vv(2), 3}};
        for (int j = 3; j < i; ++j) s.anchors.push_back({vv(j), j + 1});
        s.pool = {1};
        for (int c = i + 1; c <= 7; ++c) s.pool.push_back(c);
        s.branches.push_back({{A(vv(1), 9), A(vv(i), 2)}});
        for (int j = 3; j < i; ++j) s.branches.push_back({{A(vv(j), 9), A(vv(i), j + 1)}});
        for (int k = 0; k <= i - 4; ++k) {
            Branch b;
            b.steps.push_back(S("v2-v", "v2-v3"));
            for (int m = 1; m <= k; ++m)
                b.steps.push_back(S(fmt::format("p{}-v{}", m, m + 2), fmt::format("p{}-v{}", m, m + 3)));
            b.steps.push_back(A(vv(i), 3));
            s.branches.push_back(b);
        }
        std::vector<std::string> path = {"v", "v2", "v3"};
        for (int m = 1; m <= i - 3; ++m) {
            path.push_back(fmt::format("p{}", m));
            path.push_back(fmt::format("v{}", m + 3));
        }
        s.branches.push_back({{Alt(path), A(vv(1), 3), A(vv(i), 2)}});
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "cfg:4a";
        s.scenario = "main";
        s.target = "v-t";
        s.uncolor = {"t", "y", "z"};
        s.anchors = {{"v", 8}, {"v-u", 4}, {"v-z", 5}, {"v-y", 6}, {"v-w", 7}, {"v-x", 1}};
        s.pool = {2, 3};
        auto X = S("x-v", "x-t");
        auto W = S("w-v", "w-t");
        s.branches = {{{A("v-y", 9), A("v-t", 6)}},
                      {{A("v-z", 9), A("v-t", 5)}},
                      {{X, W, A("v-y", 7), A("v-t", 6)}},
                      {{X, W, A("v-z", 7), A("v-t", 5)}},
                      {{X, W, S("u-v", "u-z"), A("v-t", 4)}},
                      {{X, A("v-z", 1), A("v-t", 5)}},
                      {{S("u-v", "u-z"), A("v-t", 4)}},
                      {{S("u-v", "u-z"), X, A("v-t", 4)}},
                      {{X, A("v-y", 1), A("v-t", 6)}},
                      {{S("w-v", "w-y"), A("v-t", 7)}},
                      {{S("w-v", "w-y"), X, A("v-t", 7)}},
                      {{W, A("v-z", 7), A("v-t", 5)}},
                      {{S("u-v", "u-z"), W, A("v-t", 4)}},
                      {{X, W, A("v-z", 1), A("v-t", 5)}},
                      {{W, A("v-y", 7), A("v-t", 6)}}};
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "cfg:4b";
        s.scenario = "main";
        s.target = "v-t";
        s.uncolor = {"t", "y", "z", "u"};
        s.anchors = {{"v", 8}, {"v-u", 4}, {"v-z", 5}, {"v-y", 6}, {"v-w", 7}, {"v-x", 1}, {"v-r", 3}};
        s.pool = {2};
        auto X = S("x-v", "x-t");
        auto W = S("w-v", "w-t");
        auto R = S("r-v", "r-u");
        s.branches = {{{A("v-y", 9), A("v-t", 6)}},
                      {{A("v-z", 9), A("v-t", 5)}},
                      {{A("v-u", 9), A("v-t", 4)}},
                      {{X, W, A("v-y", 7), A("v-t", 6)}},
                      {{X, W, A("v-z", 7), A("v-t", 5)}},
                      {{X, W, A("v-u", 7), A("v-t", 4)}},
                      {{X, W, R, A("v-t", 3)}},
                      {{X, A("v-u", 1), A("v-t", 4)}},
                      {{R, A("v-t", 3)}},
                      {{R, X, A("v-t", 3)}},
                      {{X, A("v-y", 1), A("v-t", 6)}},
                      {{S("w-v", "w-y"), A("v-t", 7)}},
                      {{S("w-v", "w-y"), X, A("v-t", 7)}},
                      {{W, A("v-u", 7), A("v-t", 4)}},
                      {{R, W, A("v-t", 3)}},
                      {{W, A("v-y", 7), A("v-t", 6)}},
                      {{X, W, A("v-u", 1), A("v-t", 4)}}};
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "cfg:4c";
        s.scenario = "main";
        s.target = "v-z";
        s.uncolor = {"x", "y", "z", "t"};
        s.anchors = {{"v", 8}, {"v-u", 6}, {"v-y", 7}, {"v-w", 1}, {"v-t", 2}, {"v-x", 5}};
        s.pool = {3, 4};
        auto W = S("w-v", "w-z");
        auto U = S("u-v", "u-y");
        auto P = S("p-y", "p-z");
        s.branches = {{{A("v-y", 9), A("v-z", 7)}},
                      {{W, A("v-y", 1), A("v-z", 7)}},
                      {{U, W, A("v-z", 6)}},
                      {{U, A("v-z", 6)}},
                      {{A("v-t", 9), A("v-z", 2)}},
                      {{W, A("v-t", 1), A("v-z", 2)}},
                      {{P, W, A("v-t", 1), A("v-z", 2)}},
                      {{U, Alt({"y", "p", "z", "w", "v"}), A("v-z", 6)}},
                      {{U, P, A("v-t", 6), A("v-z", 2)}},
                      {{S("w-v", "w-t"), U, P, A("v-z", 1)}},
                      {{S("w-v", "w-t"), A("v-z", 1)}},
                      {{U, Again()}},
                      {{U, P, W, Again()}},
                      {{A("v-x", 9), A("v-z", 5)}},
                      {{P, A("v-z", 9)}},
                      {{U, P, A("v-x", 6), A("v-z", 5)}}};
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "cfg:4d";
        s.scenario = "main";
        s.target = "v-z";
        s.uncolor = {"x", "z", "t"};
        s.anchors = {{"v", 8}, {"v-r", 6}, {"v-t", 7}, {"v-y", 1}, {"v-x", 3}};
        s.pool = {2, 4, 5};
        auto Y = S("y-v", "y-z");
        auto R = S("r-v", "r-t");
        auto P = S("p-z", "p-t");
        std::vector<std::string> path = {"v", "r", "t", "p", "z"};
        s.branches = {{{A("v-t", 9), A("v-z", 7)}},
                      {{Y, A("v-t", 1), A("v-z", 7)}},
                      {{R, A("v-z", 6)}},
                      {{Y, P, R, A("v-z", 6)}},
                      {{A("v-x", 9), A("v-z", 3)}},
                      {{Y, A("v-x", 1), A("v-z", 3)}},
                      {{Y, P, A("v-x", 1), A("v-z", 3)}},
                      {{R, Y, P, A("v-z", 6)}},
                      {{P, Y, A("v-x", 1), A("v-z", 3)}},
                      {{A("v-x", 9), A("v-t", 3), A("v-z", 7)}},
                      {{R, P, A("v-x", 6), A("v-t", 3), A("v-z", 7)}},
                      {{P, A("v-z", 9)}},
                      {{R, P, A("v-x", 6), A("v-z", 3)}},
                      {{R, A("v-x", 6), A("v-z", 3)}},
                      {{Alt(path), A("v-x", 6), A("v-z", 3)}},
                      {{Alt(path), Y, A("v-x", 1), A("v-z", 3)}}};
        out.push_back(s);
    }

    {
        Script s;
        s.lemma = "cfg:4e";
        s.scenario = "main";
        s.target = "v-u";
        s.uncolor = {"w", "u", "z"};
        s.anchors = {{"v", 8}, {"v-w", 7}, {"v-y", 6}, {"v-t", 4}, {"v-z", 3}};
        s.pool = {1, 2, 5};
        auto Y = S("y-v", "y-w");
        auto X = S("x-u", "x-w");
        s.branches = {{{A("v-w", 9), A("v-u", 7)}},
                      {{Y, A("v-u", 6)}},
                      {{A("v-z", 9), A("v-u", 3)}},
                      {{S("t-v", "t-z"), A("v-u", 4)}},
                      {{Y, X, A("v-z", 6), A("v-u", 3)}},
                      {{Y, X, S("t-v", "t-z"), A("v-u", 4)}}};
        out.push_back(s);
    }
    return out;
}

const std::vector<Script>& scripts() {
    static const std::vector<Script> all = build_scripts();
    return all;
}

const Script* find_script(const std::string& lemma, const std::string& scenario) {
    for (auto& s : scripts())
        if (s.lemma == lemma && s.scenario == scenario) return &s;
    return nullptr;
}

using Names = std::map<std::string, int>;

struct Resolved {
    const Script* script = nullptr;
    Names names;
};

[[noreturn]] void precondition(const std::string& msg) { throw Error(Errc::PreconditionViolated, msg); }

int other_neighbor(const Graph& g, int of, const std::vector<int>& excluding) {
    int found = -1;
    for (int w : g.neighbors(of)) {
        if (std::find(excluding.begin(), excluding.end(), w) != excluding.end()) continue;
        if (found >= 0) return -2;
        found = w;
    }
    return found;
}

Resolved resolve(const PlanarEmbedding& pe, const std::string& lemma, const MatchWitness& w) {
    const Graph& g = pe.graph();
    if (!has_script(lemma)) throw Error(Errc::UnknownPattern, fmt::format("no script for '{}'", lemma));
    const auto& pat = catalog_pattern(lemma);
    if (w.pattern != lemma) precondition(fmt::format("witness is for '{}', not '{}'", w.pattern, lemma));
    if (w.variant < 0 || w.variant >= static_cast<int>(pat.variants.size()))
        precondition("witness variant out of range");
    const auto& var = pat.variants[w.variant];
    if (w.map.size() != var.vertices.size()) precondition("witness map has the wrong size");
    for (int h : w.map)
        if (h < 0 || h >= g.vertex_count()) precondition("witness maps outside the host");
    if (!validate_witness(pat, w, pe)) precondition(fmt::format("witness does not satisfy '{}'", lemma));

    Resolved r;
    for (std::size_t i = 0; i < var.vertices.size(); ++i) r.names[var.vertices[i].name] = w.map[i];
    std::string scenario = var.name;

    if (lemma == "lem:min-deg") {
        scenario = g.degree(r.names["u"]) == 0 ? "isolated" : "leaf";
    } else if (lemma == "lem:8-has-one-2") {
        int v = r.names["v"], x1 = r.names["x1"], x2 = r.names["x2"];
        int y1 = other_neighbor(g, x1, {v}), y2 = other_neighbor(g, x2, {v});
        if (y1 < 0 || y2 < 0) precondition("2-neighbours must have one other neighbour");
        if (y1 == x2) {
            scenario = "triangle";
        } else if (g.adjacent(v, y1) || g.adjacent(v, y2)) {
            scenario = "adjacent";
            if (!g.adjacent(v, y1)) std::swap(r.names["x1"], r.names["x2"]);
        } else {
            scenario = y1 == y2 ? "shared" : "apart";
        }
    }
    r.script = find_script(lemma, scenario);
    if (!r.script) precondition(fmt::format("no case '{}' for '{}'", scenario, lemma));

    for (auto& d : r.script->derived) {
        std::vector<int> ex;
        for (auto& e : d.excluding) ex.push_back(r.names.at(e));
        int x = other_neighbor(g, r.names.at(d.of), ex);
        if (x < 0) precondition(fmt::format("cannot determine {} from the neighbours of {}", d.name, d.of));
        r.names[d.name] = x;
    }
    return r;
}

int element_of(const Graph& g, const Names& names, const std::string& ref) {
    auto dash = ref.find('-');
    if (dash == std::string::npos) return names.at(ref);
    int a = names.at(ref.substr(0, dash)), b = names.at(ref.substr(dash + 1));
    int x = g.edge_element(a, b);
    if (x < 0) precondition(fmt::format("{} is not an edge", ref));
    return x;
}

int reduced_element(const Graph& host, const Graph& reduced, int x) {
    if (host.is_vertex_element(x)) return x;
    auto [a, b] = host.element_edge(x);
    return reduced.edge_element(a, b);
}

Graph without_edges(const Graph& g, const std::vector<Edge>& drop, const std::vector<Edge>& add = {}) {
    std::vector<Edge> es;
    for (auto& e : g.edges())
        if (std::find(drop.begin(), drop.end(), e) == drop.end()) es.push_back(e);
    for (auto& e : add) es.push_back(make_edge(e.first, e.second));
    return Graph(g.vertex_count(), es);
}

ReductionPlan make_plan(const PlanarEmbedding& pe, const Resolved& r) {
    const Graph& g = pe.graph();
    const Script& s = *r.script;
    ReductionPlan plan;
    plan.lemma = s.lemma;
    plan.scenario = s.scenario;
    plan.center = r.names.at(s.center);
    for (auto& u : s.uncolor) plan.uncolored.push_back(r.names.at(u));
    std::sort(plan.uncolored.begin(), plan.uncolored.end());
    plan.uncolored.erase(std::unique(plan.uncolored.begin(), plan.uncolored.end()), plan.uncolored.end());

    if (s.surgery) {
        int v = r.names.at("v"), x1 = r.names.at("x1"), x2 = r.names.at("x2");
        int y1 = r.names.at("y1"), y2 = r.names.at("y2");
        std::vector<Edge> drop;
        for (int x : {x1, x2})
            for (int nb : g.neighbors(x)) drop.push_back(make_edge(x, nb));
        std::vector<Edge> add = {{v, y1}};
        if (y1 != y2) add.push_back({v, y2});
        plan.reduced = without_edges(g, drop, add);
        plan.surgery = y1 == y2 ? "delete x1, x2; add v-y" : "delete x1, x2; add v-y1, v-y2";
        return plan;
    }

    std::vector<Edge> drop;
    if (!s.target.empty()) {
        plan.target = element_of(g, r.names, s.target);
        drop.push_back(g.element_edge(plan.target));
        plan.surgery = "delete " + s.target;
    } else {
        plan.surgery = "uncolor " + fmt::format("{}", fmt::join(s.uncolor, ", "));
    }
    plan.reduced = without_edges(g, drop);

    std::set<int> fixed;
    if (plan.target >= 0) fixed.insert(plan.target);
    for (auto& [ref, label] : s.anchors) {
        int x = element_of(g, r.names, ref);
        if (!fixed.insert(x).second) precondition(fmt::format("{} is named twice", ref));
        plan.anchors.push_back({x, label});
    }
    if (!s.anchors.empty()) {
        int v = plan.center;
        for (int nb : g.neighbors(v)) {
            int x = g.edge_element(v, nb);
            if (!fixed.count(x)) plan.pool.push_back(x);
        }
        if (plan.pool.size() != s.pool.size())
            precondition(fmt::format("center has {} unnamed edges, the script expects {}", plan.pool.size(), s.pool.size()));
        plan.pool_labels = s.pool;
    }
    return plan;
}

// Canonical label -> actual color, or nullopt when anchors clash.
std::optional<std::array<int, 10>> normalize(const ReductionPlan& plan, const TotalColoring& phi) {
    std::array<int, 10> lab{};
    std::array<bool, 10> used{};
    auto bind = [&](int label, int c) {
        if (c < 1 || c > 9 || lab[label] || used[c]) return false;
        lab[label] = c;
        used[c] = true;
        return true;
    };
    for (auto& [x, label] : plan.anchors)
        if (!bind(label, phi[x])) return std::nullopt;
    std::vector<int> pc;
    for (int x : plan.pool) pc.push_back(phi[x]);
    std::sort(pc.begin(), pc.end());
    for (std::size_t i = 0; i < pc.size(); ++i)
        if (!bind(plan.pool_labels[i], pc[i])) return std::nullopt;
    int c = 1;
    for (int label = 1; label <= 9; ++label) {
        if (lab[label]) continue;
        while (used[c]) ++c;
        bind(label, c);
    }
    return lab;
}

class Runner {
public:
    Runner(const Graph& g, const ReductionPlan& plan, const Script& s, const Names& names, bool strict)
        : g_(g), plan_(plan), s_(s), names_(names), strict_(strict) {}

    std::optional<std::string> run(TotalColoring& phi, std::vector<Move>* moves, int depth = 0) {
        int t = plan_.target;
        if (t < 0 || phi.colored(t)) return "none";
        auto av = available_colors(g_, phi, t);
        if (!av.empty()) {
            phi.set(t, av.front());
            if (moves) moves->push_back(assign_move(t, av.front()));
            return "available";
        }
        auto lab = normalize(plan_, phi);
        if (!lab) return std::nullopt;
        for (std::size_t bi = 0; bi < s_.branches.size(); ++bi) {
            const Branch& b = s_.branches[bi];
            if (strict_ && b.repair) continue;
            TotalColoring scratch = phi;
            std::vector<Move> bm;
            std::string tag = fmt::format("#{} {}", bi + 1, branch_text(b));
            if (try_branch(b, *lab, phi, scratch, bm, tag, depth)) {
                phi = std::move(scratch);
                if (moves) moves->insert(moves->end(), bm.begin(), bm.end());
                return tag;
            }
        }
        return std::nullopt;
    }

private:
    int el(const std::string& ref) const {
        auto dash = ref.find('-');
        if (dash == std::string::npos) return names_.at(ref);
        return g_.edge_element(names_.at(ref.substr(0, dash)), names_.at(ref.substr(dash + 1)));
    }

    bool proper_changes(const TotalColoring& before, const TotalColoring& after) const {
        for (int x = 0; x < after.size(); ++x) {
            if (after[x] == before[x] || !after.colored(x)) continue;
            for (int y : g_.conflicts(x))
                if (after[y] == after[x]) return false;
        }
        return true;
    }

    bool try_branch(const Branch& b, const std::array<int, 10>& lab, const TotalColoring& start, TotalColoring& cur,
                    std::vector<Move>& bm, std::string& tag, int depth) {
        for (auto& st : b.steps) {
            switch (st.kind) {
            case Step::Assign:
            case Step::AssignFrom: {
                int x = el(st.refs[0]);
                if (x < 0) return false;
                int c = lab[st.label];
                if (st.kind == Step::AssignFrom) {
                    int src = el(st.refs[1]);
                    if (src < 0 || !start.colored(src)) return false;
                    c = start[src];
                }
                bm.push_back(assign_move(x, c));
                cur.set(x, c);
                break;
            }
            case Step::Swap: {
                int a = el(st.refs[0]), c = el(st.refs[1]);
                if (a < 0 || c < 0 || !cur.colored(a) || !cur.colored(c)) return false;
                bm.push_back(swap_move(a, c));
                int ca = cur[a];
                cur.set(a, cur[c]);
                cur.set(c, ca);
                break;
            }
            case Step::Alternate: {
                std::vector<int> chain;
                for (std::size_t i = 0; i + 1 < st.refs.size(); ++i) {
                    int x = g_.edge_element(names_.at(st.refs[i]), names_.at(st.refs[i + 1]));
                    if (x < 0) return false;
                    chain.push_back(x);
                }
                Move m = alternate_move(chain);
                try {
                    cur = apply_move(g_, cur, m).coloring;
                } catch (const Error&) {
                    return false;
                }
                bm.push_back(m);
                break;
            }
            case Step::Restart: {
                if (depth > 0 || !proper_changes(start, cur)) return false;
                auto sub = run(cur, &bm, depth + 1);
                if (!sub) return false;
                tag += " > " + *sub;
                break;
            }
            }
        }
        return cur.colored(plan_.target) && proper_changes(start, cur);
    }

    const Graph& g_;
    const ReductionPlan& plan_;
    const Script& s_;
    const Names& names_;
    bool strict_;
};

TotalColoring solve_reduced(const ReductionPlan& plan, const ExtendOptions& opt) {
    if (opt.reduced) {
        if (opt.reduced->size() != plan.reduced.element_count())
            throw Error(Errc::InvalidArgument, "supplied coloring does not fit the reduced graph");
        if (!verify_total_coloring(plan.reduced, *opt.reduced, true).empty())
            throw Error(Errc::InvalidArgument, "supplied coloring of the reduced graph is not proper");
        TotalColoring c = *opt.reduced;
        c.set_k(9);
        return c;
    }
    std::optional<TotalColoring> c;
    if (opt.seed) {
        Rng rng(opt.seed);
        SolveOptions so;
        so.rng = &rng;
        c = solve(plan.reduced, 9, so);
    } else {
        c = solve(plan.reduced, 9);
    }
    if (!c) throw Error(Errc::ReducedGraphNotColorable, fmt::format("{}: reduced graph has no 9-total-coloring", plan.lemma));
    return *c;
}

void surgery_extend(const Graph& g, const ReductionPlan& plan, const Names& names, const TotalColoring& reduced,
                    TotalColoring& phi, std::vector<Move>& moves) {
    int v = names.at("v"), x1 = names.at("x1"), x2 = names.at("x2");
    int y1 = names.at("y1"), y2 = names.at("y2");
    auto give = [&](int a, int b, int c) {
        int x = g.edge_element(a, b);
        phi.set(x, c);
        moves.push_back(assign_move(x, c));
    };
    auto fill = [&](int a, int b) {
        int x = g.edge_element(a, b);
        auto av = available_colors(g, phi, x);
        if (av.empty()) throw Error(Errc::ScriptCaseMiss, fmt::format("{}: {} has no color", plan.lemma, g.element_name(x)));
        phi.set(x, av.front());
        moves.push_back(assign_move(x, av.front()));
    };
    int c1 = reduced[plan.reduced.edge_element(v, y1)];
    if (y1 == y2) {
        give(v, x1, c1);
        give(y1, x2, c1);
        fill(v, x2);
        fill(x1, y1);
    } else {
        int c2 = reduced[plan.reduced.edge_element(v, y2)];
        give(v, x2, c1);
        give(x1, y1, c1);
        give(v, x1, c2);
        give(x2, y2, c2);
    }
}

} // namespace

std::vector<std::string> scripted_lemmas() {
    std::vector<std::string> out;
    for (auto& s : scripts())
        if (std::find(out.begin(), out.end(), s.lemma) == out.end()) out.push_back(s.lemma);
    return out;
}

bool has_script(const std::string& lemma) {
    for (auto& s : scripts())
        if (s.lemma == lemma) return true;
    return false;
}

ReductionPlan plan_reduction(const PlanarEmbedding& g, const std::string& lemma, const MatchWitness& w) {
    return make_plan(g, resolve(g, lemma, w));
}

std::vector<std::string> script_branches(const std::string& lemma, const std::string& scenario) {
    const Script* s = find_script(lemma, scenario);
    if (!s) throw Error(Errc::UnknownPattern, fmt::format("no script for '{}' case '{}'", lemma, scenario));
    std::vector<std::string> out;
    for (auto& b : s->branches) out.push_back(branch_text(b));
    return out;
}

TotalColoring transfer_to_host(const Graph& g, const ReductionPlan& plan, const TotalColoring& reduced) {
    TotalColoring phi(g.element_count(), 9);
    for (int x = 0; x < g.element_count(); ++x) {
        int rx = reduced_element(g, plan.reduced, x);
        if (rx >= 0) phi.set(x, reduced[rx]);
    }
    for (int u : plan.uncolored) phi.uncolor(u);
    if (plan.target >= 0) phi.uncolor(plan.target);
    return phi;
}

bool needs_recoloring(const Graph& g, const ReductionPlan& plan, const TotalColoring& reduced) {
    if (plan.target < 0) return false;
    return available_colors(g, transfer_to_host(g, plan, reduced), plan.target).empty();
}

std::optional<TotalColoring> sample_reduced_coloring(const Graph& g, const ReductionPlan& plan, Rng& rng,
                                                    bool canonical_environment) {
    TotalColoring partial(plan.reduced.element_count(), 9);
    if (canonical_environment && !plan.anchors.empty()) {
        std::vector<int> perm = {1, 2, 3, 4, 5, 6, 7, 8, 9};
        rng.shuffle(perm);
        std::vector<int> labels = plan.pool_labels;
        rng.shuffle(labels);
        auto pin = [&](int x, int label) {
            int rx = reduced_element(g, plan.reduced, x);
            if (rx >= 0) partial.set(rx, perm[label - 1]);
        };
        for (auto& [x, label] : plan.anchors) pin(x, label);
        for (std::size_t i = 0; i < plan.pool.size(); ++i) pin(plan.pool[i], labels[i]);
        if (!verify_total_coloring(plan.reduced, partial, true).empty()) return std::nullopt;
    }
    SolveOptions so;
    so.partial = &partial;
    so.rng = &rng;
    so.node_limit = 200000;
    return solve(plan.reduced, 9, so);
}

ExtensionResult reduce_and_extend(const PlanarEmbedding& pe, const std::string& lemma, const MatchWitness& w,
                                  const ExtendOptions& opt) {
    const Graph& g = pe.graph();
    Resolved r = resolve(pe, lemma, w);
    ExtensionResult res;
    res.plan = make_plan(pe, r);
    const ReductionPlan& plan = res.plan;
    TotalColoring reduced = solve_reduced(plan, opt);
    TotalColoring phi = transfer_to_host(g, plan, reduced);

    std::vector<int> open = plan.uncolored;
    for (int x = g.vertex_count(); x < g.element_count(); ++x)
        if (!phi.colored(x)) open.push_back(x);
    if (!open.empty()) res.moves.push_back(uncolor_move(open));

    if (r.script->surgery) {
        surgery_extend(g, plan, r.names, reduced, phi, res.moves);
        res.branch = "surgery";
    } else {
        Runner run(g, plan, *r.script, r.names, opt.strict);
        auto tag = run.run(phi, &res.moves);
        if (!tag)
            throw Error(Errc::ScriptCaseMiss,
                        fmt::format("{} ({}): no branch fits the coloring around {}", lemma, plan.scenario,
                                    g.element_name(plan.center)));
        res.branch = *tag;
    }
    for (int x = g.vertex_count(); x < g.element_count(); ++x)
        if (!phi.colored(x))
            throw Error(Errc::ScriptCaseMiss, fmt::format("{}: {} left uncolored", lemma, g.element_name(x)));
    phi = greedy_finish_small(g, phi, 9, &res.moves);
    if (!verify_total_coloring(g, phi).empty())
        throw Error(Errc::ScriptCaseMiss, fmt::format("{} ({}): branch {} produced a conflict", lemma, plan.scenario, res.branch));
    res.coloring = std::move(phi);
    return res;
}

std::optional<std::string> run_case_table(const PlanarEmbedding& pe, const ReductionPlan& plan, const MatchWitness& w,
                                          const TotalColoring& local, bool strict) {
    Resolved r = resolve(pe, plan.lemma, w);
    TotalColoring phi = local;
    Runner run(pe.graph(), plan, *r.script, r.names, strict);
    return run.run(phi, nullptr);
}

CaseTableReport check_case_table(const PlanarEmbedding& pe, const std::string& lemma, const MatchWitness& w,
                                 bool strict) {
    const Graph& g = pe.graph();
    Resolved r = resolve(pe, lemma, w);
    ReductionPlan plan = make_plan(pe, r);
    CaseTableReport rep;
    if (r.script->surgery || plan.anchors.empty()) return rep;

    TotalColoring phi(g.element_count(), 9);
    for (auto& [x, label] : plan.anchors) phi.set(x, label);
    for (std::size_t i = 0; i < plan.pool.size(); ++i) phi.set(plan.pool[i], plan.pool_labels[i]);

    // Letters: the remaining edges at the center and at uncolored vertices.
    auto [ta, tb] = g.element_edge(plan.target);
    int far = ta == plan.center ? tb : ta;
    std::vector<int> near, rest;
    std::set<int> seen;
    auto consider = [&](int v, std::vector<int>& into) {
        for (int nb : g.neighbors(v)) {
            int x = g.edge_element(v, nb);
            if (x == plan.target || phi.colored(x) || !seen.insert(x).second) continue;
            into.push_back(x);
        }
    };
    consider(far, near);
    consider(plan.center, rest);
    for (int u : plan.uncolored) consider(u, rest);
    std::vector<int> letters = near;
    letters.insert(letters.end(), rest.begin(), rest.end());
    std::size_t split = near.size();

    Runner run(g, plan, *r.script, r.names, strict);
    std::map<std::string, std::uint64_t> counts;
    auto blocked = [&] {
        std::array<bool, 10> used{};
        for (int y : g.conflicts(plan.target)) used[phi[y]] = true;
        for (int c = 1; c <= 9; ++c)
            if (!used[c]) return false;
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == split && !blocked()) return;
        if (i == letters.size()) {
            ++rep.environments;
            TotalColoring trial = phi;
            auto tag = run.run(trial, nullptr);
            if (!tag) {
                ++rep.misses;
                if (rep.first_misses.size() < 5) rep.first_misses.push_back(phi);
            } else {
                ++counts[tag->substr(0, tag->find(' '))];
            }
            return;
        }
        int x = letters[i];
        std::array<bool, 10> used{};
        for (int y : g.conflicts(x)) used[phi[y]] = true;
        for (int c = 1; c <= 9; ++c) {
            if (used[c]) continue;
            phi.set(x, c);
            rec(i + 1);
        }
        phi.uncolor(x);
    };
    rec(0);
    for (auto& [k, n] : counts) rep.branch_counts.push_back({k, n});
    return rep;
}

} // namespace tc8
