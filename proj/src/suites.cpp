#include "tc8/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "tc8/discharging.hpp"
#include "tc8/extension.hpp"
#include "tc8/fixtures.hpp"
#include "tc8/generator.hpp"
#include "tc8/io.hpp"
#include "tc8/rng.hpp"

namespace tc8 {

SuiteOptions SuiteOptions::quick(std::uint64_t seed) {
    SuiteOptions o;
    o.seed = seed;
    o.charge_graphs = 60;
    o.theorem_graphs = 12;
    o.audit_graphs = 24;
    o.samples = 20;
    o.oracle_max_vertices = 6;
    o.oracle_max_elements = 6;
    return o;
}

namespace {

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t i) {
    std::uint64_t s = seed ^ (stream * 0xD1B54A32D192ED03ull) ^ (i * 0x9E3779B97F4A7C15ull);
    return splitmix64(s);
}

// Draws graphs until `count` pass `keep`; attempt i uses derive(seed, stream, i).
template <class Config, class Keep>
std::vector<PlanarEmbedding> draw(const SuiteOptions& opt, std::uint64_t stream, int count, Config config, Keep keep) {
    std::vector<PlanarEmbedding> out;
    const std::uint64_t cap = static_cast<std::uint64_t>(count) * 200 + 1000;
    for (std::uint64_t i = 0; static_cast<int>(out.size()) < count && i < cap; ++i) {
        Rng rng(derive(opt.seed, stream, i));
        GeneratorConfig cfg = config(rng);
        cfg.seed = rng.next();
        try {
            auto g = generate_planar(cfg);
            if (keep(g)) out.push_back(std::move(g));
        } catch (const Error& e) {
            if (e.code() != Errc::GenerationStalled) throw;
        }
    }
    return out;
}

std::string pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

// Clockwise rotations from straight-line coordinates.
PlanarEmbedding from_points(const std::vector<std::pair<double, double>>& pts, const std::vector<Edge>& edges) {
    PlanarEmbedding::Rotation rot(pts.size());
    for (auto [a, b] : edges) {
        rot[a].push_back(b);
        rot[b].push_back(a);
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        auto ang = [&](int w) { return std::atan2(pts[w].second - pts[v].second, pts[w].first - pts[v].first); };
        std::sort(rot[v].begin(), rot[v].end(), [&](int x, int y) { return ang(x) > ang(y); });
    }
    return PlanarEmbedding::build(rot);
}

int face_with(const PlanarEmbedding& g, std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    for (int f = 0; f < g.face_count(); ++f) {
        auto c = g.faces()[f].vertices();
        std::sort(c.begin(), c.end());
        if (c == vs) return f;
    }
    return -1;
}

Charge received(const TransferLog& log, const Bearer& b) {
    Charge in = 0;
    for (auto& t : log)
        if (t.to == b) in += t.amount;
    return in;
}

Charge sent(const TransferLog& log, const Bearer& b) {
    Charge out = 0;
    for (auto& t : log)
        if (t.from == b) out += t.amount;
    return out;
}

CriterionReport charge_identity(const SuiteOptions& opt) {
    CriterionReport r{1, criterion_name(1), true, {}};
    auto corpus = charge_corpus(opt);
    int bad = 0, min_n = 1 << 30, max_n = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& g = corpus[i];
        min_n = std::min(min_n, g.vertex_count());
        max_n = std::max(max_n, g.vertex_count());
        auto init = initial_charges(g);
        auto rr = apply_rules(g, init);
        auto again = replay(g, init, rr.log);
        if (init.total() != Charge(-8) || rr.ledger.total() != Charge(-8) || !(again == rr.ledger)) {
            if (bad++ < 3)
                r.lines.push_back(fmt::format("graph {}: initial {} final {}", i, format_charge(init.total()),
                                              format_charge(rr.ledger.total())));
        }
    }
    r.pass = bad == 0 && static_cast<int>(corpus.size()) >= opt.charge_graphs;
    r.lines.insert(r.lines.begin(), fmt::format("graphs={} n={}..{} totals_off={}", corpus.size(), min_n, max_n, bad));
    return r;
}

CriterionReport rule_arithmetic(const SuiteOptions&) {
    CriterionReport r{2, criterion_name(2), true, {}};
    auto check = [&](const std::string& what, const Charge& got, const std::string& expr) {
        Charge want = evaluate_bound(expr);
        bool ok = got == want && want == Charge(0);
        r.pass = r.pass && ok;
        r.lines.push_back(fmt::format("{}: {} = {} ({})", what, expr, format_charge(got), pass_word(ok)));
    };

    // b, c adjacent and both joined to the path p1..p5: face b c p1 is a (3,6,6)-triangle.
    {
        std::vector<std::pair<double, double>> pts = {{0, 1}, {0, -1}};
        std::vector<Edge> es = {{0, 1}};
        for (int i = 0; i < 5; ++i) {
            pts.push_back({1.0 + i, 0});
            es.push_back({0, 2 + i});
            es.push_back({1, 2 + i});
            if (i) es.push_back({1 + i, 2 + i});
        }
        auto g = from_points(pts, es);
        auto rr = apply_rules(g, initial_charges(g));
        int f = face_with(g, {0, 1, 2});
        Bearer fb{Bearer::Face, f};
        bool amounts = true;
        for (auto& t : rr.log)
            if (t.to == fb) amounts = amounts && t.amount == Charge(1, 2);
        r.pass = r.pass && amounts && f >= 0;
        check("(4-,6+,6+) 3-face", f >= 0 ? rr.ledger.face[f] : Charge(99), "-1+2×1/2");
    }
    // Icosahedron: every 3-face sees three 5-vertices.
    {
        auto g = load_fixture("icosahedron");
        auto rr = apply_rules(g, initial_charges(g));
        bool all = true;
        for (int f = 0; f < g.face_count(); ++f)
            all = all && rr.ledger.face[f] == Charge(0) && received(rr.log, {Bearer::Face, f}) == Charge(1);
        r.pass = r.pass && all;
        check("all-5+ 3-face", rr.ledger.face[0], "-1+3×1/3");
    }
    // Octahedron with one edge subdivided: a 2-vertex between two 4-vertices.
    {
        std::vector<std::pair<double, double>> pts = {{0, 3}, {-3, -2}, {3, -2}, {0, -1}, {1, .5}, {-1, .5}, {-1.5, .5}};
        std::vector<Edge> es = {{1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 4}, {0, 5},
                                {1, 5}, {1, 3}, {2, 3}, {2, 4}, {0, 6}, {1, 6}};
        auto g = from_points(pts, es);
        auto rr = apply_rules(g, initial_charges(g));
        Bearer x{Bearer::Vertex, 6};
        bool amounts = received(rr.log, x) == Charge(2) && sent(rr.log, x) == Charge(0);
        r.pass = r.pass && amounts;
        check("2-vertex", rr.ledger.vertex[6], "2-4+2×1");
    }
    {
        int chi = total_chromatic_number(load_fixture("k4").graph());
        bool ok = chi == 5;
        r.pass = r.pass && ok;
        r.lines.push_back(fmt::format("K4 total chromatic number = {} ({})", chi, pass_word(ok)));
    }
    return r;
}

CriterionReport theorem_check(const SuiteOptions& opt) {
    CriterionReport r{3, criterion_name(3), true, {}};
    auto corpus = theorem_corpus(opt);
    int solved = 0, tight = 0, bad = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i].graph();
        auto c = solve(g, 9);
        bool ok = c && verify_total_coloring(g, *c).empty();
        solved += ok;
        int chi = total_chromatic_number(g);
        ok = ok && chi >= g.max_degree() + 1 && chi <= 9;
        tight += chi == g.max_degree() + 1;
        if (!ok && bad++ < 3) r.lines.push_back(fmt::format("graph {}: chi''={} solved={}", i, chi, c.has_value()));
    }
    r.pass = bad == 0 && static_cast<int>(corpus.size()) >= opt.theorem_graphs;
    r.lines.insert(r.lines.begin(), fmt::format("graphs={} solved_with_9={} chi''=Delta+1:{} failures={}", corpus.size(),
                                                solved, tight, bad));
    return r;
}

CriterionReport reducibility(const SuiteOptions& opt) {
    CriterionReport r{4, criterion_name(4), true, {}};
    std::uint64_t job = 0;
    for (auto& [fx, lemma] : reducibility_fixtures()) {
        ++job;
        auto g = load_fixture(fx);
        auto ws = match_configuration(catalog_pattern(lemma), g);
        if (ws.empty()) {
            r.pass = false;
            r.lines.push_back(fmt::format("{} {}: no match (FAIL)", fx, lemma));
            continue;
        }
        auto plan = plan_reduction(g, lemma, ws[0]);
        Rng rng(derive(opt.seed, 4, job));
        int tested = 0, recolored = 0, failures = 0;
        std::map<std::string, int> branches;
        const bool can_block = plan.target >= 0 && !plan.anchors.empty();
        const int cap = opt.samples * 40;
        for (int attempt = 0; attempt < cap; ++attempt) {
            if (can_block ? recolored >= opt.samples : tested >= opt.samples) break;
            auto red = sample_reduced_coloring(g.graph(), plan, rng, true);
            if (!red) continue;
            bool hard = plan.target >= 0 && needs_recoloring(g.graph(), plan, *red);
            // Keep every hard sample and enough easy ones to cover the free branch.
            if (can_block && !hard && tested - recolored >= opt.samples / 5) continue;
            ++tested;
            recolored += hard;
            ExtendOptions eo;
            eo.reduced = &*red;
            try {
                auto res = reduce_and_extend(g, lemma, ws[0], eo);
                if (!verify_total_coloring(g.graph(), res.coloring).empty()) throw Error(Errc::ScriptCaseMiss, "improper");
                ++branches[res.branch.substr(0, res.branch.find(' '))];
            } catch (const Error& e) {
                if (failures++ < 2) r.lines.push_back(fmt::format("  {} {}: {}", fx, lemma, e.what()));
            }
        }
        int needed = can_block ? recolored : tested;
        bool ok = failures == 0 && needed >= opt.samples;
        r.pass = r.pass && ok;
        std::string bs;
        for (auto& [k, n] : branches) bs += fmt::format(" {}:{}", k, n);
        r.lines.push_back(fmt::format("{} {} case={} samples={} recolored={} failures={} branches{} ({})", fx, lemma,
                                      plan.scenario, tested, recolored, failures, bs, pass_word(ok)));
    }
    return r;
}

CriterionReport audit_property(const SuiteOptions& opt) {
    CriterionReport r{5, criterion_name(5), true, {}};
    auto corpus = audit_corpus(opt);
    int negative = 0, unexplained = 0, no_negative = 0, max_n = 0;
    std::map<std::string, int> lemmas;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& g = corpus[i];
        max_n = std::max(max_n, g.vertex_count());
        auto a = audit(g);
        if (a.negative.empty()) {
            if (no_negative++ < 3) r.lines.push_back(fmt::format("graph {}: no negative bearer", i));
            continue;
        }
        ++negative;
        if (a.violations.empty()) {
            if (unexplained++ < 3)
                r.lines.push_back(fmt::format("graph {} unexplained:\n{}", i, serialize_embedding(g)));
        }
        std::set<std::string> seen;
        for (auto& v : a.violations) seen.insert(v.lemma);
        for (auto& l : seen) ++lemmas[l];
    }
    r.pass = unexplained == 0 && no_negative == 0 && static_cast<int>(corpus.size()) >= opt.audit_graphs;
    std::string ls;
    for (auto& [k, n] : lemmas) ls += fmt::format(" {}:{}", k, n);
    r.lines.insert(r.lines.begin(), fmt::format("graphs={} max_n={} with_negative={} unexplained={} without_negative={}",
                                                corpus.size(), max_n, negative, unexplained, no_negative));
    r.lines.insert(r.lines.begin() + 1, "graphs reporting each lemma:" + ls);
    return r;
}

CriterionReport oracles(const SuiteOptions& opt) {
    CriterionReport r{6, criterion_name(6), true, {}};
    int hosts = 0, pairs = 0, witnesses = 0, mismatches = 0;
    for (auto& name : fixture_names()) {
        auto g = load_fixture(name);
        if (g.vertex_count() > opt.oracle_max_vertices) continue;
        ++hosts;
        for (auto& p : pattern_catalog()) {
            ++pairs;
            auto fast = match_configuration(p, g);
            auto slow = brute_force_matches(p, g);
            witnesses += static_cast<int>(slow.size());
            if (fast != slow && mismatches++ < 3)
                r.lines.push_back(fmt::format("matcher mismatch: {} on {} ({} vs {})", p.id, name, fast.size(), slow.size()));
        }
    }
    r.lines.push_back(fmt::format("matcher: hosts={} pattern_pairs={} witnesses={} mismatches={}", hosts, pairs, witnesses,
                                  mismatches));

    int graphs = 0, questions = 0, disagree = 0;
    for (int n = 1; n <= opt.oracle_max_elements; ++n) {
        std::vector<Edge> all;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) all.push_back({a, b});
        int max_m = std::min<int>(opt.oracle_max_elements - n, static_cast<int>(all.size()));
        // Every edge subset of size <= max_m, by bitmask over `all`.
        std::uint64_t limit = all.size() >= 63 ? ~0ull : (1ull << all.size());
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            if (__builtin_popcountll(mask) > max_m) continue;
            std::vector<Edge> es;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (mask >> i & 1) es.push_back(all[i]);
            Graph g(n, es);
            ++graphs;
            for (int k = 1; k <= g.max_degree() + 2; ++k) {
                ++questions;
                bool a = solve(g, k).has_value();
                bool b = brute_force_colorable(g, k);
                if (a != b && disagree++ < 3)
                    r.lines.push_back(fmt::format("solver mismatch: n={} m={} k={}", n, es.size(), k));
            }
        }
    }
    r.lines.push_back(fmt::format("solver: graphs={} questions={} disagreements={}", graphs, questions, disagree));
    r.pass = mismatches == 0 && disagree == 0;
    return r;
}

} // namespace


std::string criterion_name(int id) {
    switch (id) {
    case 1: return "charge-identity";
    case 2: return "rule-arithmetic";
    case 3: return "theorem-desk-check";
    case 4: return "reducibility";
    case 5: return "audit-property";
    case 6: return "oracle-equivalence";
    case 7: return "determinism";
    }
    throw Error(Errc::InvalidArgument, fmt::format("no criterion {}", id));
}

CriterionReport run_criterion(int id, const SuiteOptions& opt) {
    switch (id) {
    case 1: return charge_identity(opt);
    case 2: return rule_arithmetic(opt);
    case 3: return theorem_check(opt);
    case 4: return reducibility(opt);
    case 5: return audit_property(opt);
    case 6: return oracles(opt);
    }
    throw Error(Errc::InvalidArgument, fmt::format("criterion {} is not a single-run suite", id));
}

std::string format_report(const SuiteOptions& opt, const std::vector<CriterionReport>& reports) {
    std::string out = fmt::format(
        "corpus-run seed={} charge_graphs={} theorem_graphs={} audit_graphs={} samples={} oracle_vertices={} "
        "oracle_elements={}\n",
        opt.seed, opt.charge_graphs, opt.theorem_graphs, opt.audit_graphs, opt.samples, opt.oracle_max_vertices,
        opt.oracle_max_elements);
    int passed = 0;
    for (auto& r : reports) {
        passed += r.pass;
        out += fmt::format("criterion {} {}: {}\n", r.id, r.name, pass_word(r.pass));
        for (auto& l : r.lines) out += "  " + l + "\n";
    }
    out += fmt::format("summary: {}/{} pass\n", passed, reports.size());
    return out;
}

std::vector<PlanarEmbedding> charge_corpus(const SuiteOptions& opt) {
    return draw(
        opt, 1, opt.charge_graphs,
        [&](Rng& rng) {
            GeneratorConfig c;
            c.n = 3 + static_cast<int>(rng.below(opt.charge_max_n - 2));
            c.forbid_four_fan = rng.chance(1, 2);
            c.deletion_probability = static_cast<double>(rng.below(4)) / 10.0;
            return c;
        },
        [](const PlanarEmbedding&) { return true; });
}

std::vector<PlanarEmbedding> theorem_corpus(const SuiteOptions& opt) {
    return draw(
        opt, 3, opt.theorem_graphs,
        [&](Rng& rng) {
            GeneratorConfig c;
            c.n = 9 + static_cast<int>(rng.below(std::max(1, opt.theorem_max_n - 8)));
            c.deletion_probability = static_cast<double>(rng.below(3)) / 20.0;
            return c;
        },
        [](const PlanarEmbedding& g) { return g.graph().max_degree() == 8; });
}

std::vector<PlanarEmbedding> audit_corpus(const SuiteOptions& opt) {
    auto out = theorem_corpus(opt);
    int more = std::max(0, opt.audit_graphs - static_cast<int>(out.size()));
    auto big = draw(
        opt, 5, more,
        [&](Rng& rng) {
            GeneratorConfig c;
            c.n = opt.theorem_max_n + 1 + static_cast<int>(rng.below(std::max(1, opt.audit_max_n - opt.theorem_max_n)));
            c.deletion_probability = static_cast<double>(rng.below(4)) / 10.0;
            return c;
        },
        [](const PlanarEmbedding&) { return true; });
    for (auto& g : big) out.push_back(std::move(g));
    return out;
}

std::vector<std::pair<std::string, std::string>> reducibility_fixtures() {
    return {{"lem-uv-10", "lem:uv-10"},
            {"lem-8-has-one-2-shared", "lem:8-has-one-2"},
            {"lem-8-has-one-2-apart", "lem:8-has-one-2"},
            {"lem-8-has-one-2-adjacent", "lem:8-has-one-2"},
            {"lem-7-two-3s-adjacent", "lem:7-two-3s"},
            {"lem-7-two-3s-apart", "lem:7-two-3s"},
            {"lem-8-2and3-adjacent", "lem:8-2and3"},
            {"lem-8-2and3-apart", "lem:8-2and3"},
            {"lem-8-diamond3-no2", "lem:8-diamond3-no2"},
            {"lem-8-two-diamonds", "lem:8-two-diamonds"},
            {"lem-8-233383-4", "lem:8-233383-4"},
            {"lem-8-233383-5", "lem:8-233383-5"},
            {"lem-8-233383-6", "lem:8-233383-6"},
            {"lem-8-233383-7", "lem:8-233383-7"},
            {"cfg-4a", "cfg:4a"},
            {"cfg-4b", "cfg:4b"},
            {"cfg-4c", "cfg:4c"},
            {"cfg-4d", "cfg:4d"},
            {"cfg-4e", "cfg:4e"}};
}

namespace {

bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s) {
        bool fwd = true, bwd = true;
        for (std::size_t i = 0; i < n && (fwd || bwd); ++i) {
            fwd = fwd && a[i] == b[(s + i) % n];
            bwd = bwd && a[i] == b[(s + n - i) % n];
        }
        if (fwd || bwd) return true;
    }
    return false;
}

} // namespace

std::vector<MatchWitness> brute_force_matches(const ConfigurationPattern& p, const PlanarEmbedding& g) {
    std::vector<MatchWitness> out;
    const Graph& h = g.graph();
    const int n = h.vertex_count();
    for (std::size_t vi = 0; vi < p.variants.size(); ++vi) {
        const auto& var = p.variants[vi];
        const int k = static_cast<int>(var.vertices.size());
        std::set<std::pair<std::vector<int>, std::vector<Edge>>> images;
        std::vector<int> map(k, -1);
        std::vector<char> used(n, 0);
        auto leaf = [&] {
            for (auto& s : var.sums)
                if (h.degree(map[s.a]) + h.degree(map[s.b]) > s.max) return;
            for (auto& ef : var.edge_faces) {
                bool ok = false;
                for (auto& f : g.faces())
                    for (auto& d : f.darts) {
                        bool on = (d.from == map[ef.a] && d.to == map[ef.b]) || (d.from == map[ef.b] && d.to == map[ef.a]);
                        ok = ok || (on && f.length() >= ef.min_len && f.length() <= ef.max_len);
                    }
                if (!ok) return;
            }
            std::vector<int> fids;
            for (auto& fc : var.faces) {
                std::vector<int> want;
                for (int x : fc.cycle) want.push_back(map[x]);
                int id = -1;
                for (int f = 0; f < g.face_count() && id < 0; ++f)
                    if (same_cycle(g.faces()[f].vertices(), want)) id = f;
                if (id < 0) return;
                fids.push_back(id);
            }
            std::vector<int> vs = map;
            std::sort(vs.begin(), vs.end());
            std::vector<Edge> es;
            for (auto [a, b] : var.edges) es.push_back(make_edge(map[a], map[b]));
            std::sort(es.begin(), es.end());
            if (images.insert({vs, es}).second)
                out.push_back(MatchWitness{p.id, static_cast<int>(vi), map, fids});
        };
        std::function<void(int)> rec = [&](int i) {
            if (i == k) return leaf();
            for (int x = 0; x < n; ++x) {
                if (used[x] || !var.vertices[i].degree.admits(h.degree(x))) continue;
                bool ok = true;
                for (auto [a, b] : var.edges) {
                    if (a == i && b < i) ok = ok && h.adjacent(x, map[b]);
                    if (b == i && a < i) ok = ok && h.adjacent(x, map[a]);
                }
                if (!ok) continue;
                map[i] = x;
                used[x] = 1;
                rec(i + 1);
                used[x] = 0;
            }
            map[i] = -1;
        };
        rec(0);
    }
    return out;
}

bool brute_force_colorable(const Graph& g, int k) {
    const int n = g.vertex_count();
    const auto& es = g.edges();
    const int N = n + static_cast<int>(es.size());
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto [a, b] = es[i];
        int x = n + static_cast<int>(i);
        pairs.push_back({a, b});
        pairs.push_back({a, x});
        pairs.push_back({b, x});
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            auto [c, d] = es[j];
            if (a == c || a == d || b == c || b == d) pairs.push_back({x, n + static_cast<int>(j)});
        }
    }
    if (N == 0) return true;
    if (k < 1) return false;
    std::vector<int> col(N, 0);
    while (true) {
        bool ok = true;
        for (auto [x, y] : pairs)
            if (col[x] == col[y]) {
                ok = false;
                break;
            }
        if (ok) return true;
        int i = 0;
        while (i < N && ++col[i] == k) col[i++] = 0;
        if (i == N) return false;
    }
}

} // namespace tc8
