#include "tc8/discharging.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

namespace tc8 {

std::string format_charge(const Charge& c) {
    if (c.denominator() == 1) return fmt::format("{}", c.numerator());
    return fmt::format("{}/{}", c.numerator(), c.denominator());
}

Charge parse_charge(const std::string& s) {
    try {
        std::size_t used = 0;
        auto slash = s.find('/');
        long long num = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
        long long den = 1;
        if (slash != std::string::npos) {
            std::string d = s.substr(slash + 1);
            den = std::stoll(d, &used);
            if (used != d.size() || den <= 0) throw std::invalid_argument(s);
        }
        return Charge(num, den);
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, fmt::format("bad charge '{}'", s));
    }
}

std::string Bearer::name() const { return fmt::format("{}{}", kind == Vertex ? 'v' : 'f', id); }

Charge ChargeLedger::total() const {
    Charge t = 0;
    for (auto& c : vertex) t += c;
    for (auto& c : face) t += c;
    return t;
}

ChargeLedger initial_charges(const PlanarEmbedding& g) {
    ChargeLedger l;
    for (int v = 0; v < g.vertex_count(); ++v) l.vertex.emplace_back(g.degree(v) - 4);
    for (auto& f : g.faces()) l.face.emplace_back(f.length() - 4);
    return l;
}

namespace {

const char* rule_name(Rule r) {
    static const char* names[] = {"", "R1", "R2", "R3", "R4", "R5"};
    return names[static_cast<int>(r)];
}

bool face_has_small_vertex(const PlanarEmbedding& g, int f) {
    for (int x : g.faces()[f].vertices())
        if (g.degree(x) <= 4) return true;
    return false;
}

int eight_occurrences(const PlanarEmbedding& g, int f) {
    int c = 0;
    for (int x : g.faces()[f].vertices()) c += g.degree(x) == 8;
    return c;
}

TransferLog prescribed(const PlanarEmbedding& g) {
    TransferLog log;
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 2)
            for (int w : g.rotation(v)) log.push_back({Rule::R1, {Bearer::Vertex, w}, {Bearer::Vertex, v}, 1});
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 3)
            for (int w : g.rotation(v)) log.push_back({Rule::R2, {Bearer::Vertex, w}, {Bearer::Vertex, v}, Charge(1, 3)});
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) != 5) continue;
        for (int i = 0; i < g.degree(v); ++i) {
            int f = g.face_of_angle(v, i);
            if (g.faces()[f].length() == 3) log.push_back({Rule::R3, {Bearer::Vertex, v}, {Bearer::Face, f}, Charge(1, 3)});
        }
    }
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) < 6) continue;
        for (int i = 0; i < g.degree(v); ++i) {
            int f = g.face_of_angle(v, i);
            if (g.faces()[f].length() != 3) continue;
            Charge amt = face_has_small_vertex(g, f) ? Charge(1, 2) : Charge(1, 3);
            log.push_back({Rule::R4, {Bearer::Vertex, v}, {Bearer::Face, f}, amt});
        }
    }
    for (int f = 0; f < g.face_count(); ++f) {
        int len = g.faces()[f].length();
        int c = eight_occurrences(g, f);
        if (len < 5 || c == 0) continue;
        Charge share(len - 4, c);
        for (int x : g.faces()[f].vertices())
            if (g.degree(x) == 8) log.push_back({Rule::R5, {Bearer::Face, f}, {Bearer::Vertex, x}, share});
    }
    return log;
}

// Empty string when the entry satisfies its rule's predicate.
std::string check_entry(const PlanarEmbedding& g, const Transfer& t) {
    auto vertex_ok = [&](const Bearer& b) { return b.kind == Bearer::Vertex && b.id >= 0 && b.id < g.vertex_count(); };
    auto face_ok = [&](const Bearer& b) { return b.kind == Bearer::Face && b.id >= 0 && b.id < g.face_count(); };
    auto incident = [&](int v, int f) {
        auto vs = g.faces()[f].vertices();
        return std::find(vs.begin(), vs.end(), v) != vs.end();
    };
    switch (t.rule) {
    case Rule::R1:
    case Rule::R2: {
        int d = t.rule == Rule::R1 ? 2 : 3;
        if (!vertex_ok(t.from) || !vertex_ok(t.to)) return "R1/R2 move charge between vertices";
        if (g.degree(t.to.id) != d) return fmt::format("receiver is not a {}-vertex", d);
        if (!g.graph().adjacent(t.from.id, t.to.id)) return "sender is not a neighbour";
        if (t.amount != (d == 2 ? Charge(1) : Charge(1, 3))) return "wrong amount";
        return "";
    }
    case Rule::R3:
    case Rule::R4: {
        if (!vertex_ok(t.from) || !face_ok(t.to)) return "R3/R4 move charge from a vertex to a face";
        int d = g.degree(t.from.id);
        if (t.rule == Rule::R3 ? d != 5 : d < 6) return "sender degree does not fit the rule";
        if (g.faces()[t.to.id].length() != 3 || !incident(t.from.id, t.to.id)) return "receiver is not an incident 3-face";
        Charge want = t.rule == Rule::R4 && face_has_small_vertex(g, t.to.id) ? Charge(1, 2) : Charge(1, 3);
        if (t.amount != want) return "wrong amount";
        return "";
    }
    case Rule::R5: {
        if (!face_ok(t.from) || !vertex_ok(t.to)) return "R5 moves charge from a face to a vertex";
        int len = g.faces()[t.from.id].length();
        int c = eight_occurrences(g, t.from.id);
        if (len < 5 || c == 0) return "sender is not a 5+-face with an 8-vertex";
        if (g.degree(t.to.id) != 8 || !incident(t.to.id, t.from.id)) return "receiver is not an incident 8-vertex";
        if (t.amount != Charge(len - 4, c)) return "wrong share";
        return "";
    }
    }
    return "unknown rule";
}

auto entry_key(const Transfer& t) {
    return std::make_tuple(static_cast<int>(t.rule), static_cast<int>(t.from.kind), t.from.id,
                           static_cast<int>(t.to.kind), t.to.id, t.amount.numerator(), t.amount.denominator());
}

void apply(ChargeLedger& l, const Transfer& t) {
    l.at(t.from) -= t.amount;
    l.at(t.to) += t.amount;
}

Bearer parse_bearer(const std::string& s, int lineno) {
    if (s.size() < 2 || (s[0] != 'v' && s[0] != 'f'))
        throw Error(Errc::ParseError, fmt::format("bad bearer '{}'", s), lineno);
    try {
        std::size_t used = 0;
        int id = std::stoi(s.substr(1), &used);
        if (used != s.size() - 1 || id < 0) throw std::invalid_argument(s);
        return {s[0] == 'v' ? Bearer::Vertex : Bearer::Face, id};
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, fmt::format("bad bearer '{}'", s), lineno);
    }
}

} // namespace

RuleResult apply_rules(const PlanarEmbedding& g, const ChargeLedger& initial) {
    RuleResult r{initial, prescribed(g)};
    for (auto& t : r.log) apply(r.ledger, t);
    r.ledger.phase = ChargeLedger::Final;
    return r;
}

ChargeLedger replay(const PlanarEmbedding& g, const ChargeLedger& initial, const TransferLog& log) {
    if (initial.vertex.size() != static_cast<std::size_t>(g.vertex_count()) ||
        initial.face.size() != static_cast<std::size_t>(g.face_count()))
        throw Error(Errc::LogMismatch, "ledger does not fit the embedding");
    for (std::size_t i = 0; i < log.size(); ++i) {
        auto why = check_entry(g, log[i]);
        if (!why.empty())
            throw Error(Errc::LogMismatch, fmt::format("entry {} ({} {} -> {}): {}", i + 1, rule_name(log[i].rule),
                                                       log[i].from.name(), log[i].to.name(), why));
    }
    auto want = prescribed(g);
    auto got = log;
    auto less = [](const Transfer& a, const Transfer& b) { return entry_key(a) < entry_key(b); };
    std::sort(want.begin(), want.end(), less);
    std::sort(got.begin(), got.end(), less);
    if (want != got)
        throw Error(Errc::LogMismatch,
                    fmt::format("log has {} entries, the rules prescribe {}", log.size(), want.size()));
    ChargeLedger l = initial;
    for (auto& t : log) apply(l, t);
    l.phase = ChargeLedger::Final;
    return l;
}

std::string format_log(const TransferLog& log) {
    std::string out = fmt::format("log {}\n", log.size());
    for (auto& t : log)
        out += fmt::format("{} {} {} {}\n", rule_name(t.rule), t.from.name(), t.to.name(), format_charge(t.amount));
    return out;
}

TransferLog parse_log(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long declared = -1;
    TransferLog log;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (declared < 0) {
            if (tok.size() != 2 || tok[0] != "log") throw Error(Errc::ParseError, "expected 'log <count>'", lineno);
            try {
                declared = std::stol(tok[1]);
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "bad entry count", lineno);
            }
            continue;
        }
        if (tok.size() != 4 || tok[0].size() != 2 || tok[0][0] != 'R' || tok[0][1] < '1' || tok[0][1] > '5')
            throw Error(Errc::ParseError, "expected '<rule> <from> <to> <amount>'", lineno);
        Transfer t{static_cast<Rule>(tok[0][1] - '0'), parse_bearer(tok[1], lineno), parse_bearer(tok[2], lineno),
                   parse_charge(tok[3])};
        log.push_back(t);
    }
    if (declared < 0) throw Error(Errc::ParseError, "missing header", lineno + 1);
    if (declared != static_cast<long>(log.size()))
        throw Error(Errc::LogMismatch, fmt::format("header declares {} entries, found {}", declared, log.size()));
    return log;
}

Charge evaluate_bound(const std::string& expr) {
    // Terms separated by + or -, each "a×p/q", "p/q" or "a" ("x" and "*" also accepted).
    std::string s;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        if (expr.compare(i, 2, "\xC3\x97") == 0) {
            s += '*';
            ++i;
        } else if (expr[i] == 'x') {
            s += '*';
        } else if (expr[i] != ' ') {
            s += expr[i];
        }
    }
    Charge total = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
        std::size_t j = s.find_first_of("+-", i);
        std::string term = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
        if (term.empty()) throw Error(Errc::ParseError, fmt::format("bad bound '{}'", expr));
        Charge value = 1;
        std::size_t star = term.find('*');
        if (star != std::string::npos) {
            value = parse_charge(term.substr(0, star));
            term = term.substr(star + 1);
        }
        value *= parse_charge(term);
        total += sign * value;
        i = j == std::string::npos ? s.size() : j;
    }
    return total;
}

VertexDiagnostic classify_vertex(const PlanarEmbedding& g, const ChargeLedger& final_ledger, int v) {
    VertexDiagnostic d;
    d.vertex = v;
    d.degree = g.degree(v);
    d.final_charge = final_ledger.vertex.at(v);
    for (int i = 0; i < d.degree; ++i) {
        int w = g.rotation(v)[i];
        d.n2 += g.degree(w) == 2;
        d.n3 += g.degree(w) == 3;
        int f = g.face_of_angle(v, i);
        auto& face = g.faces()[f];
        if (face.length() == 3) {
            ++d.m3;
            auto vs = face.vertices();
            std::set<int> distinct(vs.begin(), vs.end());
            bool big = distinct.size() == 3 && d.degree == 8;
            for (int x : vs)
                if (x != v && g.degree(x) < 5) big = false;
            d.big_triangles += big;
        } else if (face.length() >= 5) {
            int next = g.rotation(v)[(i + 1) % d.degree];
            if (g.degree(w) <= 3 && g.degree(next) <= 3 && w != next) ++d.rich_faces;
        }
    }
    const int k = d.degree, m3 = d.m3, n3 = d.n3, t = d.big_triangles;
    std::string label, bound;
    if (k == 5) {
        label = "(3) k=5";
        if (m3 <= 3) bound = "1-3×1/3";
    } else if (k == 6) {
        label = "(4) k=6";
        if (m3 <= 4) bound = "2-4×1/2";
    } else if (k == 7) {
        label = fmt::format("(5) k=7, m3={}", m3);
        static const char* b7[] = {"3-1/2-7×1/3", "3-1/2-7×1/3", "3-2×1/2-6×1/3", "3-3×1/2-4×1/3", "3-4×1/2-2×1/3",
                                   "3-5×1/2-1/3"};
        if (m3 <= 5) bound = b7[m3];
    } else if (k == 8 && d.n2 == 0) {
        label = fmt::format("(6) k=8, no 2-neighbour, m3={}", m3);
        if (m3 <= 2) bound = "4-2×1/2-8×1/3";
        else if (m3 <= 4) bound = "4-4×1/2-6×1/3";
        else if (m3 == 5) {
            label += fmt::format(", n3={}", n3);
            if (n3 <= 4) bound = "4-5×1/2-4×1/3";
            else if (t >= 1) label += ", (5+,5+,8)-triangle", bound = "4-4×1/2-1/3-5×1/3";
            else bound = "4+1/3-5×1/2-5×1/3";
        } else if (m3 == 6) {
            label += fmt::format(", n3={}", n3);
            if (n3 <= 3) bound = "4-6×1/2-3×1/3";
            else if (t >= 2) label += ", two (5+,5+,8)-triangles", bound = "4-4×1/2-2×1/3-4×1/3";
            else bound = "4+1/3-6×1/2-4×1/3";
        }
    } else if (k == 8 && d.n2 == 1) {
        label = fmt::format("(6) k=8, one 2-neighbour, m3={}", m3);
        if (m3 == 0) label = "(6.1) k=8, m3=0", bound = "4-1-7×1/3";
        else if (m3 <= 2) label = fmt::format("(6.1) k=8, m3={}", m3), bound = "4-2×1/2-1-6×1/3";
        else if (m3 == 3) {
            label = fmt::format("(6.2) k=8, m3=3, n3={}", n3);
            if (n3 <= 4) bound = "4-3×1/2-1-4×1/3";
            else if (t >= 1) label += ", (5+,5+,8)-triangle", bound = "4-2×1/2-1/3-1-5×1/3";
            else bound = "4+1/3-3×1/2-1-5×1/3";
        } else if (m3 == 4) {
            label = fmt::format("(6.3) k=8, m3=4, n3={}", n3);
            if (n3 <= 3) bound = "4-4×1/2-1-3×1/3";
            else if (n3 == 4) bound = "4+1/3-4×1/2-1-4×1/3";
            else if (n3 == 5) bound = "4+2×1/3-4×1/2-1-5×1/3";
        } else if (m3 == 5) {
            label = fmt::format("(6.4) k=8, m3=5, n3={}", n3);
            if (n3 <= 1) bound = "4-5×1/2-1-1/3";
            else if (n3 == 2) bound = "4+1/3-5×1/2-1-2×1/3";
            else if (n3 == 3) bound = "4+2×1/3-5×1/2-1-3×1/3";
            else if (n3 == 4) bound = "4+2×1/3-4×1/2-1/3-1-4×1/3";
        } else if (m3 == 6) {
            label = "(6.5) k=8, m3=6", bound = "4-6×1/2-1";
        }
    } else if (k == 8) {
        label = fmt::format("(6) k=8, {} 2-neighbours", d.n2);
    } else {
        label = fmt::format("k={} outside the regime", k);
    }
    d.case_label = label;
    d.bound = bound;
    d.bound_value = bound.empty() ? Charge(0) : evaluate_bound(bound);
    return d;
}

std::string AuditReport::verdict() const {
    if (negative.empty()) return "nonnegative";
    return violations.empty() ? "unexplained" : "justified";
}

AuditReport audit(const PlanarEmbedding& g) {
    AuditReport r;
    r.max_degree = g.graph().max_degree();
    r.in_regime = r.max_degree <= 8;
    auto init = initial_charges(g);
    auto fin = apply_rules(g, init);
    r.initial_total = init.total();
    r.final_total = fin.ledger.total();
    for (int v = 0; v < g.vertex_count(); ++v)
        if (fin.ledger.vertex[v] < 0) r.negative.push_back({{Bearer::Vertex, v}, fin.ledger.vertex[v]});
    for (int f = 0; f < g.face_count(); ++f) {
        if (fin.ledger.face[f] < 0) r.negative.push_back({{Bearer::Face, f}, fin.ledger.face[f]});
        if (g.faces()[f].repeats_vertex()) r.repeated_vertex_faces.push_back(f);
    }
    r.violations = structural_violations(g);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= 5) r.diagnostics.push_back(classify_vertex(g, fin.ledger, v));
    return r;
}

AuditReport audit_strict(const PlanarEmbedding& g) {
    int d = g.graph().max_degree();
    if (d > 8) throw Error(Errc::DeltaExceeded, fmt::format("maximum degree {} exceeds 8", d));
    return audit(g);
}

std::string format_audit(const PlanarEmbedding& g, const AuditReport& r) {
    std::string out;
    out += fmt::format("vertices {} edges {} faces {}\n", g.vertex_count(), g.edge_count(), g.face_count());
    out += fmt::format("max degree {}{}\n", r.max_degree, r.in_regime ? "" : " (out of regime: exceeds 8)");
    out += fmt::format("initial total {}\n", format_charge(r.initial_total));
    out += fmt::format("final total {}\n", format_charge(r.final_total));
    out += fmt::format("negative bearers {}\n", r.negative.size());
    for (auto& [b, c] : r.negative) out += fmt::format("  {} {}\n", b.name(), format_charge(c));
    out += fmt::format("structural violations {}\n", r.violations.size());
    for (auto& v : r.violations) out += "  " + format_witness(catalog_pattern(v.lemma), v.witness) + "\n";
    if (!r.repeated_vertex_faces.empty()) {
        out += "faces repeating a vertex";
        for (int f : r.repeated_vertex_faces) out += fmt::format(" f{}", f);
        out += "\n";
    }
    out += fmt::format("diagnostics {}\n", r.diagnostics.size());
    for (auto& d : r.diagnostics) {
        out += fmt::format("  v{} d={} m3={} n2={} n3={} tri558={} rich5={} final={} case \"{}\"", d.vertex, d.degree,
                           d.m3, d.n2, d.n3, d.big_triangles, d.rich_faces, format_charge(d.final_charge),
                           d.case_label);
        if (!d.bound.empty()) out += fmt::format(" bound {} = {}", d.bound, format_charge(d.bound_value));
        out += "\n";
    }
    out += fmt::format("verdict {}\n", r.verdict());
    return out;
}

std::string format_audit_json(const PlanarEmbedding& g, const AuditReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["faces"] = g.face_count();
    j["max_degree"] = r.max_degree;
    j["in_regime"] = r.in_regime;
    j["initial_total"] = format_charge(r.initial_total);
    j["final_total"] = format_charge(r.final_total);
    j["negative"] = ordered_json::array();
    for (auto& [b, c] : r.negative) j["negative"].push_back({{"bearer", b.name()}, {"charge", format_charge(c)}});
    j["violations"] = ordered_json::array();
    for (auto& v : r.violations)
        j["violations"].push_back({{"lemma", v.lemma}, {"map", v.witness.map}, {"faces", v.witness.faces}});
    j["repeated_vertex_faces"] = r.repeated_vertex_faces;
    j["diagnostics"] = ordered_json::array();
    for (auto& d : r.diagnostics) {
        ordered_json e = {{"vertex", d.vertex}, {"degree", d.degree},     {"m3", d.m3},
                          {"n2", d.n2},         {"n3", d.n3},             {"tri558", d.big_triangles},
                          {"rich5", d.rich_faces}, {"final", format_charge(d.final_charge)}, {"case", d.case_label}};
        if (!d.bound.empty()) e["bound"] = d.bound, e["bound_value"] = format_charge(d.bound_value);
        j["diagnostics"].push_back(e);
    }
    j["verdict"] = r.verdict();
    return j.dump(2) + "\n";
}

} // namespace tc8
