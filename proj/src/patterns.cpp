#include "tc8/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace tc8 {

const char* embedded_pattern_catalog(); // generated from data/patterns

int PatternVariant::index_of(const std::string& n) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].name == n) return static_cast<int>(i);
    return -1;
}

namespace {

DegreeConstraint parse_bound(const std::string& tok, int lineno) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw Error(Errc::ParseError, fmt::format("bad bound '{}'", tok), lineno);
    std::string kind = tok.substr(0, colon);
    int k;
    try {
        k = std::stoi(tok.substr(colon + 1));
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, fmt::format("bad bound '{}'", tok), lineno);
    }
    if (kind == "exact") return {DegreeConstraint::Exact, k};
    if (kind == "min") return {DegreeConstraint::Min, k};
    if (kind == "max") return {DegreeConstraint::Max, k};
    throw Error(Errc::ParseError, fmt::format("bad bound '{}'", tok), lineno);
}

std::string bound_text(const DegreeConstraint& d) {
    const char* k = d.kind == DegreeConstraint::Exact ? "exact" : d.kind == DegreeConstraint::Min ? "min" : "max";
    return fmt::format("{}:{}", k, d.k);
}

std::vector<ConfigurationPattern> parse_many(const std::string& text) {
    std::vector<ConfigurationPattern> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    PatternVariant* cur = nullptr;
    auto need = [&](int lineno) -> PatternVariant& {
        if (out.empty()) throw Error(Errc::ParseError, "directive before 'pattern'", lineno);
        if (!cur) {
            out.back().variants.emplace_back();
            cur = &out.back().variants.back();
        }
        return *cur;
    };
    auto vid = [&](PatternVariant& v, const std::string& n, int lineno) {
        int i = v.index_of(n);
        if (i < 0) throw Error(Errc::ParseError, fmt::format("unknown pattern vertex '{}'", n), lineno);
        return i;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string dir;
        if (!(ls >> dir)) continue;
        std::vector<std::string> args;
        for (std::string t; ls >> t;) args.push_back(t);
        if (dir == "pattern") {
            if (args.size() != 1) throw Error(Errc::ParseError, "pattern takes one id", lineno);
            out.push_back({args[0], "", {}});
            cur = nullptr;
        } else if (dir == "describe") {
            if (out.empty()) throw Error(Errc::ParseError, "describe before pattern", lineno);
            auto pos = line.find("describe") + 8;
            auto first = line.find_first_not_of(" \t", pos);
            out.back().description = first == std::string::npos ? "" : line.substr(first);
        } else if (dir == "variant") {
            if (out.empty() || args.size() != 1) throw Error(Errc::ParseError, "variant needs a pattern and a name", lineno);
            out.back().variants.emplace_back();
            cur = &out.back().variants.back();
            cur->name = args[0];
        } else if (dir == "vertex") {
            auto& v = need(lineno);
            if (args.size() != 2) throw Error(Errc::ParseError, "vertex <name> <bound>", lineno);
            if (v.index_of(args[0]) >= 0) throw Error(Errc::ParseError, fmt::format("duplicate vertex '{}'", args[0]), lineno);
            v.vertices.push_back({args[0], parse_bound(args[1], lineno)});
        } else if (dir == "edge") {
            auto& v = need(lineno);
            if (args.size() != 2) throw Error(Errc::ParseError, "edge <a> <b>", lineno);
            int a = vid(v, args[0], lineno), b = vid(v, args[1], lineno);
            if (a == b) throw Error(Errc::ParseError, "pattern loop", lineno);
            for (auto& e : v.edges)
                if (make_edge(e.first, e.second) == make_edge(a, b))
                    throw Error(Errc::ParseError, "duplicate pattern edge", lineno);
            v.edges.emplace_back(a, b);
        } else if (dir == "face") {
            auto& v = need(lineno);
            if (args.size() < 2) throw Error(Errc::ParseError, "face needs at least two vertices", lineno);
            FaceCycle f;
            for (auto& a : args) f.cycle.push_back(vid(v, a, lineno));
            v.faces.push_back(std::move(f));
        } else if (dir == "edgeface") {
            auto& v = need(lineno);
            if (args.size() < 3) throw Error(Errc::ParseError, "edgeface <a> <b> <bound>...", lineno);
            EdgeFace ef{vid(v, args[0], lineno), vid(v, args[1], lineno)};
            for (std::size_t i = 2; i < args.size(); ++i) {
                auto d = parse_bound(args[i], lineno);
                if (d.kind == DegreeConstraint::Min) ef.min_len = d.k;
                else if (d.kind == DegreeConstraint::Max) ef.max_len = d.k;
                else ef.min_len = ef.max_len = d.k;
            }
            v.edge_faces.push_back(ef);
        } else if (dir == "sum") {
            auto& v = need(lineno);
            if (args.size() != 3) throw Error(Errc::ParseError, "sum <a> <b> max:k", lineno);
            auto d = parse_bound(args[2], lineno);
            if (d.kind != DegreeConstraint::Max) throw Error(Errc::ParseError, "sum supports max:k only", lineno);
            v.sums.push_back({vid(v, args[0], lineno), vid(v, args[1], lineno), d.k});
        } else {
            throw Error(Errc::ParseError, fmt::format("unknown directive '{}'", dir), lineno);
        }
    }
    for (auto& p : out)
        if (p.variants.empty()) throw Error(Errc::ParseError, fmt::format("pattern {} has no vertices", p.id));
    return out;
}

// Smallest rotation of the cycle or of its reverse.
std::vector<int> canonical_cycle(std::vector<int> c) {
    std::vector<int> best;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t r = 0; r < c.size(); ++r) {
            std::vector<int> rot(c.begin() + r, c.end());
            rot.insert(rot.end(), c.begin(), c.begin() + r);
            if (best.empty() || rot < best) best = rot;
        }
        std::reverse(c.begin(), c.end());
    }
    return best;
}

struct FaceIndex {
    std::map<std::vector<int>, int> by_cycle;
    explicit FaceIndex(const PlanarEmbedding& g) {
        for (int f = 0; f < g.face_count(); ++f) by_cycle.emplace(canonical_cycle(g.faces()[f].vertices()), f);
    }
    int find(const std::vector<int>& cyc) const {
        auto it = by_cycle.find(canonical_cycle(cyc));
        return it == by_cycle.end() ? -1 : it->second;
    }
};

bool edge_on_face(const PlanarEmbedding& g, int a, int b, int lo, int hi) {
    if (!g.graph().adjacent(a, b)) return false;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        int len = g.faces()[g.face_of_dart(x, y)].length();
        if (len >= lo && len <= hi) return true;
    }
    return false;
}

// Checks the constraints that need the full map; fills face ids.
bool check_global(const PatternVariant& p, const std::vector<int>& map, const PlanarEmbedding& g, const FaceIndex& fi,
                  std::vector<int>* faces) {
    for (auto& s : p.sums)
        if (g.degree(map[s.a]) + g.degree(map[s.b]) > s.max) return false;
    for (auto& ef : p.edge_faces)
        if (!edge_on_face(g, map[ef.a], map[ef.b], ef.min_len, ef.max_len)) return false;
    std::vector<int> fs;
    for (auto& f : p.faces) {
        std::vector<int> cyc;
        for (int x : f.cycle) cyc.push_back(map[x]);
        int id = fi.find(cyc);
        if (id < 0) return false;
        fs.push_back(id);
    }
    if (faces) *faces = std::move(fs);
    return true;
}

using ImageKey = std::pair<std::vector<int>, std::vector<Edge>>;

ImageKey image_key(const PatternVariant& p, const std::vector<int>& map) {
    ImageKey k;
    k.first = map;
    std::sort(k.first.begin(), k.first.end());
    for (auto& e : p.edges) k.second.push_back(make_edge(map[e.first], map[e.second]));
    std::sort(k.second.begin(), k.second.end());
    return k;
}

class Matcher {
public:
    Matcher(const PatternVariant& p, const PlanarEmbedding& g, const FaceIndex& fi, bool first_only)
        : p_(p), g_(g), fi_(fi), first_only_(first_only) {
        const int k = static_cast<int>(p.vertices.size());
        adj_.assign(k, {});
        for (auto& e : p.edges) {
            adj_[e.first].push_back(e.second);
            adj_[e.second].push_back(e.first);
        }
        // Breadth-first order so that most vertices have a placed neighbour.
        std::vector<char> placed(k, 0);
        for (int s = 0; s < k; ++s) {
            if (placed[s]) continue;
            std::vector<int> q{s};
            placed[s] = 1;
            for (std::size_t i = 0; i < q.size(); ++i) {
                order_.push_back(q[i]);
                for (int w : adj_[q[i]])
                    if (!placed[w]) placed[w] = 1, q.push_back(w);
            }
        }
        pos_.assign(k, 0);
        for (int i = 0; i < k; ++i) pos_[order_[i]] = i;
        // Each non-edge constraint is checked as soon as its last vertex is placed.
        ready_faces_.assign(k, {});
        ready_edge_faces_.assign(k, {});
        ready_sums_.assign(k, {});
        for (std::size_t f = 0; f < p.faces.size(); ++f) {
            int r = 0;
            for (int x : p.faces[f].cycle) r = std::max(r, pos_[x]);
            ready_faces_[r].push_back(static_cast<int>(f));
        }
        for (std::size_t f = 0; f < p.edge_faces.size(); ++f)
            ready_edge_faces_[std::max(pos_[p.edge_faces[f].a], pos_[p.edge_faces[f].b])].push_back(static_cast<int>(f));
        for (std::size_t f = 0; f < p.sums.size(); ++f)
            ready_sums_[std::max(pos_[p.sums[f].a], pos_[p.sums[f].b])].push_back(static_cast<int>(f));
        map_.assign(k, -1);
        face_ids_.assign(p.faces.size(), -1);
        used_.assign(g.vertex_count(), 0);
    }

    void run() {
        if (!order_.empty()) rec(0);
    }
    std::map<ImageKey, MatchWitness>& found() { return found_; }
    bool done() const { return first_only_ && !found_.empty(); }

private:
    bool local_ok(int i) {
        for (int s : ready_sums_[i]) {
            auto& c = p_.sums[s];
            if (g_.degree(map_[c.a]) + g_.degree(map_[c.b]) > c.max) return false;
        }
        for (int e : ready_edge_faces_[i]) {
            auto& c = p_.edge_faces[e];
            if (!edge_on_face(g_, map_[c.a], map_[c.b], c.min_len, c.max_len)) return false;
        }
        for (int f : ready_faces_[i]) {
            std::vector<int> cyc;
            for (int x : p_.faces[f].cycle) cyc.push_back(map_[x]);
            face_ids_[f] = fi_.find(cyc);
            if (face_ids_[f] < 0) return false;
        }
        return true;
    }

    void rec(int i) {
        if (done()) return;
        const int k = static_cast<int>(order_.size());
        int x = order_[i];
        int anchor = -1;
        for (int w : adj_[x])
            if (pos_[w] < i) {
                anchor = w;
                break;
            }
        auto try_host = [&](int h) {
            if (used_[h] || !p_.vertices[x].degree.admits(g_.degree(h))) return;
            for (int w : adj_[x])
                if (pos_[w] < i && !g_.graph().adjacent(h, map_[w])) return;
            map_[x] = h;
            used_[h] = 1;
            if (local_ok(i)) {
                if (i + 1 == k) record();
                else rec(i + 1);
            }
            used_[h] = 0;
            map_[x] = -1;
        };
        if (anchor >= 0) {
            for (int h : g_.graph().neighbors(map_[anchor])) {
                try_host(h);
                if (done()) return;
            }
        } else {
            for (int h = 0; h < g_.vertex_count() && !done(); ++h) try_host(h);
        }
    }

    void record() {
        auto key = image_key(p_, map_);
        auto it = found_.find(key);
        if (it == found_.end() || map_ < it->second.map) found_[key] = MatchWitness{"", 0, map_, face_ids_};
    }

    const PatternVariant& p_;
    const PlanarEmbedding& g_;
    const FaceIndex& fi_;
    bool first_only_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> order_, pos_, map_, face_ids_;
    std::vector<std::vector<int>> ready_faces_, ready_edge_faces_, ready_sums_;
    std::vector<char> used_;
    std::map<ImageKey, MatchWitness> found_;
};

std::vector<MatchWitness> run_match(const ConfigurationPattern& p, const PlanarEmbedding& g, bool first_only) {
    FaceIndex fi(g);
    std::vector<MatchWitness> out;
    for (std::size_t v = 0; v < p.variants.size(); ++v) {
        Matcher m(p.variants[v], g, fi, first_only);
        m.run();
        std::vector<MatchWitness> part;
        for (auto& [key, w] : m.found()) {
            w.pattern = p.id;
            w.variant = static_cast<int>(v);
            part.push_back(w);
        }
        std::sort(part.begin(), part.end(), [](const MatchWitness& a, const MatchWitness& b) { return a.map < b.map; });
        out.insert(out.end(), part.begin(), part.end());
        if (first_only && !out.empty()) break;
    }
    return out;
}

} // namespace

ConfigurationPattern parse_pattern(const std::string& text) {
    auto all = parse_many(text);
    if (all.size() != 1) throw Error(Errc::ParseError, fmt::format("expected one pattern, found {}", all.size()));
    return all[0];
}

std::string format_pattern(const ConfigurationPattern& p) {
    std::string out = fmt::format("pattern {}\n", p.id);
    if (!p.description.empty()) out += fmt::format("describe {}\n", p.description);
    for (auto& v : p.variants) {
        if (p.variants.size() > 1 || v.name != "main") out += fmt::format("variant {}\n", v.name);
        for (auto& x : v.vertices) out += fmt::format("vertex {} {}\n", x.name, bound_text(x.degree));
        for (auto& e : v.edges) out += fmt::format("edge {} {}\n", v.vertices[e.first].name, v.vertices[e.second].name);
        for (auto& f : v.faces) {
            out += "face";
            for (int x : f.cycle) out += " " + v.vertices[x].name;
            out += "\n";
        }
        for (auto& ef : v.edge_faces) {
            out += fmt::format("edgeface {} {}", v.vertices[ef.a].name, v.vertices[ef.b].name);
            if (ef.min_len > 1) out += fmt::format(" min:{}", ef.min_len);
            if (ef.max_len < (1 << 30)) out += fmt::format(" max:{}", ef.max_len);
            out += "\n";
        }
        for (auto& s : v.sums)
            out += fmt::format("sum {} {} max:{}\n", v.vertices[s.a].name, v.vertices[s.b].name, s.max);
    }
    return out;
}

const std::vector<ConfigurationPattern>& pattern_catalog() {
    static const std::vector<ConfigurationPattern> cat = parse_many(embedded_pattern_catalog());
    return cat;
}

const ConfigurationPattern& catalog_pattern(const std::string& id) {
    for (auto& p : pattern_catalog())
        if (p.id == id) return p;
    throw Error(Errc::UnknownPattern, fmt::format("no catalog entry '{}'", id));
}

const ConfigurationPattern& four_fan_pattern() { return catalog_pattern("fan4"); }

bool validate_witness(const ConfigurationPattern& p, const MatchWitness& w, const PlanarEmbedding& g) {
    if (w.variant < 0 || w.variant >= static_cast<int>(p.variants.size())) return false;
    auto& v = p.variants[w.variant];
    if (w.map.size() != v.vertices.size()) return false;
    std::set<int> seen;
    for (std::size_t i = 0; i < w.map.size(); ++i) {
        int h = w.map[i];
        if (h < 0 || h >= g.vertex_count() || !seen.insert(h).second) return false;
        if (!v.vertices[i].degree.admits(g.degree(h))) return false;
    }
    for (auto& e : v.edges)
        if (!g.graph().adjacent(w.map[e.first], w.map[e.second])) return false;
    FaceIndex fi(g);
    std::vector<int> faces;
    return check_global(v, w.map, g, fi, &faces) && faces == w.faces;
}

std::vector<MatchWitness> match_configuration(const ConfigurationPattern& p, const PlanarEmbedding& g) {
    return run_match(p, g, false);
}

std::optional<MatchWitness> first_match(const ConfigurationPattern& p, const PlanarEmbedding& g) {
    auto w = run_match(p, g, true);
    if (w.empty()) return std::nullopt;
    return w.front();
}

std::optional<MatchWitness> contains_four_fan(const PlanarEmbedding& g) { return first_match(four_fan_pattern(), g); }

std::vector<StructuralViolation> structural_violations(const PlanarEmbedding& g) {
    std::vector<StructuralViolation> out;
    for (auto& p : pattern_catalog()) {
        if (p.id.rfind("lem:", 0) != 0 && p.id.rfind("cfg:", 0) != 0) continue;
        for (auto& w : match_configuration(p, g)) out.push_back({p.id, w});
    }
    return out;
}

std::string format_witness(const ConfigurationPattern& p, const MatchWitness& w) {
    auto& v = p.variants.at(w.variant);
    std::string out = p.id;
    if (p.variants.size() > 1) out += "[" + v.name + "]";
    for (std::size_t i = 0; i < w.map.size(); ++i) out += fmt::format(" {}={}", v.vertices[i].name, w.map[i]);
    if (!w.faces.empty()) {
        out += " faces=";
        for (std::size_t i = 0; i < w.faces.size(); ++i) out += fmt::format("{}{}", i ? "," : "", w.faces[i]);
    }
    return out;
}

} // namespace tc8
