#include "tc8/graph.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace tc8 {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case Errc::LoopOrMultiEdge: return "LoopOrMultiEdge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::ParseError: return "ParseError";
    case Errc::ColorOutOfRange: return "ColorOutOfRange";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::ElementAlreadyColored: return "ElementAlreadyColored";
    case Errc::InapplicableMove: return "InapplicableMove";
    case Errc::NoAvailableColor: return "NoAvailableColor";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ReducedGraphNotColorable: return "ReducedGraphNotColorable";
    case Errc::ScriptCaseMiss: return "ScriptCaseMiss";
    case Errc::LogMismatch: return "LogMismatch";
    case Errc::DeltaExceeded: return "DeltaExceeded";
    case Errc::GenerationStalled: return "GenerationStalled";
    case Errc::UnknownPattern: return "UnknownPattern";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& msg, int line)
    : std::runtime_error(line > 0 ? fmt::format("{} (line {}): {}", errc_name(code), line, msg)
                                  : fmt::format("{}: {}", errc_name(code), msg)),
      code_(code), line_(line) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n) {
    for (auto& e : edges_) {
        if (e.first == e.second) throw Error(Errc::LoopOrMultiEdge, fmt::format("loop at {}", e.first));
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw Error(Errc::UnknownVertex, fmt::format("edge {}-{}", e.first, e.second));
        e = make_edge(e.first, e.second);
    }
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
        if (i > 0 && edges_[i] == edges_[i - 1])
            throw Error(Errc::LoopOrMultiEdge, fmt::format("parallel edge {}-{}", edges_[i].first, edges_[i].second));
        index_[edges_[i]] = static_cast<int>(i);
        adj_[edges_[i].first].push_back(edges_[i].second);
        adj_[edges_[i].second].push_back(edges_[i].first);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    // Incident edges per vertex, as element ids.
    std::vector<std::vector<int>> inc(n);
    for (size_t i = 0; i < edges_.size(); ++i) {
        inc[edges_[i].first].push_back(n + static_cast<int>(i));
        inc[edges_[i].second].push_back(n + static_cast<int>(i));
    }
    conflicts_.assign(element_count(), {});
    for (int v = 0; v < n; ++v) {
        auto& c = conflicts_[v];
        c = adj_[v];
        c.insert(c.end(), inc[v].begin(), inc[v].end());
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        int x = n + static_cast<int>(i);
        auto [a, b] = edges_[i];
        auto& c = conflicts_[x];
        c = {a, b};
        for (int y : inc[a]) if (y != x) c.push_back(y);
        for (int y : inc[b]) if (y != x) c.push_back(y);
    }
    for (auto& c : conflicts_) std::sort(c.begin(), c.end());
}

int Graph::max_degree() const {
    int d = 0;
    for (auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

int Graph::min_degree() const {
    if (n_ == 0) return 0;
    int d = n_;
    for (auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
    return d;
}

int Graph::edge_index(int a, int b) const {
    auto it = index_.find(make_edge(a, b));
    return it == index_.end() ? -1 : it->second;
}

int Graph::edge_element(int a, int b) const {
    int i = edge_index(a, b);
    return i < 0 ? -1 : n_ + i;
}

std::string Graph::element_name(int x) const {
    if (x < n_) return fmt::format("v{}", x);
    auto [a, b] = element_edge(x);
    return fmt::format("e{}-{}", a, b);
}

std::vector<int> FaceWalk::vertices() const {
    std::vector<int> vs;
    vs.reserve(darts.size());
    for (auto& d : darts) vs.push_back(d.from);
    return vs;
}

bool FaceWalk::repeats_vertex() const {
    auto vs = vertices();
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) != vs.end();
}

PlanarEmbedding PlanarEmbedding::build(const Rotation& rotation) {
    const int n = static_cast<int>(rotation.size());
    if (n == 0) throw Error(Errc::Disconnected, "empty graph");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v : rotation[u]) {
            if (v < 0 || v >= n) throw Error(Errc::UnknownVertex, fmt::format("{} lists {}", u, v));
            if (v == u) throw Error(Errc::LoopOrMultiEdge, fmt::format("loop at {}", u));
        }
        auto sorted = rotation[u];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(Errc::LoopOrMultiEdge, fmt::format("{} lists a neighbour twice", u));
        for (int v : rotation[u]) {
            auto& rv = rotation[v];
            if (std::find(rv.begin(), rv.end(), u) == rv.end())
                throw Error(Errc::AsymmetricAdjacency, fmt::format("{} lists {} but not conversely", u, v));
            if (u < v) edges.emplace_back(u, v);
        }
    }

    PlanarEmbedding g;
    g.graph_ = Graph(n, std::move(edges));
    g.rot_ = rotation;

    std::vector<int> seen(n, 0), stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : rotation[u])
            if (!seen[v]) seen[v] = 1, stack.push_back(v);
    }
    if (std::count(seen.begin(), seen.end(), 1) != n) throw Error(Errc::Disconnected, "graph is not connected");

    g.dart_face_.assign(n, {});
    for (int u = 0; u < n; ++u) g.dart_face_[u].assign(rotation[u].size(), -1);
    for (int u = 0; u < n; ++u) {
        for (int i = 0; i < g.degree(u); ++i) {
            if (g.dart_face_[u][i] >= 0) continue;
            FaceWalk f;
            int id = static_cast<int>(g.faces_.size());
            int a = u, ai = i;
            while (g.dart_face_[a][ai] < 0) {
                g.dart_face_[a][ai] = id;
                int b = rotation[a][ai];
                f.darts.push_back({a, b});
                int j = g.position(b, a);
                ai = (j + 1) % g.degree(b);
                a = b;
            }
            g.faces_.push_back(std::move(f));
        }
    }
    // A single vertex has one face with an empty boundary.
    if (g.edge_count() == 0) g.faces_.push_back(FaceWalk{});

    if (g.vertex_count() - g.edge_count() + g.face_count() != 2)
        throw Error(Errc::NonPlanarEmbedding,
                    fmt::format("V-E+F = {}-{}+{} != 2", g.vertex_count(), g.edge_count(), g.face_count()));
    return g;
}

int PlanarEmbedding::position(int v, int w) const {
    auto& r = rot_[v];
    auto it = std::find(r.begin(), r.end(), w);
    return it == r.end() ? -1 : static_cast<int>(it - r.begin());
}

int PlanarEmbedding::face_of_dart(int u, int v) const {
    int i = position(u, v);
    if (i < 0) throw Error(Errc::InvalidArgument, fmt::format("no dart {}->{}", u, v));
    return dart_face_[u][i];
}

int PlanarEmbedding::face_of_angle(int v, int i) const {
    return dart_face_[v][(i + 1) % degree(v)];
}

DegreeStats PlanarEmbedding::degree_stats(int v) const {
    if (v < 0 || v >= vertex_count()) throw Error(Errc::UnknownVertex, fmt::format("vertex {}", v));
    DegreeStats s;
    s.degree = degree(v);
    for (int i = 0; i < s.degree; ++i) {
        s.m[faces_[face_of_angle(v, i)].length()]++;
        s.n[degree(rot_[v][i])]++;
    }
    return s;
}

std::vector<FaceWalk> trace_faces(const PlanarEmbedding& g) { return g.faces(); }

DegreeStats degree_stats(const PlanarEmbedding& g, int v) { return g.degree_stats(v); }

} // namespace tc8
