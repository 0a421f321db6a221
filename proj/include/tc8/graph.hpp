#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tc8/error.hpp"

namespace tc8 {

using Edge = std::pair<int, int>; // always (min, max)

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph with dense 0-based vertex ids and edges sorted
// lexicographically. Element ids: vertices 0..n-1, then edges n..n+m-1.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int element_count() const { return n_ + edge_count(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    int min_degree() const;
    bool adjacent(int a, int b) const { return edge_index(a, b) >= 0; }
    // Index into edges(), or -1.
    int edge_index(int a, int b) const;
    int edge_element(int a, int b) const;
    bool is_vertex_element(int x) const { return x < n_; }
    const Edge& element_edge(int x) const { return edges_[x - n_]; }
    std::string element_name(int x) const;
    // Elements that must receive a color different from x.
    const std::vector<int>& conflicts(int x) const { return conflicts_[x]; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::map<Edge, int> index_;
    std::vector<std::vector<int>> conflicts_;
};

struct Dart {
    int from;
    int to;
    bool operator==(const Dart&) const = default;
};

struct FaceWalk {
    std::vector<Dart> darts;
    int length() const { return static_cast<int>(darts.size()); }
    // Tail vertex of every dart, in walk order.
    std::vector<int> vertices() const;
    bool repeats_vertex() const;
};

struct DegreeStats {
    int degree = 0;
    std::map<int, int> m; // face length -> incidences
    std::map<int, int> n; // neighbour degree -> count
};

// Connected simple graph with a clockwise rotation at every vertex.
// Faces are traced with the rule: after dart (u,v) comes (v,w) where w is
// the neighbour that follows u in the rotation at v.
class PlanarEmbedding {
public:
    using Rotation = std::vector<std::vector<int>>;

    static PlanarEmbedding build(const Rotation& rotation);

    int vertex_count() const { return graph_.vertex_count(); }
    int edge_count() const { return graph_.edge_count(); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    const Graph& graph() const { return graph_; }
    const Rotation& rotation() const { return rot_; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    const std::vector<FaceWalk>& faces() const { return faces_; }
    // Face containing dart (u, rot[u][i]).
    int face_at(int u, int i) const { return dart_face_[u][i]; }
    // Face containing dart (u, v).
    int face_of_dart(int u, int v) const;
    // Face filling the angle at v between rot[v][i] and rot[v][i+1].
    int face_of_angle(int v, int i) const;
    int position(int v, int w) const; // index of w in rot[v], or -1
    DegreeStats degree_stats(int v) const;

private:
    Graph graph_;
    Rotation rot_;
    std::vector<FaceWalk> faces_;
    std::vector<std::vector<int>> dart_face_;
};

std::vector<FaceWalk> trace_faces(const PlanarEmbedding& g);
DegreeStats degree_stats(const PlanarEmbedding& g, int v);

} // namespace tc8
