#include "tc8/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace tc8 {

PlanarEmbedding parse_embedding(const std::string& text) {
    std::istringstream in(normalize_newlines(text));
    std::string line;
    int lineno = 0;
    int V = -1, E = -1;
    PlanarEmbedding::Rotation rot;
    std::vector<int> defined_at;
    int defined = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (V < 0) {
            std::string rest;
            if (!(ls >> V >> E) || (ls >> rest) || V < 1 || E < 0)
                throw Error(Errc::ParseError, "expected header 'V E'", lineno);
            rot.assign(V, {});
            defined_at.assign(V, 0);
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw Error(Errc::ParseError, "expected '<id>: neighbours'", lineno);
        int id;
        std::istringstream idin(line.substr(0, colon));
        std::string rest;
        if (!(idin >> id) || (idin >> rest)) throw Error(Errc::ParseError, "bad vertex id", lineno);
        if (id < 0 || id >= V) throw Error(Errc::ParseError, fmt::format("vertex id {} outside 0..{}", id, V - 1), lineno);
        if (defined_at[id])
            throw Error(Errc::ParseError, fmt::format("duplicate vertex id {} (first on line {})", id, defined_at[id]),
                        lineno);
        defined_at[id] = lineno;
        ++defined;
        std::istringstream ns(line.substr(colon + 1));
        std::string tok;
        while (ns >> tok) {
            std::size_t used = 0;
            int w;
            try {
                w = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw Error(Errc::ParseError, fmt::format("bad neighbour '{}'", tok), lineno);
            if (w < 0 || w >= V) throw Error(Errc::ParseError, fmt::format("neighbour {} outside 0..{}", w, V - 1), lineno);
            if (w == id) throw Error(Errc::LoopOrMultiEdge, fmt::format("loop at {}", id), lineno);
            for (int x : rot[id])
                if (x == w) throw Error(Errc::LoopOrMultiEdge, fmt::format("{} lists {} twice", id, w), lineno);
            rot[id].push_back(w);
        }
    }
    if (V < 0) throw Error(Errc::ParseError, "empty input", 1);
    if (defined != V) throw Error(Errc::ParseError, fmt::format("header declares {} vertices, found {}", V, defined), lineno);
    long darts = 0;
    for (int u = 0; u < V; ++u) {
        darts += static_cast<long>(rot[u].size());
        for (int w : rot[u]) {
            bool back = false;
            for (int x : rot[w]) back |= (x == u);
            if (!back)
                throw Error(Errc::AsymmetricAdjacency, fmt::format("{} lists {} but not conversely", u, w),
                            defined_at[u]);
        }
    }
    if (darts != 2L * E)
        throw Error(Errc::ParseError, fmt::format("header declares {} edges, rotations give {}", E, darts / 2), 1);
    return PlanarEmbedding::build(rot);
}

std::string serialize_embedding(const PlanarEmbedding& g) {
    std::string out = fmt::format("{} {}\n", g.vertex_count(), g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        out += fmt::format("{}:", v);
        for (int w : g.rotation(v)) out += fmt::format(" {}", w);
        out += "\n";
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, fmt::format("cannot open {}", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidArgument, fmt::format("cannot write {}", path));
    out << text;
}

std::string normalize_newlines(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out += '\n';
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out += text[i];
        }
    }
    return out;
}

} // namespace tc8
