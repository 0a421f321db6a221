#include "tc8/generator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tc8/patterns.hpp"
#include "tc8/rng.hpp"

namespace tc8 {

std::string GeneratorConfig::describe() const {
    return fmt::format("n={} cap={} fan4={} p={} seed={}", n, max_degree, forbid_four_fan ? "forbid" : "allow",
                       std::llround(deletion_probability * 1e6), seed);
}

namespace {

using Rotation = PlanarEmbedding::Rotation;

void insert_after(std::vector<int>& r, int after, int v) {
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, v);
}

void remove_edge(Rotation& rot, int a, int b) {
    std::erase(rot[a], b);
    std::erase(rot[b], a);
}

bool connected_without(const Rotation& rot, int a, int b) {
    std::vector<char> seen(rot.size(), 0);
    std::vector<int> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : rot[u]) {
            if ((u == a && w == b) || (u == b && w == a) || seen[w]) continue;
            if (w == b) return true;
            seen[w] = 1;
            stack.push_back(w);
        }
    }
    return false;
}

// Picks a random non-bridge edge from the candidates and deletes it.
void delete_one(Rotation& rot, std::vector<Edge> cands, Rng& rng, const char* what) {
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<Edge> ok;
    for (auto& e : cands)
        if (connected_without(rot, e.first, e.second)) ok.push_back(e);
    if (ok.empty()) throw Error(Errc::GenerationStalled, fmt::format("no deletable edge at {}", what));
    auto e = ok[rng.below(ok.size())];
    remove_edge(rot, e.first, e.second);
}

} // namespace

PlanarEmbedding generate_planar(const GeneratorConfig& cfg) {
    if (cfg.n < 3) throw Error(Errc::InvalidArgument, "generator needs n >= 3");
    if (cfg.max_degree < 2 || cfg.max_degree > 8) throw Error(Errc::InvalidArgument, "degree cap must be in 2..8");
    if (!(cfg.deletion_probability >= 0.0 && cfg.deletion_probability <= 1.0))
        throw Error(Errc::InvalidArgument, "deletion probability must be in [0,1]");
    Rng rng(cfg.seed);
    Rotation rot{{1, 2}, {2, 0}, {0, 1}};
    for (int v = 3; v < cfg.n; ++v) {
        auto g = PlanarEmbedding::build(rot);
        auto& f = g.faces()[rng.below(g.face_count())];
        int a = f.darts[0].from, b = f.darts[1].from, c = f.darts[2].from;
        // Face a->b->c: c follows a at b, a follows b at c, b follows c at a.
        insert_after(rot[b], a, v);
        insert_after(rot[c], b, v);
        insert_after(rot[a], c, v);
        rot.push_back({a, c, b});
    }

    const auto threshold = static_cast<std::uint64_t>(std::llround(cfg.deletion_probability * 1e6));
    if (threshold > 0) {
        auto edges = PlanarEmbedding::build(rot).graph().edges();
        for (auto& e : edges)
            if (rng.below(1000000) < threshold && connected_without(rot, e.first, e.second))
                remove_edge(rot, e.first, e.second);
    }

    const long budget = cfg.repair_limit > 0 ? cfg.repair_limit : 20L * (3L * cfg.n) + 100;
    for (long step = 0;; ++step) {
        if (step > budget) throw Error(Errc::GenerationStalled, fmt::format("repair budget {} exhausted", budget));
        int worst = -1;
        for (int v = 0; v < cfg.n; ++v)
            if (static_cast<int>(rot[v].size()) > cfg.max_degree &&
                (worst < 0 || rot[v].size() > rot[worst].size()))
                worst = v;
        if (worst >= 0) {
            std::vector<Edge> cands;
            for (int w : rot[worst]) cands.push_back(make_edge(worst, w));
            delete_one(rot, cands, rng, fmt::format("vertex {}", worst).c_str());
            continue;
        }
        if (!cfg.forbid_four_fan) break;
        auto g = PlanarEmbedding::build(rot);
        auto w = contains_four_fan(g);
        if (!w) return g;
        auto& p = four_fan_pattern().variants[w->variant];
        std::vector<Edge> cands;
        for (auto& e : p.edges) cands.push_back(make_edge(w->map[e.first], w->map[e.second]));
        delete_one(rot, cands, rng, "4-fan");
    }
    return PlanarEmbedding::build(rot);
}

} // namespace tc8
