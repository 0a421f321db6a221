#include "tc8/coloring.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <fmt/format.h>

namespace tc8 {

bool TotalColoring::complete() const {
    return std::all_of(color_.begin(), color_.end(), [](int c) { return c != 0; });
}

std::vector<std::pair<int, int>> conflict_pairs(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < g.element_count(); ++x)
        for (int y : g.conflicts(x))
            if (x < y) out.emplace_back(x, y);
    return out;
}

static void check_range(const Graph& g, const TotalColoring& phi) {
    if (phi.size() != g.element_count())
        throw Error(Errc::InvalidArgument, fmt::format("coloring has {} elements, graph has {}", phi.size(),
                                                       g.element_count()));
    for (int x = 0; x < phi.size(); ++x)
        if (phi[x] < 0 || phi[x] > phi.k())
            throw Error(Errc::ColorOutOfRange, fmt::format("{} has color {} outside 1..{}", g.element_name(x),
                                                           phi[x], phi.k()));
}

std::vector<Violation> verify_total_coloring(const Graph& g, const TotalColoring& phi, bool partial) {
    check_range(g, phi);
    std::vector<Violation> out;
    for (int x = 0; x < g.element_count(); ++x) {
        if (!phi.colored(x)) {
            if (!partial) out.push_back({Violation::Uncolored, x, -1, 0});
            continue;
        }
        for (int y : g.conflicts(x))
            if (x < y && phi[y] == phi[x]) out.push_back({Violation::Conflict, x, y, phi[x]});
    }
    return out;
}

namespace {

using Mask = std::uint64_t;

class Search {
public:
    Search(const Graph& g, int k, const SolveOptions& opt) : g_(g), k_(k), opt_(opt) {
        if (k < 1 || k > 63) throw Error(Errc::InvalidArgument, fmt::format("palette size {} outside 1..63", k));
        const int n = g.element_count();
        color_.assign(n, 0);
        dom_.assign(n, full());
        symmetry_ = opt.partial == nullptr && opt.rng == nullptr;
        if (opt.partial) {
            check_range(g, *opt.partial);
            for (int x = 0; x < n; ++x) {
                int c = (*opt.partial)[x];
                if (c == 0) continue;
                if (c > k)
                    throw Error(Errc::ColorOutOfRange,
                                fmt::format("{} precolored {} with palette {}", g.element_name(x), c, k));
                color_[x] = c;
                for (int y : g.conflicts(x)) dom_[y] &= ~bit(c);
            }
            for (int x = 0; x < n; ++x)
                if (color_[x] != 0)
                    for (int y : g.conflicts(x))
                        if (color_[y] == color_[x]) consistent_ = false;
        }
    }

    bool run(std::uint64_t* nodes, bool* limit_hit) {
        if (!consistent_) return false;
        for (int x = 0; x < g_.element_count(); ++x)
            if (color_[x] == 0 && dom_[x] == 0) return false;
        int max_used = 0;
        for (int c : color_) max_used = std::max(max_used, c);
        bool ok = rec(max_used);
        *nodes = nodes_;
        *limit_hit = limit_hit_;
        return ok;
    }

    const std::vector<int>& colors() const { return color_; }

private:
    Mask full() const { return (Mask{1} << k_) - 1; }
    static Mask bit(int c) { return Mask{1} << (c - 1); }

    int pick() const {
        int best = -1, best_size = 64;
        for (int x = 0; x < static_cast<int>(color_.size()); ++x) {
            if (color_[x] != 0) continue;
            int s = std::popcount(dom_[x]);
            if (s < best_size) best = x, best_size = s;
        }
        return best;
    }

    bool rec(int max_used) {
        if (opt_.node_limit && nodes_ >= opt_.node_limit) {
            limit_hit_ = true;
            return false;
        }
        ++nodes_;
        int x = pick();
        if (x < 0) return true;
        std::vector<int> order;
        for (int c = 1; c <= k_; ++c)
            if (dom_[x] & bit(c)) {
                if (symmetry_ && c > max_used + 1) break;
                order.push_back(c);
            }
        if (opt_.rng) opt_.rng->shuffle(order);
        for (int c : order) {
            std::size_t mark = trail_.size();
            bool dead = false;
            color_[x] = c;
            for (int y : g_.conflicts(x)) {
                if (color_[y] != 0 || !(dom_[y] & bit(c))) continue;
                dom_[y] &= ~bit(c);
                trail_.push_back(y);
                if (dom_[y] == 0) dead = true;
            }
            if (!dead && rec(std::max(max_used, c))) return true;
            while (trail_.size() > mark) {
                dom_[trail_.back()] |= bit(c);
                trail_.pop_back();
            }
            color_[x] = 0;
            if (limit_hit_) return false;
        }
        return false;
    }

    const Graph& g_;
    int k_;
    const SolveOptions& opt_;
    bool symmetry_ = true;
    bool consistent_ = true;
    bool limit_hit_ = false;
    std::uint64_t nodes_ = 0;
    std::vector<int> color_;
    std::vector<Mask> dom_;
    std::vector<int> trail_;
};

} // namespace

std::optional<TotalColoring> solve(const Graph& g, int k, const SolveOptions& opt, SolveStats* stats) {
    Search s(g, k, opt);
    std::uint64_t nodes = 0;
    bool hit = false;
    bool ok = s.run(&nodes, &hit);
    if (stats) *stats = {nodes, hit};
    if (!ok) return std::nullopt;
    TotalColoring phi(g.element_count(), k);
    for (int x = 0; x < g.element_count(); ++x) phi.set(x, s.colors()[x]);
    return phi;
}

int total_chromatic_number(const Graph& g) {
    if (g.element_count() > kChromaticElementLimit)
        throw Error(Errc::InstanceTooLarge,
                    fmt::format("{} elements exceeds the limit of {}", g.element_count(), kChromaticElementLimit));
    for (int k = g.max_degree() + 1;; ++k)
        if (solve(g, k)) return k;
}

std::uint64_t enumerate_colorings(const Graph& g, int k, const TotalColoring* partial, std::uint64_t limit,
                                  const std::function<bool(const TotalColoring&)>& visit) {
    const int n = g.element_count();
    TotalColoring phi(n, k);
    if (partial) {
        check_range(g, *partial);
        phi = *partial;
        phi.set_k(k);
        if (!verify_total_coloring(g, phi, true).empty()) return 0;
    }
    std::vector<int> free;
    for (int x = 0; x < n; ++x)
        if (!phi.colored(x)) free.push_back(x);
    std::uint64_t count = 0;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        if (i == free.size()) {
            ++count;
            if (!visit(phi) || count >= limit) stop = true;
            return;
        }
        int x = free[i];
        for (int c = 1; c <= k && !stop; ++c) {
            bool ok = true;
            for (int y : g.conflicts(x))
                if (phi[y] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            phi.set(x, c);
            rec(i + 1);
            phi.set(x, 0);
        }
    };
    if (limit > 0) rec(0);
    return count;
}

std::string format_coloring(const Graph& g, const TotalColoring& phi) {
    std::string out = fmt::format("{}\n", phi.k());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (phi.colored(v)) out += fmt::format("v {} {}\n", v, phi[v]);
    for (int i = 0; i < g.edge_count(); ++i) {
        int x = g.vertex_count() + i;
        if (phi.colored(x)) out += fmt::format("e {} {} {}\n", g.edges()[i].first, g.edges()[i].second, phi[x]);
    }
    return out;
}

TotalColoring parse_coloring(const Graph& g, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    TotalColoring phi;
    bool header = false;
    std::vector<char> seen(g.element_count(), 0);
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ls(line);
        if (!header) {
            int k;
            std::string rest;
            if (!(ls >> k) || (ls >> rest) || k < 1)
                throw Error(Errc::ParseError, "expected palette size", lineno);
            phi = TotalColoring(g.element_count(), k);
            header = true;
            continue;
        }
        std::string tag;
        ls >> tag;
        int x = -1, c = 0;
        if (tag == "v") {
            int v;
            if (!(ls >> v >> c)) throw Error(Errc::ParseError, "expected 'v <id> <color>'", lineno);
            if (v < 0 || v >= g.vertex_count()) throw Error(Errc::ParseError, fmt::format("unknown vertex {}", v), lineno);
            x = v;
        } else if (tag == "e") {
            int a, b;
            if (!(ls >> a >> b >> c)) throw Error(Errc::ParseError, "expected 'e <u> <v> <color>'", lineno);
            if (a >= b) throw Error(Errc::ParseError, "edge endpoints must satisfy u < v", lineno);
            x = g.edge_element(a, b);
            if (x < 0) throw Error(Errc::ParseError, fmt::format("unknown edge {}-{}", a, b), lineno);
        } else {
            throw Error(Errc::ParseError, fmt::format("unknown record '{}'", tag), lineno);
        }
        std::string rest;
        if (ls >> rest) throw Error(Errc::ParseError, "trailing tokens", lineno);
        if (seen[x]) throw Error(Errc::ParseError, fmt::format("{} colored twice", g.element_name(x)), lineno);
        if (c < 1 || c > phi.k())
            throw Error(Errc::ColorOutOfRange, fmt::format("color {} outside 1..{}", c, phi.k()), lineno);
        seen[x] = 1;
        phi.set(x, c);
    }
    if (!header) throw Error(Errc::ParseError, "missing palette size", lineno + 1);
    return phi;
}

} // namespace tc8
