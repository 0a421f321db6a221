#include "tc8/extension.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

namespace tc8 {

Move assign_move(int x, int color) { return {Move::Assign, {x}, color}; }
Move uncolor_move(std::vector<int> xs) { return {Move::Uncolor, std::move(xs), 0}; }
Move swap_move(int a, int b) { return {Move::Swap, {a, b}, 0}; }
Move alternate_move(std::vector<int> chain) { return {Move::Alternate, std::move(chain), 0}; }

std::string format_move(const Graph& g, const Move& m) {
    static const char* names[] = {"assign", "uncolor", "swap", "alternate"};
    std::string out = names[m.kind];
    for (int x : m.elements) out += " " + g.element_name(x);
    if (m.kind == Move::Assign) out += fmt::format(" {}", m.color);
    return out;
}

static int parse_element(const Graph& g, const std::string& tok) {
    auto bad = [&] { return Error(Errc::ParseError, fmt::format("bad element '{}'", tok)); };
    if (tok.size() < 2) throw bad();
    try {
        if (tok[0] == 'v') {
            std::size_t used = 0;
            int v = std::stoi(tok.substr(1), &used);
            if (used + 1 != tok.size() || v < 0 || v >= g.vertex_count()) throw bad();
            return v;
        }
        if (tok[0] == 'e') {
            auto dash = tok.find('-');
            if (dash == std::string::npos) throw bad();
            int a = std::stoi(tok.substr(1, dash - 1)), b = std::stoi(tok.substr(dash + 1));
            if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count()) throw bad();
            int x = g.edge_element(a, b);
            if (x < 0) throw bad();
            return x;
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    throw bad();
}

Move parse_move(const Graph& g, const std::string& line) {
    std::istringstream in(line);
    std::string kind, tok;
    in >> kind;
    std::vector<std::string> toks;
    while (in >> tok) toks.push_back(tok);
    Move m;
    if (kind == "assign") {
        if (toks.size() != 2) throw Error(Errc::ParseError, "assign <element> <color>");
        m.kind = Move::Assign;
        m.elements = {parse_element(g, toks[0])};
        try {
            m.color = std::stoi(toks[1]);
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, fmt::format("bad color '{}'", toks[1]));
        }
        return m;
    }
    if (kind == "uncolor") m.kind = Move::Uncolor;
    else if (kind == "swap") m.kind = Move::Swap;
    else if (kind == "alternate") m.kind = Move::Alternate;
    else throw Error(Errc::ParseError, fmt::format("unknown move '{}'", kind));
    for (auto& t : toks) m.elements.push_back(parse_element(g, t));
    if (m.kind == Move::Swap && m.elements.size() != 2) throw Error(Errc::ParseError, "swap takes two elements");
    return m;
}

std::string format_move_log(const Graph& g, const std::vector<Move>& moves) {
    std::string out;
    for (auto& m : moves) out += format_move(g, m) + "\n";
    return out;
}

std::vector<Move> parse_move_log(const Graph& g, const std::string& text) {
    std::vector<Move> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        try {
            out.push_back(parse_move(g, line));
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), lineno);
        }
    }
    return out;
}

std::vector<int> available_colors(const Graph& g, const TotalColoring& phi, int x) {
    if (x < 0 || x >= g.element_count()) throw Error(Errc::InvalidArgument, fmt::format("no element {}", x));
    if (phi.colored(x)) throw Error(Errc::ElementAlreadyColored, g.element_name(x));
    std::vector<bool> used(phi.k() + 1, false);
    for (int y : g.conflicts(x))
        if (phi[y] > 0 && phi[y] <= phi.k()) used[phi[y]] = true;
    std::vector<int> out;
    for (int c = 1; c <= phi.k(); ++c)
        if (!used[c]) out.push_back(c);
    return out;
}

static std::vector<Violation> clashes(const Graph& g, const TotalColoring& phi, const std::vector<int>& touched) {
    std::set<std::pair<int, int>> seen;
    std::vector<Violation> out;
    for (int x : touched) {
        if (!phi.colored(x)) continue;
        for (int y : g.conflicts(x))
            if (phi[y] == phi[x] && seen.insert(std::minmax(x, y)).second)
                out.push_back({Violation::Conflict, std::min(x, y), std::max(x, y), phi[x]});
    }
    return out;
}

MoveResult apply_move(const Graph& g, const TotalColoring& phi, const Move& m) {
    auto inapplicable = [&](const std::string& why) {
        return Error(Errc::InapplicableMove, fmt::format("{}: {}", format_move(g, m), why));
    };
    for (int x : m.elements)
        if (x < 0 || x >= g.element_count()) throw Error(Errc::InapplicableMove, fmt::format("no element {}", x));
    MoveResult r{phi, {}};
    switch (m.kind) {
    case Move::Assign:
        if (m.elements.size() != 1) throw inapplicable("assign takes one element");
        if (m.color < 1 || m.color > phi.k()) throw inapplicable("color out of range");
        r.coloring.set(m.elements[0], m.color);
        break;
    case Move::Uncolor:
        for (int x : m.elements) r.coloring.uncolor(x);
        return r;
    case Move::Swap: {
        if (m.elements.size() != 2 || m.elements[0] == m.elements[1]) throw inapplicable("swap takes two elements");
        int a = m.elements[0], b = m.elements[1];
        if (!phi.colored(a) || !phi.colored(b)) throw inapplicable("both elements must be colored");
        r.coloring.set(a, phi[b]);
        r.coloring.set(b, phi[a]);
        break;
    }
    case Move::Alternate: {
        const auto& ch = m.elements;
        if (ch.size() < 2) throw inapplicable("chain needs two elements");
        int c0 = phi[ch[0]], c1 = phi[ch[1]];
        if (c0 == 0 || c1 == 0 || c0 == c1) throw inapplicable("chain does not alternate two colors");
        for (std::size_t i = 0; i < ch.size(); ++i)
            if (phi[ch[i]] != (i % 2 ? c1 : c0)) throw inapplicable("chain does not alternate two colors");
        for (int x : ch) r.coloring.set(x, phi[x] == c0 ? c1 : c0);
        break;
    }
    }
    r.conflicts = clashes(g, r.coloring, m.elements);
    return r;
}

TotalColoring greedy_finish_small(const Graph& g, TotalColoring phi, int k, std::vector<Move>* log) {
    if (phi.k() != k) phi.set_k(k);
    for (int x = 0; x < g.element_count(); ++x) {
        if (phi.colored(x)) continue;
        if (!g.is_vertex_element(x) || g.degree(x) > 4)
            throw Error(Errc::PreconditionViolated, fmt::format("{} is uncolored and not a 4- vertex", g.element_name(x)));
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (phi.colored(v)) continue;
        auto av = available_colors(g, phi, v);
        if (av.empty()) throw Error(Errc::NoAvailableColor, g.element_name(v));
        phi.set(v, av.front());
        if (log) log->push_back(assign_move(v, av.front()));
    }
    return phi;
}

namespace {

struct StateHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int c : v) h = (h ^ static_cast<std::size_t>(c)) * 1099511628211ull;
        return h;
    }
};

class ExtensionSearch {
public:
    ExtensionSearch(const Graph& g, int k) : g_(g), k_(k) {}

    bool run(std::vector<int>& col, int budget) {
        seen_.clear();
        return rec(col, budget);
    }

private:
    bool rec(std::vector<int>& col, int budget) {
        int x = -1;
        for (int i = 0; i < static_cast<int>(col.size()); ++i)
            if (col[i] == 0) {
                x = i;
                break;
            }
        if (x < 0) return true;
        std::vector<bool> used(k_ + 1, false);
        for (int y : g_.conflicts(x)) used[col[y]] = true;
        for (int c = 1; c <= k_; ++c) {
            if (used[c]) continue;
            col[x] = c;
            if (rec(col, budget)) return true;
            col[x] = 0;
        }
        if (budget == 0) return false;
        auto key = col;
        key.push_back(budget);
        if (!seen_.insert(key).second) return false;

        // Swaps of two colored, mutually conflicting elements, one of them
        // conflicting with x; kept only when the result stays proper.
        for (int a : g_.conflicts(x)) {
            if (col[a] == 0) continue;
            for (int b : g_.conflicts(a)) {
                if (b == x || col[b] == 0 || (b < a && is_partner(b, x))) continue;
                std::swap(col[a], col[b]);
                if (proper_at(col, a) && proper_at(col, b) && rec(col, budget - 1)) return true;
                std::swap(col[a], col[b]);
            }
        }
        // Kempe components through a colored partner of x.
        std::set<std::vector<int>> tried;
        for (int a : g_.conflicts(x)) {
            if (col[a] == 0) continue;
            for (int c = 1; c <= k_; ++c) {
                if (c == col[a]) continue;
                auto comp = component(col, a, col[a], c);
                if (!tried.insert(comp).second) continue;
                int ca = col[a];
                for (int y : comp) col[y] = col[y] == ca ? c : ca;
                if (rec(col, budget - 1)) return true;
                for (int y : comp) col[y] = col[y] == ca ? c : ca;
            }
        }
        return false;
    }

    bool is_partner(int a, int x) const {
        const auto& c = g_.conflicts(x);
        return std::binary_search(c.begin(), c.end(), a);
    }

    bool proper_at(const std::vector<int>& col, int a) const {
        for (int y : g_.conflicts(a))
            if (col[y] == col[a]) return false;
        return true;
    }

    std::vector<int> component(const std::vector<int>& col, int start, int c1, int c2) const {
        std::vector<int> out{start}, stack{start};
        std::vector<bool> in(col.size(), false);
        in[start] = true;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int z : g_.conflicts(y))
                if (!in[z] && (col[z] == c1 || col[z] == c2)) {
                    in[z] = true;
                    out.push_back(z);
                    stack.push_back(z);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const Graph& g_;
    int k_;
    std::unordered_set<std::vector<int>, StateHash> seen_;
};

} // namespace

std::optional<TotalColoring> search_extension(const Graph& g, const TotalColoring& partial, int k, int move_budget) {
    if (k < 1) throw Error(Errc::InvalidArgument, "palette size must be positive");
    if (partial.size() != g.element_count()) throw Error(Errc::InvalidArgument, "coloring size mismatch");
    for (int x = 0; x < partial.size(); ++x)
        if (partial[x] < 0 || partial[x] > k)
            throw Error(Errc::ColorOutOfRange, fmt::format("{} has color {}", g.element_name(x), partial[x]));
    if (!verify_total_coloring(g, partial, true).empty()) return std::nullopt;
    ExtensionSearch s(g, k);
    for (int b = 0; b <= move_budget; ++b) {
        auto col = partial.raw();
        if (s.run(col, b)) {
            TotalColoring out(g.element_count(), k);
            for (int x = 0; x < g.element_count(); ++x) out.set(x, col[x]);
            return out;
        }
    }
    return std::nullopt;
}

} // namespace tc8
