#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tc8/graph.hpp"
#include "tc8/rng.hpp"

namespace tc8 {

// Partial map from element id to a color in 1..k; 0 means uncolored.
class TotalColoring {
public:
    TotalColoring() = default;
    TotalColoring(int elements, int k) : k_(k), color_(elements, 0) {}

    int k() const { return k_; }
    void set_k(int k) { k_ = k; }
    int size() const { return static_cast<int>(color_.size()); }
    int operator[](int x) const { return color_[x]; }
    int get(int x) const { return color_[x]; }
    void set(int x, int c) { color_[x] = c; }
    void uncolor(int x) { color_[x] = 0; }
    bool colored(int x) const { return color_[x] != 0; }
    bool complete() const;
    const std::vector<int>& raw() const { return color_; }
    bool operator==(const TotalColoring&) const = default;

private:
    int k_ = 0;
    std::vector<int> color_;
};

struct Violation {
    enum Kind { Conflict, Uncolored } kind = Conflict;
    int a = -1;
    int b = -1;
    int color = 0;
};

std::vector<std::pair<int, int>> conflict_pairs(const Graph& g);

// With partial=false every element must be colored; uncolored ones are
// reported. Colors outside 0..k raise ColorOutOfRange.
std::vector<Violation> verify_total_coloring(const Graph& g, const TotalColoring& phi, bool partial = false);

struct SolveOptions {
    const TotalColoring* partial = nullptr; // precolored elements are kept
    Rng* rng = nullptr;                     // randomizes color order; disables symmetry breaking
    std::uint64_t node_limit = 0;           // 0 = unlimited
};

struct SolveStats {
    std::uint64_t nodes = 0;
    bool limit_hit = false;
};

// Backtracking with forward checking. The next element is the uncolored one
// with the fewest remaining colors, ties to the smallest element id; colors
// are tried ascending. Without a partial coloring, an element may only take
// a color at most one above the largest color used so far.
std::optional<TotalColoring> solve(const Graph& g, int k, const SolveOptions& opt = {}, SolveStats* stats = nullptr);

inline constexpr int kChromaticElementLimit = 60;

// Least k >= Delta+1 with a total k-coloring. InstanceTooLarge when
// |V|+|E| exceeds kChromaticElementLimit.
int total_chromatic_number(const Graph& g);

// Visits every proper completion of `partial` (all elements uncolored when
// null) in lexicographic element order; stops after `limit` colorings or when
// the visitor returns false. Returns the number visited.
std::uint64_t enumerate_colorings(const Graph& g, int k, const TotalColoring* partial, std::uint64_t limit,
                                  const std::function<bool(const TotalColoring&)>& visit);

std::string format_coloring(const Graph& g, const TotalColoring& phi);
TotalColoring parse_coloring(const Graph& g, const std::string& text);

} // namespace tc8
