#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tc8/coloring.hpp"
#include "tc8/graph.hpp"
#include "tc8/patterns.hpp"
#include "tc8/rng.hpp"

namespace tc8 {

struct Move {
    enum Kind { Assign, Uncolor, Swap, Alternate } kind = Assign;
    std::vector<int> elements; // Assign: {x}; Swap: {a, b}; Uncolor: set; Alternate: chain
    int color = 0;             // Assign only
    bool operator==(const Move&) const = default;
};

Move assign_move(int x, int color);
Move uncolor_move(std::vector<int> xs);
Move swap_move(int a, int b);
Move alternate_move(std::vector<int> chain);

// Move log lines: "assign <el> <c>", "uncolor <el>...", "swap <el> <el>",
// "alternate <el>...", with elements written as "v3" or "e1-4".
std::string format_move(const Graph& g, const Move& m);
Move parse_move(const Graph& g, const std::string& line);
std::string format_move_log(const Graph& g, const std::vector<Move>& moves);
std::vector<Move> parse_move_log(const Graph& g, const std::string& text);

// 1..k minus the colors of x's conflict partners. ElementAlreadyColored.
std::vector<int> available_colors(const Graph& g, const TotalColoring& phi, int x);

struct MoveResult {
    TotalColoring coloring;
    std::vector<Violation> conflicts; // new clashes involving touched elements
};

// InapplicableMove when a swap touches an uncolored element, when a chain
// does not alternate between exactly two colors, or when an element or
// color is out of range.
MoveResult apply_move(const Graph& g, const TotalColoring& phi, const Move& m);

// Colors every uncolored vertex (all must have degree <= 4) with its
// smallest available color, ascending by id. PreconditionViolated when an
// uncolored element is an edge or a 5+-vertex; NoAvailableColor otherwise.
TotalColoring greedy_finish_small(const Graph& g, TotalColoring phi, int k = 9, std::vector<Move>* log = nullptr);

// Reduced instance a script starts from. Vertex ids are those of G; deleted
// vertices stay as isolated vertices of `reduced`.
struct ReductionPlan {
    std::string lemma;
    std::string scenario;           // pattern variant or surgery case
    std::string surgery;            // human-readable
    int center = -1;
    Graph reduced;
    std::vector<int> uncolored;     // vertices uncolored after the reduced coloring is transferred
    int target = -1;                // element of G left for the script, or -1
    std::vector<std::pair<int, int>> anchors; // (element of G, canonical label)
    std::vector<int> pool;          // elements of G labelled from pool_labels ascending by color
    std::vector<int> pool_labels;
};

struct ExtendOptions {
    bool strict = false;                    // skip branches added beyond the written proof
    const TotalColoring* reduced = nullptr; // coloring of plan.reduced; solved when null
    std::uint64_t seed = 0;                 // randomizes the reduced solve when nonzero
};

struct ExtensionResult {
    ReductionPlan plan;
    TotalColoring coloring; // of G
    std::vector<Move> moves;
    std::string branch;
};

std::vector<std::string> scripted_lemmas();
bool has_script(const std::string& lemma);

// PreconditionViolated when the witness does not fit the script.
ReductionPlan plan_reduction(const PlanarEmbedding& g, const std::string& lemma, const MatchWitness& w);

// ReducedGraphNotColorable, ScriptCaseMiss; the returned coloring always
// passes verify_total_coloring with k = 9.
ExtensionResult reduce_and_extend(const PlanarEmbedding& g, const std::string& lemma, const MatchWitness& w,
                                  const ExtendOptions& opt = {});

// Branch labels of a script in evaluation order (without the leading
// "available" branch); repair branches are prefixed "repair".
std::vector<std::string> script_branches(const std::string& lemma, const std::string& scenario);

// A proper 9-coloring of plan.reduced drawn by a seeded randomized solve.
// With canonical_environment the anchors are pinned to a random relabelling
// of the canonical colors first; nullopt when that pinning is infeasible.
std::optional<TotalColoring> sample_reduced_coloring(const Graph& g, const ReductionPlan& plan, Rng& rng,
                                                    bool canonical_environment);

// The reduced coloring carried over to G with plan.uncolored and the
// target uncolored, before any script move.
TotalColoring transfer_to_host(const Graph& g, const ReductionPlan& plan, const TotalColoring& reduced);

// True when the target has no available color in the transferred coloring,
// i.e. the script has to recolor.
bool needs_recoloring(const Graph& g, const ReductionPlan& plan, const TotalColoring& reduced);

// Runs only the case table on a partial coloring holding the colors near
// the configuration (the center, its edges and the edges at the uncolored
// vertices). Returns the branch label, or nullopt on a case miss.
std::optional<std::string> run_case_table(const PlanarEmbedding& g, const ReductionPlan& plan, const MatchWitness& w,
                                          const TotalColoring& local, bool strict);

struct CaseTableReport {
    std::uint64_t environments = 0; // environments with the target blocked
    std::uint64_t misses = 0;
    std::vector<std::pair<std::string, std::uint64_t>> branch_counts;
    std::vector<TotalColoring> first_misses; // up to 5
};

// Exhaustive over every locally proper assignment of colors to the
// environment elements, with the center and its edges pinned to the figure
// labels; environments where the target has a free color are skipped.
// Empty for surgery cases and scripts without a case table.
CaseTableReport check_case_table(const PlanarEmbedding& g, const std::string& lemma, const MatchWitness& w,
                                 bool strict);

// Iterative deepening over recoloring moves: the smallest uncolored element
// receives each available color in turn; when it has none, up to
// `move_budget` swaps of two conflicting elements or Kempe-component
// alternations (assigns before swaps before alternates, elements ascending)
// may be spent. Returns nullopt when nothing is found within the budget.
std::optional<TotalColoring> search_extension(const Graph& g, const TotalColoring& partial, int k, int move_budget);

} // namespace tc8
