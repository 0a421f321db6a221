#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tc8/graph.hpp"

namespace tc8 {

struct DegreeConstraint {
    enum Kind { Exact, Min, Max } kind = Min;
    int k = 0;
    bool admits(int d) const { return kind == Exact ? d == k : kind == Min ? d >= k : d <= k; }
};

struct PatternVertex {
    std::string name;
    DegreeConstraint degree;
};

// A vertex cycle that must be the boundary walk of one host face.
struct FaceCycle {
    std::vector<int> cycle;
};

// Edge a-b lies on some host face whose length is in [min_len, max_len].
struct EdgeFace {
    int a = 0, b = 0;
    int min_len = 1, max_len = 1 << 30;
};

struct DegreeSum {
    int a = 0, b = 0;
    int max = 0;
};

struct PatternVariant {
    std::string name = "main";
    std::vector<PatternVertex> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<FaceCycle> faces;
    std::vector<EdgeFace> edge_faces;
    std::vector<DegreeSum> sums;
    int index_of(const std::string& name) const; // -1 when absent
};

struct ConfigurationPattern {
    std::string id;
    std::string description;
    std::vector<PatternVariant> variants;
};

struct MatchWitness {
    std::string pattern;
    int variant = 0;
    std::vector<int> map;   // pattern vertex -> host vertex
    std::vector<int> faces; // FaceCycle -> host face id
    bool operator==(const MatchWitness&) const = default;
};

// Text schema, one directive per line ('#' starts a comment):
//   pattern <id>
//   describe <free text>
//   variant <name>                 (optional; starts a new alternative)
//   vertex <name> exact:k|min:k|max:k
//   edge <a> <b>
//   face <a> <b> <c> ...           (exact boundary of one face)
//   edgeface <a> <b> min:k|max:k   (may repeat the bound token)
//   sum <a> <b> max:k              (d(a) + d(b) <= k)
ConfigurationPattern parse_pattern(const std::string& text);
std::string format_pattern(const ConfigurationPattern& p);

// Embedded copy of the catalog under data/patterns, in catalog order.
const std::vector<ConfigurationPattern>& pattern_catalog();
const ConfigurationPattern& catalog_pattern(const std::string& id); // UnknownPattern
const ConfigurationPattern& four_fan_pattern();

// True when the witness satisfies every constraint of its variant.
bool validate_witness(const ConfigurationPattern& p, const MatchWitness& w, const PlanarEmbedding& g);

// Witnesses are deduplicated by image (host vertex set and host edge set of
// the mapped pattern edges) per variant; the representative is the
// lexicographically smallest map. Sorted by (variant, map).
std::vector<MatchWitness> match_configuration(const ConfigurationPattern& p, const PlanarEmbedding& g);
std::optional<MatchWitness> first_match(const ConfigurationPattern& p, const PlanarEmbedding& g);

std::optional<MatchWitness> contains_four_fan(const PlanarEmbedding& g);

struct StructuralViolation {
    std::string lemma;
    MatchWitness witness;
};

// Catalog entries whose absence the structural lemmas establish, found in g.
std::vector<StructuralViolation> structural_violations(const PlanarEmbedding& g);

std::string format_witness(const ConfigurationPattern& p, const MatchWitness& w);

} // namespace tc8
