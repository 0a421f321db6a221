#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tc8/coloring.hpp"
#include "tc8/graph.hpp"
#include "tc8/patterns.hpp"

namespace tc8 {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int charge_graphs = 1000;
    int charge_max_n = 40;
    int theorem_graphs = 200;
    int theorem_max_n = 12;
    int audit_graphs = 300;
    int audit_max_n = 40;
    int samples = 500;       // per reducibility fixture
    int oracle_max_vertices = 10;
    int oracle_max_elements = 8;

    // Same shape with every count cut down; used for smoke runs.
    static SuiteOptions quick(std::uint64_t seed);
};

struct CriterionReport {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> lines; // deterministic detail, no timings
};

// Criteria 1..6; criterion 7 compares two whole runs and lives with the
// callers (CLI, acceptance binary).
CriterionReport run_criterion(int id, const SuiteOptions& opt);
std::string criterion_name(int id);
std::string format_report(const SuiteOptions& opt, const std::vector<CriterionReport>& reports);

// Deterministic corpora. Graph i uses a seed derived from (seed, i); stalled
// generations move on to the next derived seed.
std::vector<PlanarEmbedding> charge_corpus(const SuiteOptions& opt);
std::vector<PlanarEmbedding> theorem_corpus(const SuiteOptions& opt); // max degree exactly 8, n <= theorem_max_n
std::vector<PlanarEmbedding> audit_corpus(const SuiteOptions& opt);   // theorem corpus plus graphs up to audit_max_n

// Reducibility jobs: (fixture, lemma).
std::vector<std::pair<std::string, std::string>> reducibility_fixtures();

// Independent oracles. Brute-force matching walks injective maps in
// lexicographic order and keeps the first map of every image.
std::vector<MatchWitness> brute_force_matches(const ConfigurationPattern& p, const PlanarEmbedding& g);
// Odometer over all k^N assignments; true at the first proper one.
bool brute_force_colorable(const Graph& g, int k);

} // namespace tc8
