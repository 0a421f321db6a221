#pragma once

#include <cstdint>
#include <string>

#include "tc8/graph.hpp"

namespace tc8 {

struct GeneratorConfig {
    int n = 12;
    int max_degree = 8;
    bool forbid_four_fan = true;
    double deletion_probability = 0.0; // per edge, rounded to millionths
    std::uint64_t seed = 0;
    int repair_limit = 0; // 0 = 60n + 100 repair steps

    std::string describe() const;
};

// Grows a triangulation by inserting each new vertex into a uniformly chosen
// face (faces in traced order), deletes each edge in lexicographic order with
// the configured probability unless it is a bridge, then repairs: a vertex
// above the cap loses a random non-bridge edge; otherwise a 4-fan witness
// loses a random non-bridge edge among its nine. Throws GenerationStalled
// when the repair budget runs out or no deletable edge exists.
PlanarEmbedding generate_planar(const GeneratorConfig& cfg);

} // namespace tc8
