#pragma once

#include <string>
#include <vector>

#include "tc8/graph.hpp"

namespace tc8 {

// Embedded copies of data/fixtures/*.rot, keyed by file stem.
std::vector<std::string> fixture_names();
const std::string& fixture_text(const std::string& name); // InvalidArgument when absent
PlanarEmbedding load_fixture(const std::string& name);

} // namespace tc8
