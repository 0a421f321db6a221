#pragma once

#include <string>

#include "tc8/graph.hpp"

namespace tc8 {

// Text format:
//   V E
//   <id>: n1 n2 ... nd      (one line per vertex, clockwise rotation)
// Blank lines and lines starting with '#' are ignored.
PlanarEmbedding parse_embedding(const std::string& text);
std::string serialize_embedding(const PlanarEmbedding& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Converts CRLF and lone CR to LF.
std::string normalize_newlines(const std::string& text);

} // namespace tc8
