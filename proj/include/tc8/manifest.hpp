#pragma once

#include <string>
#include <vector>

namespace tc8 {

// SHA-256 of the text after CRLF/CR -> LF normalization, lowercase hex.
std::string content_checksum(const std::string& text);

struct ManifestEntry {
    std::string path;       // relative to the manifest's directory
    std::string provenance; // "fixture:<name>" or "gen:<config>"
    std::string checksum;
};

// One entry per line: "<checksum> <path> <provenance>"; '#' lines ignored.
struct CorpusManifest {
    std::vector<ManifestEntry> entries;

    static CorpusManifest parse(const std::string& text);
    std::string format() const;
    // Paths whose file is missing or whose checksum differs.
    std::vector<std::string> verify(const std::string& dir) const;
    const ManifestEntry* find(const std::string& path) const;
};

} // namespace tc8
