#include "tc8/manifest.hpp"

#include <filesystem>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "tc8/error.hpp"
#include "tc8/io.hpp"

namespace tc8 {

std::string content_checksum(const std::string& text) {
    std::string norm = normalize_newlines(text);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(norm.data(), norm.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::InvalidArgument, "sha256 failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

CorpusManifest CorpusManifest::parse(const std::string& text) {
    CorpusManifest m;
    std::istringstream in(normalize_newlines(text));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        ManifestEntry e;
        if (!(ls >> e.checksum >> e.path)) throw Error(Errc::ParseError, "expected '<checksum> <path> <provenance>'", lineno);
        std::getline(ls >> std::ws, e.provenance);
        if (e.checksum.size() != 64) throw Error(Errc::ParseError, "checksum must be 64 hex digits", lineno);
        m.entries.push_back(e);
    }
    return m;
}

std::string CorpusManifest::format() const {
    std::string out;
    for (auto& e : entries) out += fmt::format("{} {} {}\n", e.checksum, e.path, e.provenance);
    return out;
}

std::vector<std::string> CorpusManifest::verify(const std::string& dir) const {
    std::vector<std::string> bad;
    for (auto& e : entries) {
        auto p = std::filesystem::path(dir) / e.path;
        if (!std::filesystem::exists(p) || content_checksum(read_text_file(p.string())) != e.checksum)
            bad.push_back(e.path);
    }
    return bad;
}

const ManifestEntry* CorpusManifest::find(const std::string& path) const {
    for (auto& e : entries)
        if (e.path == path) return &e;
    return nullptr;
}

} // namespace tc8
