#include "tc8/fixtures.hpp"

#include <utility>

#include <fmt/format.h>

#include "tc8/io.hpp"

namespace tc8 {

const std::vector<std::pair<std::string, std::string>>& embedded_fixtures(); // generated

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (auto& [name, text] : embedded_fixtures()) out.push_back(name);
    return out;
}

const std::string& fixture_text(const std::string& name) {
    for (auto& [n, text] : embedded_fixtures())
        if (n == name) return text;
    throw Error(Errc::InvalidArgument, fmt::format("no fixture '{}'", name));
}

PlanarEmbedding load_fixture(const std::string& name) { return parse_embedding(fixture_text(name)); }

} // namespace tc8
