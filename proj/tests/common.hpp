#pragma once

#include <string>

#include "tc8/fixtures.hpp"
#include "tc8/graph.hpp"
#include "tc8/io.hpp"

namespace tc8::test {

inline PlanarEmbedding fx(const std::string& name) { return load_fixture(name); }

inline PlanarEmbedding rot(const std::string& text) { return parse_embedding(text); }

// Error code thrown by f, or 0.
template <class F> int error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return static_cast<int>(e.code());
    }
    return 0;
}

inline int code(Errc c) { return static_cast<int>(c); }

} // namespace tc8::test
