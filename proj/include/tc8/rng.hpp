#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tc8 {

// xoshiro256** (Blackman and Vigna), state seeded from a 64-bit seed by
// four successive splitmix64 outputs. Bounded integers use rejection
// sampling on the high bits so every implementation draws identical values.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    // Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    // True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
    template <class T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace tc8
