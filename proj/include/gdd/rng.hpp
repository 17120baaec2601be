#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace gdd {

using Rng = std::mt19937_64;

/// Independent generator for a (seed, stream...) tuple. Every random draw in
/// the library goes through this, so results depend only on the tuple and not
/// on the order in which concurrent work is scheduled.
inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {}) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * stream.size());
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto s : stream) push(s);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

// Purpose tags for derived streams.
namespace stream {
inline constexpr std::uint64_t graph = 0x67726170;
inline constexpr std::uint64_t signal = 0x7369676e;
inline constexpr std::uint64_t noise = 0x6e6f6973;
inline constexpr std::uint64_t fit = 0x66697400;
inline constexpr std::uint64_t latent = 0x6c617465;
inline constexpr std::uint64_t weights = 0x77656967;
}  // namespace stream

}  // namespace gdd
