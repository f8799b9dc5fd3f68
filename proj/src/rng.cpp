#include "fxnet/rng.hpp"

#include <utility>

namespace fxnet {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, const StreamKey& key) {
    std::uint64_t state = seed;
    for (std::uint64_t component : {key.window, key.cell, key.repetition}) {
        state = splitmix64(state) ^ component;
    }
    return std::mt19937_64(splitmix64(state));
}

namespace {

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t label_pair_key(std::string_view a, std::string_view b) noexcept {
    if (b < a) std::swap(a, b);
    std::uint64_t state = fnv1a(a);
    state = splitmix64(state) ^ fnv1a(b);
    return splitmix64(state);
}

}  // namespace fxnet
