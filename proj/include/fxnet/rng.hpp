#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fxnet {

/// Coordinates of one independent random stream below a root seed.
///
/// Every (window, cell, repetition) triple gets its own generator so that
/// results do not depend on evaluation order or on the number of threads.
struct StreamKey {
    std::uint64_t window = 0;
    std::uint64_t cell = 0;
    std::uint64_t repetition = 0;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Derives a generator for `key` from `seed` by chained splitmix64 mixing.
std::mt19937_64 make_stream(std::uint64_t seed, const StreamKey& key);

/// Order-independent key for an unordered pair of labels.
std::uint64_t label_pair_key(std::string_view a, std::string_view b) noexcept;

}  // namespace fxnet
