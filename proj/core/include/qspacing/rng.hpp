#pragma once

#include <cstdint>
#include <random>

namespace qspacing {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of an independent stream derived from a root seed and a stream id.
/// Streams depend only on (root, stream), never on the order they are created in.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
    return mix64(mix64(root) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

[[nodiscard]] inline Engine make_engine(std::uint64_t root, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(root, stream)),
                      static_cast<std::uint32_t>(derive_seed(root, stream) >> 32)};
    return Engine(seq);
}

}  // namespace qspacing
