#pragma once

#include <cstdint>
#include <random>

namespace lingam {

using Rng = std::mt19937_64;

// Seed for an independent substream: the splitmix64 finalizer applied to
// master + (stream + 1) * 0x9e3779b97f4a7c15. Nest calls for multi-level
// splits, e.g. derive_seed(derive_seed(master, cell), trial).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    std::uint64_t z = master + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace lingam
