// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace smpde {

/// SplitMix64 finalizer (a bijection on 64-bit words).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream seed. For a fixed master seed the map stream -> seed is
/// injective, because both the counter step and the finalizer are bijections.
/// The formula is part of the file-format contract and will not change.
constexpr std::uint64_t seed_split(std::uint64_t master_seed, std::uint64_t stream_id) {
    return splitmix64_mix(master_seed + (stream_id + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace smpde
