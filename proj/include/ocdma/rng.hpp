#pragma once

#include <cstdint>
#include <random>

namespace ocdma {

/// Independent substream for (seed, stream). Chunked Monte-Carlo kernels give each
/// chunk its own stream so results do not depend on thread count or schedule.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace ocdma
