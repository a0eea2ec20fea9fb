#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace belgauge {

/// Worker count for internal parallelism: BELGAUGE_THREADS if set and
/// positive, otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index must write only its own slot so
/// results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Independent, reproducible stream for (seed, stream) pairs.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x6265u};
  return std::mt19937_64(seq);
}

}  // namespace belgauge
