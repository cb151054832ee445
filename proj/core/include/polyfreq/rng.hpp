#pragma once

#include <cstdint>
#include <random>

namespace polyfreq {

// SplitMix64 finalizer: decorrelates nearby integer seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of replication `index` under base seed `base`: a pure function of
// (base + index), so a replication draws the same stream whichever worker runs it.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix_seed(base + index);
}

// Two-level stream id, e.g. (sample-size slot, replication).
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t outer, std::uint64_t inner) noexcept {
  return mix_seed(stream_seed(base, outer) ^ (inner * 0xd1b54a32d192ed03ULL));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(mix_seed(seed)); }

}  // namespace polyfreq
