#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace kcut {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent substream seed from a master seed and a tuple of
/// indices, e.g. derive_seed(master, {n, d, graph_index}). Stable across
/// platforms and releases.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t p : parts)
    h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

} // namespace kcut
