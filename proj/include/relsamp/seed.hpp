#pragma once

#include <cstdint>
#include <random>

namespace relsamp {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based seed derivation: stream `index` of campaign `master`.
// Independent of evaluation order, so parallel trials stay reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ull));
}

using Rng = std::mt19937_64;

}  // namespace relsamp
