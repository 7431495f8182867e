#ifndef AMPSIM_RANDOM_HPP
#define AMPSIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ampsim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent sub-stream, folding each coordinate through
/// mix64 in turn: seed -> (simulation, condition, trial). The burn-in stream
/// is (0, 0, 0); measurement trial k of condition c in simulation s is
/// (s, c, k).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t simulation, std::uint64_t condition,
                                    std::uint64_t trial) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ simulation);
  h = mix64(h ^ condition);
  h = mix64(h ^ trial);
  return h;
}

inline Rng make_stream(std::uint64_t master, std::uint64_t simulation, std::uint64_t condition,
                       std::uint64_t trial) {
  return Rng(derive_seed(master, simulation, condition, trial));
}

}  // namespace ampsim

#endif  // AMPSIM_RANDOM_HPP
