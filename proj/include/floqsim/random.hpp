#pragma once

#include <cstdint>
#include <random>

namespace floqsim {

/// splitmix64 finalizer; maps (master seed, stream index) to independent seeds
/// so that per-item streams do not depend on scheduling order.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(mix_seed(master, stream));
}

/// Binomial(shots, p) draw; p is clamped to [0, 1].
long sample_binomial(Rng& rng, long shots, double p);

}  // namespace floqsim
