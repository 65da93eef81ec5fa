#pragma once

#include <array>
#include <cstdint>

#include "gwmlp/matrix.hpp"

namespace gwmlp {

/// Seeded 64-bit PRNG: xoshiro256++ with splitmix64 state expansion.
/// Identical seeds produce identical sequences; the algorithm is frozen and
/// seeds are part of the external interface.
class RngState {
public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 random bits.
  double next_uniform();

  /// Standard normal draw via the Marsaglia polar method (log/sqrt only,
  /// no trig); consumes a deterministic number of uniforms per call.
  double next_normal();

  std::uint64_t seed() const { return seed_; }

private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t seed_;
};

/// rows x cols matrix of independent standard-normal draws, advancing state.
Matrix rng_standard_normal(RngState& state, std::size_t rows, std::size_t cols);

} // namespace gwmlp
