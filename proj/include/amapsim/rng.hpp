#pragma once

#include <cstdint>

#include "amapsim/sim_time.hpp"

namespace amapsim {

// Deterministic xoshiro256** generator. Each stochastic consumer (one per
// traffic source, one per station backoff, one per station channel) owns its
// own stream so that adding or reordering consumers does not perturb the
// draws of the others. Identical (seed, stream) always yields identical
// sequences, independent of platform or standard library.
class RngStream {
 public:
  RngStream() : RngStream(1, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Unbiased uniform integer in [0, bound). bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double uniform01();

  // Exponentially distributed duration with the given mean, rounded to the
  // nearest tick and clamped to >= 1.
  SimTime exponential_ticks(SimTime mean);

 private:
  std::uint64_t state_[4];
};

}  // namespace amapsim
