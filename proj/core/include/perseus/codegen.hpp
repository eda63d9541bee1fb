#pragma once

#include <cstddef>

#include "perseus/code.hpp"
#include "perseus/entropy.hpp"

namespace perseus {

/// Each dimension X is drawn uniformly from [x_min, x_min + x_span].
struct GenBounds {
  int k_min = 1;
  int k_span = 5;
  int n_min = 5;
  int n_span = 6;
  int mem_min = 10;
  int mem_span = 20;
  int mwidth_min = 6;
  int mwidth_span = 16;
  /// nbzero = floor(n * M / puncture_divisor) puncturing-matrix entries are zero.
  int puncture_divisor = 8;
};

/// Consecutive failed probes after which generate_code gives up.
inline constexpr int kMaxProbeFailures = 64;
/// Message length (rounded up to a multiple of k) used by the probe round-trip.
inline constexpr std::size_t kProbeBits = 256;

/// Throws InvalidBounds when no draw inside the bounds can produce a usable
/// code (k < n and punctured rate <= 1).
void validate_bounds(const GenBounds& bounds);

/// Draws a random punctured encoder inside `bounds` and returns it only once
/// a random probe message survives encode / puncture / unpuncture /
/// decode_linear. Throws InvalidBounds or GenerationFailure.
PuncturedCode generate_code(const GenBounds& bounds, EntropySource& rng);

/// True when a random message of kProbeBits (rounded to k) round-trips exactly.
bool probe_round_trip(const PuncturedCode& pc, EntropySource& rng);

}  // namespace perseus
