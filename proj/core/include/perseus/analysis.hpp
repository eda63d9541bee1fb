#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "perseus/code.hpp"
#include "perseus/entropy.hpp"
#include "perseus/gf2.hpp"

namespace perseus {

/// Non-punctured encoder emitting exactly the punctured stream of `pc`.
///
/// Inputs are the k*M phases of the base streams over one puncturing period
/// (phase-major: input r*k + i carries stream i at sections r, r+M, ...), so
/// the equivalent code consumes the message in its original bit order.
/// Outputs are the surviving symbols of one period in transmission order.
/// Output (r, j) depends on input (r', i) through every base coefficient
/// f_ij[d] with d = r - r' + e*M, contributing x^e.
ConvCode equivalent_code(const PuncturedCode& pc);

struct EntropyReport {
  double byte_entropy = 0.0;
  std::array<std::uint64_t, 256> histogram{};
  std::size_t sample_bytes = 0;
};

/// Shannon entropy of the byte histogram in bits per byte. Throws EmptyInput.
EntropyReport byte_entropy(std::span<const std::uint8_t> data);

struct ReconstructionCandidate {
  Gf2Poly g1;
  Gf2Poly g2;
  double syndrome_fraction = 0.0;
};

struct ReconstructionResult {
  std::vector<ReconstructionCandidate> candidates;
  std::size_t tested = 0;
  bool success = false;
};

/// Largest hypothesis degree accepted by reconstruct_bruteforce.
inline constexpr int kMaxReconstructionMem = 8;

/// Exhaustive rate-1/2 encoder search on an interleaved intercept
/// (c1[0], c2[0], c1[1], ...). Every unordered pair {g1, g2} of polynomials of
/// degree <= max_mem with at least one unit constant term is one hypothesis;
/// both output orders are scored and the lower syndrome weight kept. The
/// syndrome c1*g2 + c2*g1 vanishes for the true encoder, so pairs whose
/// syndrome fraction falls below `threshold` are candidates. `truth`, when
/// given, decides `success` (match up to output order).
///
/// noise_p is the test condition under which the intercept was produced; it is
/// reported but not used by the search. Throws HypothesisSpaceTooLarge above
/// kMaxReconstructionMem.
ReconstructionResult reconstruct_bruteforce(const BitStream& intercepted, int max_mem, double noise_p,
                                            double threshold, const ConvCode* truth = nullptr);

/// Encodes `message_bits` random bits with a rate-1/2 code (no flush) and
/// flips each coded bit independently with probability p.
BitStream make_intercept(const ConvCode& code, std::size_t message_bits, double p, EntropySource& rng);

}  // namespace perseus
