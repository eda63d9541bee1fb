#pragma once

#include <cstddef>

#include "perseus/code.hpp"
#include "perseus/gf2.hpp"

namespace perseus {

enum class DecodeMethod { Linear, Viterbi };

struct DecodeReport {
  BitStream message;
  std::size_t rank_deficit = 0;
  DecodeMethod method = DecodeMethod::Linear;
};

/// Exact decoder for noise-free received streams.
///
/// Every known symbol is one GF(2) equation over the message bits. Equations
/// are fed in trellis order into an incremental eliminator that pivots on the
/// oldest unknown of each row; a row for section t only spans the
/// k * (mem + 1) unknowns of its constraint window, and reduction keeps it
/// inside that window, so storage is O(msg_bits * window) bits and time is
/// O(equations * window^2 / 64). Back-substitution runs from the newest
/// unknown down.
///
/// Throws LengthMismatch if the geometry does not match msg_bits,
/// Precondition if msg_bits is not a multiple of k, Integrity if some equation
/// is contradicted (corrupted or foreign payload) and AmbiguousDecode (with
/// rank_deficit set on the error) if the message is not uniquely determined.
DecodeReport decode_linear(const PuncturedCode& pc, const ErasureStream& es, std::size_t msg_bits);

/// Number of message bits left undetermined by the equations of a
/// msg_bits-long transmission (0 when decode_linear would succeed).
std::size_t linear_rank_deficit(const PuncturedCode& pc, std::size_t msg_bits);

/// Hard-decision maximum-likelihood trellis decoder. Erased symbols cost
/// nothing; equal path metrics resolve toward the smaller predecessor state.
/// Requires k * mem <= 16 and n <= 64, otherwise throws ParamsTooLarge.
DecodeReport decode_viterbi(const PuncturedCode& pc, const ErasureStream& es, std::size_t msg_bits);

}  // namespace perseus
