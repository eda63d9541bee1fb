#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "perseus/code.hpp"
#include "perseus/noise.hpp"

namespace perseus {

/// Everything the receiver needs: encoder, puncturing, noise key and filter.
struct SessionParams {
  PuncturedCode code;
  NoiseKey key;
  NoiseConfig noise;

  /// Re-checks every component; throws InvalidParams.
  void validate() const;

  friend bool operator==(const SessionParams&, const SessionParams&) = default;
};

inline constexpr char kParamsMagic[4] = {'P', 'R', 'S', 'S'};
inline constexpr std::uint8_t kParamsVersion = 1;

/// Blob layout (multi-byte integers little-endian, bit-packed fields MSB-first):
///   "PRSS" | version u8 | k u8 | n u8 | mem u16 | M u16 | proba u8 | bf u16 |
///   init1..init4 u32 | k*n polynomials, row-major, ceil((mem+1)/8) bytes each
///   (coefficient d at byte d/8, bit 7 - d%8) | puncturing matrix row-major,
///   ceil(n*M/8) bytes | CRC-32 (IEEE) of all preceding bytes.
std::vector<std::uint8_t> serialize_params(const SessionParams& sp);

/// Size serialize_params produces for these dimensions.
std::size_t params_blob_size(int k, int n, int mem, int width);

/// Throws Format (magic, version, truncation, trailing bytes), Corruption
/// (CRC) or InvalidParams (any component invariant).
SessionParams deserialize_params(std::span<const std::uint8_t> blob);

enum class PayloadMode : std::uint8_t { Hex = 0, Binary = 1 };

inline constexpr std::uint8_t kFrameVersion = 1;
/// Set in the frame version byte when the payload is packed binary.
inline constexpr std::uint8_t kFrameBinaryFlag = 0x80;
inline constexpr std::size_t kFrameHeaderSize = 13;
inline constexpr std::size_t kDefaultChunkBytes = 2048;

struct Frame {
  std::uint32_t chunk_index = 0;
  std::uint32_t plain_len_bytes = 0;
  std::uint32_t coded_bit_len = 0;
  PayloadMode mode = PayloadMode::Hex;
  /// Lowercase hex text (Hex) or MSB-first packed bits (Binary).
  std::vector<std::uint8_t> payload;

  /// Payload as a bit stream of coded_bit_len bits.
  BitStream payload_bits() const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Punctured bit count of a chunk holding plain_len_bytes of data.
std::size_t expected_coded_bits(const PuncturedCode& code, std::size_t plain_len_bytes);

/// Splits data into chunk_bytes chunks; each is encoded, punctured, noised by a
/// single keystream that runs across all chunks, and framed.
std::vector<Frame> protect(const SessionParams& sp, std::span<const std::uint8_t> data,
                           std::size_t chunk_bytes = kDefaultChunkBytes, PayloadMode mode = PayloadMode::Hex);

/// Inverse of protect. Throws Sequence for missing or reordered chunks and
/// Integrity / AmbiguousDecode / LengthMismatch / MalformedPayload with the
/// failing chunk index attached.
std::vector<std::uint8_t> unprotect(const SessionParams& sp, std::span<const Frame> frames);

/// Frame container: header (version u8 | chunk_index u32 | plain_len_bytes u32
/// | coded_bit_len u32, little-endian) followed by the payload, back to back.
std::vector<std::uint8_t> write_frames(std::span<const Frame> frames);
/// Throws Sequence when the container ends inside a frame and Format on an
/// unknown frame version.
std::vector<Frame> read_frames(std::span<const std::uint8_t> container);

}  // namespace perseus
