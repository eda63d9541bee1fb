#pragma once

#include <array>
#include <cstdint>

#include "perseus/entropy.hpp"
#include "perseus/gf2.hpp"

namespace perseus {

/// Register lengths and feedback taps of the fixed four-LFSR combiner.
inline constexpr std::array<unsigned, 4> kLfsrLengths = {19, 23, 29, 31};
inline constexpr std::array<std::uint32_t, 4> kLfsrTaps = {0x47E07, 0x1772AF, 0x1C95269, 0x43E98841};

inline constexpr std::uint32_t lfsr_mask(std::size_t i) {
  return static_cast<std::uint32_t>((std::uint64_t{1} << kLfsrLengths[i]) - 1);
}

/// Default noise-probability range, in percent.
inline constexpr int kDefaultProbaLo = 15;
inline constexpr int kDefaultProbaHi = 35;
/// Lowest probability accepted when low-entropy mode is requested.
inline constexpr int kLowEntropyProbaLo = 5;

/// Initial register fills (19 + 23 + 29 + 31 = 102 secret bits).
struct NoiseKey {
  std::array<std::uint32_t, 4> init{};

  /// Draws each fill at full register width, redrawing zeros.
  static NoiseKey generate(EntropySource& rng);
  /// Throws InvalidParams for a zero or oversized fill.
  void validate() const;

  friend bool operator==(const NoiseKey&, const NoiseKey&) = default;
};

/// Filter table (bit w of `bf` is entry w) plus the nominal probability in
/// percent the table was sampled with.
struct NoiseConfig {
  std::uint16_t bf = 0;
  int proba = kDefaultProbaLo;

  bool entry(unsigned index) const noexcept { return (bf >> index) & 1U; }
  int weight() const noexcept;
  /// weight / 16: the flip probability the stream actually realizes.
  double realized_probability() const noexcept { return weight() / 16.0; }
  bool degenerate() const noexcept { return bf == 0 || bf == 0xFFFF; }

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

/// Draws proba uniformly from [lo, hi] percent, then sets each filter entry
/// with probability proba/100 (uniform integer in [0, 99] below proba).
/// Degenerate all-0 / all-1 tables are redrawn. Requires 1 <= lo <= hi <= 49,
/// otherwise throws InvalidRange.
NoiseConfig gen_noise_config(EntropySource& rng, int lo = kDefaultProbaLo, int hi = kDefaultProbaHi);

/// Stateful keystream generator. One instance per payload, stepped in order.
class NoiseGenerator {
 public:
  /// Validates the key; the filter may be anything (including degenerate tables
  /// in tests).
  NoiseGenerator(const NoiseKey& key, const NoiseConfig& config);

  /// One combiner step. Each register shifts right by one, outputs its low bit
  /// and takes parity(state & tap) into its top bit; the four output bits
  /// (register 1 most significant) index the filter.
  bool step() noexcept;

  /// XORs the keystream into `bits` in place, one step per bit.
  void apply(BitStream& bits) noexcept;

  const std::array<std::uint32_t, 4>& registers() const noexcept { return regs_; }
  const NoiseConfig& config() const noexcept { return config_; }

 private:
  std::array<std::uint32_t, 4> regs_{};
  NoiseConfig config_;
};

/// Copy of `bits` with the generator's keystream XORed in.
BitStream apply_noise(NoiseGenerator& gen, const BitStream& bits);

/// Same operation as apply_noise; named for the receiving side.
inline BitStream remove_noise(NoiseGenerator& gen, const BitStream& bits) { return apply_noise(gen, bits); }

}  // namespace perseus
