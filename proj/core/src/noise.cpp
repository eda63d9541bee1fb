#include "perseus/noise.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "perseus/error.hpp"

namespace perseus {
namespace {

// Folded parity; portable builds lack a popcount instruction.
std::uint32_t parity(std::uint32_t x) noexcept {
  x ^= x >> 16;
  x ^= x >> 8;
  x ^= x >> 4;
  return (0x6996U >> (x & 15U)) & 1U;
}

}  // namespace

NoiseKey NoiseKey::generate(EntropySource& rng) {
  NoiseKey key;
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint32_t v = 0;
    while (v == 0) v = static_cast<std::uint32_t>(rng.bits(kLfsrLengths[i]));
    key.init[i] = v;
  }
  return key;
}

void NoiseKey::validate() const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (init[i] == 0 || (init[i] & ~lfsr_mask(i)) != 0) {
      throw Error(ErrorKind::InvalidParams,
                  "noise register " + std::to_string(i + 1) + " fill is zero or wider than " +
                      std::to_string(kLfsrLengths[i]) + " bits");
    }
  }
}

int NoiseConfig::weight() const noexcept { return std::popcount(bf); }

NoiseConfig gen_noise_config(EntropySource& rng, int lo, int hi) {
  if (lo < 1 || hi > 49 || lo > hi) {
    throw Error(ErrorKind::InvalidRange,
                "noise probability range [" + std::to_string(lo) + "," + std::to_string(hi) +
                    "] must lie within [1,49]");
  }
  NoiseConfig cfg;
  cfg.proba = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)));
  do {
    cfg.bf = 0;
    for (unsigned w = 0; w < 16; ++w) {
      if (static_cast<int>(rng.uniform(0, 99)) < cfg.proba) cfg.bf |= static_cast<std::uint16_t>(1U << w);
    }
  } while (cfg.degenerate());
  return cfg;
}

NoiseGenerator::NoiseGenerator(const NoiseKey& key, const NoiseConfig& config)
    : regs_(key.init), config_(config) {
  key.validate();
}

bool NoiseGenerator::step() noexcept {
  unsigned index = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::uint32_t r = regs_[i];
    const std::uint32_t feedback = static_cast<std::uint32_t>(std::popcount(r & kLfsrTaps[i])) & 1U;
    index = (index << 1) | (r & 1U);
    regs_[i] = (r >> 1) | (feedback << (kLfsrLengths[i] - 1));
  }
  return config_.entry(index);
}

void NoiseGenerator::apply(BitStream& bits) noexcept {
  auto words = bits.words();
  const std::size_t n = bits.size();
  for (std::size_t w = 0; w * 64 < n; ++w) {
    const std::size_t limit = std::min<std::size_t>(64, n - w * 64);
    // Bit-sliced: one word of output bits per register, then the filter as a
    // sum of minterms over the four words.
    std::array<std::uint64_t, 4> out{};
    std::array<std::uint32_t, 4> r = regs_;
    for (std::size_t b = 0; b < limit; ++b) {
      for (std::size_t i = 0; i < 4; ++i) {
        out[i] |= static_cast<std::uint64_t>(r[i] & 1U) << b;
        const auto feedback = parity(r[i] & kLfsrTaps[i]);
        r[i] = (r[i] >> 1) | (feedback << (kLfsrLengths[i] - 1));
      }
    }
    regs_ = r;
    std::uint64_t mask = 0;
    for (unsigned index = 0; index < 16; ++index) {
      if (!config_.entry(index)) continue;
      std::uint64_t term = ~std::uint64_t{0};
      for (std::size_t i = 0; i < 4; ++i) {
        term &= ((index >> (3 - i)) & 1U) != 0 ? out[i] : ~out[i];
      }
      mask |= term;
    }
    if (limit < 64) mask &= (std::uint64_t{1} << limit) - 1;
    words[w] ^= mask;
  }
}

BitStream apply_noise(NoiseGenerator& gen, const BitStream& bits) {
  BitStream out = bits;
  gen.apply(out);
  return out;
}

}  // namespace perseus
