#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <random>

namespace perseus {

/// Source of random 64-bit words. Code generation and key generation draw
/// from this interface so production and reproducible test runs share a path.
class EntropySource {
 public:
  using result_type = std::uint64_t;

  virtual ~EntropySource() = default;

  virtual std::uint64_t next() = 0;

  result_type operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform integer in [lo, hi], unbiased (rejection on the top partial range).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  /// Uniform draw of the low `bits` bits.
  std::uint64_t bits(unsigned bits);
};

/// Operating-system CSPRNG (getrandom).
class SystemEntropy final : public EntropySource {
 public:
  std::uint64_t next() override;
};

/// Deterministic generator for tests and `--seed` runs. Not for real sessions.
class SeededEntropy final : public EntropySource {
 public:
  explicit SeededEntropy(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace perseus
