#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perseus {

/// Growable sequence of bits, packed 64 per word. Bit i lives in word i/64 at
/// position i%64; bits past size() are always zero.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

  /// Parses "1011 0010" style text (whitespace ignored), mainly for tests.
  static BitStream from_string(std::string_view text);
  /// Unpacks bytes MSB-first: bit 0 of the stream is bit 7 of data[0].
  static BitStream from_bytes(std::span<const std::uint8_t> data);
  /// Same as from_bytes but keeps only the first bit_len bits.
  static BitStream from_packed(std::span<const std::uint8_t> data, std::size_t bit_len);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void push_back(bool value);
  void resize(std::size_t size);
  void reserve(std::size_t size) { words_.reserve((size + 63) / 64); }

  std::size_t count() const noexcept;

  /// Packs MSB-first into ceil(size/8) bytes, zero-padding the last byte.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// Element-wise XOR; both operands must have the same length.
  BitStream& operator^=(const BitStream& other);
  friend BitStream operator^(BitStream lhs, const BitStream& rhs) { return lhs ^= rhs; }

  friend bool operator==(const BitStream& a, const BitStream& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Polynomial over GF(2), stored dense: bit d is the coefficient of x^d.
/// Trailing zero words are trimmed so equality is structural.
class Gf2Poly {
 public:
  static constexpr int kMaxDegree = (1 << 16) - 1;
  static constexpr int kZeroDegree = -1;

  Gf2Poly() = default;

  /// Low 64 coefficients from a mask (bit d -> x^d).
  static Gf2Poly from_mask(std::uint64_t mask);
  static Gf2Poly from_exponents(std::initializer_list<int> exponents);
  /// Takes packed coefficient words; throws Precondition past kMaxDegree.
  static Gf2Poly from_words(std::vector<std::uint64_t> words);

  /// kZeroDegree for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return words_.empty(); }
  bool coeff(int d) const noexcept;
  void set_coeff(int d, bool value);

  /// Number of nonzero coefficients.
  int weight() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  /// Low 64 coefficients; handy for small polynomials.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  /// Human-readable form such as "1+x+x^3".
  std::string to_string() const;

  Gf2Poly& operator+=(const Gf2Poly& other);
  friend Gf2Poly operator+(Gf2Poly lhs, const Gf2Poly& rhs) { return lhs += rhs; }

  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) noexcept { return a.words_ == b.words_; }

 private:
  void trim() noexcept;

  std::vector<std::uint64_t> words_;
};

/// Carry-less product.
Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);

namespace detail {

/// dst ^= src * poly over GF(2), both dst and src given as packed words
/// (bit i = coefficient i). dst must have room for deg(src)+deg(poly)+1 bits.
void clmul_accumulate(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                      const Gf2Poly& poly);

}  // namespace detail

/// Four bits per lowercase hex character, MSB-first inside each nibble; a final
/// partial nibble is right-padded with zeros.
std::string bits_to_nibble_hex(const BitStream& bits);

/// Inverse of bits_to_nibble_hex, truncated to bit_len.
/// Throws MalformedPayload on a non-hex character and LengthMismatch when
/// bit_len exceeds 4 * text.size().
BitStream nibble_hex_to_bits(std::string_view text, std::size_t bit_len);

}  // namespace perseus
