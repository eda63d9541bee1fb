#include "perseus/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <utility>

#include "perseus/error.hpp"

namespace perseus {

BitStream BitStream::from_string(std::string_view text) {
  BitStream out;
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::MalformedPayload, std::string("not a bit character: ") + c);
    }
  }
  return out;
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> data) {
  return from_packed(data, data.size() * 8);
}

BitStream BitStream::from_packed(std::span<const std::uint8_t> data, std::size_t bit_len) {
  if (bit_len > data.size() * 8) {
    throw Error(ErrorKind::LengthMismatch, "bit length exceeds packed data");
  }
  BitStream out(bit_len);
  for (std::size_t i = 0; i < bit_len; ++i) {
    if ((data[i >> 3] >> (7 - (i & 7))) & 1U) {
      out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
  return out;
}

void BitStream::push_back(bool value) {
  if ((size_ & 63) == 0) {
    words_.push_back(0);
  }
  if (value) {
    words_[size_ >> 6] |= std::uint64_t{1} << (size_ & 63);
  }
  ++size_;
}

void BitStream::resize(std::size_t size) {
  words_.resize((size + 63) / 64, 0);
  size_ = size;
  if ((size_ & 63) != 0) {
    words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }
}

std::size_t BitStream::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) {
      out[i >> 3] |= static_cast<std::uint8_t>(0x80U >> (i & 7));
    }
  }
  return out;
}

std::string BitStream::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

BitStream& BitStream::operator^=(const BitStream& other) {
  if (other.size_ != size_) {
    throw Error(ErrorKind::LengthMismatch, "xor of bit streams with different lengths");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    words_[w] ^= other.words_[w];
  }
  return *this;
}

// ---------------------------------------------------------------------------

Gf2Poly Gf2Poly::from_mask(std::uint64_t mask) {
  Gf2Poly p;
  if (mask != 0) p.words_.push_back(mask);
  return p;
}

Gf2Poly Gf2Poly::from_exponents(std::initializer_list<int> exponents) {
  Gf2Poly p;
  for (int e : exponents) {
    p.set_coeff(e, !p.coeff(e));
  }
  return p;
}

Gf2Poly Gf2Poly::from_words(std::vector<std::uint64_t> words) {
  Gf2Poly p;
  p.words_ = std::move(words);
  p.trim();
  if (p.degree() > kMaxDegree) {
    throw Error(ErrorKind::Precondition, "polynomial degree out of range");
  }
  return p;
}

int Gf2Poly::degree() const noexcept {
  if (words_.empty()) return kZeroDegree;
  const auto top = words_.back();
  return static_cast<int>((words_.size() - 1) * 64) + 63 - std::countl_zero(top);
}

bool Gf2Poly::coeff(int d) const noexcept {
  const auto w = static_cast<std::size_t>(d) >> 6;
  if (d < 0 || w >= words_.size()) return false;
  return (words_[w] >> (d & 63)) & 1U;
}

void Gf2Poly::set_coeff(int d, bool value) {
  if (d < 0 || d > kMaxDegree) {
    throw Error(ErrorKind::Precondition, "polynomial degree out of range");
  }
  const auto w = static_cast<std::size_t>(d) >> 6;
  if (w >= words_.size()) {
    if (!value) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t mask = std::uint64_t{1} << (d & 63);
  if (value) {
    words_[w] |= mask;
  } else {
    words_[w] &= ~mask;
    trim();
  }
}

int Gf2Poly::weight() const noexcept {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  const int deg = degree();
  for (int d = 0; d <= deg; ++d) {
    if (!coeff(d)) continue;
    if (!out.empty()) out += '+';
    if (d == 0) {
      out += '1';
    } else if (d == 1) {
      out += 'x';
    } else {
      out += "x^" + std::to_string(d);
    }
  }
  return out;
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
  trim();
  return *this;
}

void Gf2Poly::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

namespace detail {

void clmul_accumulate(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                      const Gf2Poly& poly) {
  const auto pw = poly.words();
  for (std::size_t pwi = 0; pwi < pw.size(); ++pwi) {
    std::uint64_t bits = pw[pwi];
    while (bits != 0) {
      const auto d = pwi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      const std::size_t word_shift = d >> 6;
      const unsigned bit_shift = d & 63;
      if (bit_shift == 0) {
        for (std::size_t i = 0; i < src.size() && i + word_shift < dst.size(); ++i) {
          dst[i + word_shift] ^= src[i];
        }
      } else {
        std::uint64_t carry = 0;
        std::size_t i = 0;
        for (; i < src.size() && i + word_shift < dst.size(); ++i) {
          dst[i + word_shift] ^= (src[i] << bit_shift) | carry;
          carry = src[i] >> (64 - bit_shift);
        }
        if (i + word_shift < dst.size()) dst[i + word_shift] ^= carry;
      }
    }
  }
}

}  // namespace detail

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int deg = a.degree() + b.degree();
  if (deg > Gf2Poly::kMaxDegree) {
    throw Error(ErrorKind::Precondition, "product degree exceeds polynomial cap");
  }
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(deg) / 64 + 1, 0);
  detail::clmul_accumulate(acc, a.words(), b);
  return Gf2Poly::from_words(std::move(acc));
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string bits_to_nibble_hex(const BitStream& bits) {
  std::string out((bits.size() + 3) / 4, '0');
  for (std::size_t n = 0; n < out.size(); ++n) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = n * 4 + b;
      v = (v << 1) | ((i < bits.size() && bits.get(i)) ? 1U : 0U);
    }
    out[n] = kHexDigits[v];
  }
  return out;
}

BitStream nibble_hex_to_bits(std::string_view text, std::size_t bit_len) {
  for (char c : text) {
    if (hex_value(c) < 0) {
      throw Error(ErrorKind::MalformedPayload, "non-hex character in payload");
    }
  }
  if (bit_len > text.size() * 4) {
    throw Error(ErrorKind::LengthMismatch, "bit length exceeds hex payload");
  }
  BitStream out(bit_len);
  auto words = out.words();
  const std::size_t digits = (bit_len + 3) / 4;
  for (std::size_t d = 0; d < digits; ++d) {
    // Four bits, first-transmitted in the digit's most significant position.
    const auto v = static_cast<std::uint64_t>(hex_value(text[d]));
    const std::uint64_t rev = ((v >> 3) & 1U) | ((v >> 1) & 2U) | ((v << 1) & 4U) | ((v << 3) & 8U);
    const std::size_t pos = d * 4;
    words[pos >> 6] |= rev << (pos & 63);
  }
  if (bit_len % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (bit_len % 64)) - 1;
  return out;
}

}  // namespace perseus
