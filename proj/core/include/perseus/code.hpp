#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "perseus/gf2.hpp"

namespace perseus {

/// Feedforward (n, k, mem) convolutional encoder. Polynomial (i, j) maps input
/// stream i onto output stream j; storage is row-major k x n.
class ConvCode {
 public:
  /// Strict: 1 <= k < n. Unit also admits k == n, which equivalent codes of
  /// heavily punctured encoders can reach.
  enum class RateCheck { Strict, AllowUnit };

  /// Validates dimensions, degree bound and non-empty input rows; throws
  /// InvalidParams on violation.
  static ConvCode make(int k, int n, int mem, std::vector<Gf2Poly> polys,
                       RateCheck check = RateCheck::Strict);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  int mem() const noexcept { return mem_; }
  double rate() const noexcept { return static_cast<double>(k_) / n_; }

  const Gf2Poly& poly(int i, int j) const noexcept {
    return polys_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::span<const Gf2Poly> polys() const noexcept { return polys_; }

  /// Trellis sections emitted for a message of msg_bits (a multiple of k),
  /// including the mem flush sections.
  std::size_t sections_for(std::size_t msg_bits) const noexcept {
    return msg_bits / static_cast<std::size_t>(k_) + static_cast<std::size_t>(mem_);
  }

  friend bool operator==(const ConvCode&, const ConvCode&) = default;

 private:
  ConvCode() = default;

  int k_ = 0;
  int n_ = 0;
  int mem_ = 0;
  std::vector<Gf2Poly> polys_;
};

/// Base encoder plus an n x M puncturing matrix (row-major, entries 0/1).
class PuncturedCode {
 public:
  /// Throws InvalidParams unless the matrix is n x width, has no all-zero
  /// column and keeps at least k * width symbols per period.
  static PuncturedCode make(ConvCode base, int width, std::vector<std::uint8_t> pmatrix);

  /// All-ones pattern of width 1 (no symbol deleted).
  static PuncturedCode unpunctured(ConvCode base);

  const ConvCode& base() const noexcept { return base_; }
  int width() const noexcept { return width_; }
  int weight() const noexcept { return weight_; }

  bool keeps(int output, int column) const noexcept {
    return pmatrix_[static_cast<std::size_t>(output) * width_ + column] != 0;
  }
  std::span<const std::uint8_t> pmatrix() const noexcept { return pmatrix_; }

  /// Number of kept symbols in column `column`.
  int column_weight(int column) const noexcept { return column_weight_[column]; }

  /// Transmitted symbols for `sections` trellis sections.
  std::size_t punctured_length(std::size_t sections) const noexcept;

  /// Exact transmitted bit count for a message of msg_bits (multiple of k).
  std::size_t coded_bits_for(std::size_t msg_bits) const noexcept {
    return punctured_length(base_.sections_for(msg_bits));
  }

  friend bool operator==(const PuncturedCode& a, const PuncturedCode& b) {
    return a.base_ == b.base_ && a.width_ == b.width_ && a.pmatrix_ == b.pmatrix_;
  }

 private:
  explicit PuncturedCode(ConvCode base) : base_(std::move(base)) {}

  ConvCode base_;
  int width_ = 0;
  int weight_ = 0;
  std::vector<std::uint8_t> pmatrix_;
  std::vector<int> column_weight_;
};

/// Interleaved n-stream sequence in which some symbols are marked erased.
class ErasureStream {
 public:
  ErasureStream(int n, std::size_t sections)
      : n_(n), sections_(sections), values_(static_cast<std::size_t>(n) * sections),
        known_(static_cast<std::size_t>(n) * sections) {}
  /// Takes prebuilt value and mask streams, both n * sections bits long.
  ErasureStream(int n, std::size_t sections, BitStream values, BitStream known)
      : n_(n), sections_(sections), values_(std::move(values)), known_(std::move(known)) {}

  int n() const noexcept { return n_; }
  std::size_t sections() const noexcept { return sections_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool erased(std::size_t i) const noexcept { return !known_.get(i); }
  bool value(std::size_t i) const noexcept { return values_.get(i); }
  void set_known(std::size_t i, bool value) noexcept {
    known_.set(i, true);
    values_.set(i, value);
  }
  std::size_t erasure_count() const noexcept { return size() - known_.count(); }

  const BitStream& values() const noexcept { return values_; }
  const BitStream& known() const noexcept { return known_; }

 private:
  int n_;
  std::size_t sections_;
  BitStream values_;
  BitStream known_;
};

/// Zero-tail terminated encoding: the message is split round-robin into k
/// streams, each flushed with mem zeros, and the n outputs are interleaved
/// section by section. Throws Precondition if the length is not a multiple of k.
BitStream encode(const ConvCode& code, const BitStream& message);

/// Drops output i of section s when P[i][s mod M] is zero.
BitStream puncture(const PuncturedCode& pc, const BitStream& coded);

/// Restores the full n-stream layout with erasures at deleted positions.
/// Throws LengthMismatch if no section count produces this length.
ErasureStream unpuncture(const PuncturedCode& pc, const BitStream& received);

}  // namespace perseus
