#include "perseus/session.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "perseus/decode.hpp"
#include "perseus/error.hpp"
#include "perseus/gf2.hpp"

namespace perseus {
namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint16_t u16() {
    const auto lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    return lo | (static_cast<std::uint32_t>(u16()) << 16);
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorKind::Format, "truncated parameter blob");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t off = 0;
  while (off < data.size()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(data.size() - off, 1U << 30));
    crc = crc32(crc, data.data() + off, n);
    off += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::size_t poly_bytes(int mem) { return static_cast<std::size_t>(mem + 1 + 7) / 8; }

// Packs bits[0..count) MSB-first.
std::vector<std::uint8_t> pack_msb(const std::vector<bool>& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

bool unpack_bit(std::span<const std::uint8_t> bytes, std::size_t i) {
  return ((bytes[i / 8] >> (7 - i % 8)) & 1U) != 0;
}

BitStream bytes_to_message(std::span<const std::uint8_t> chunk, std::size_t k) {
  BitStream bits = BitStream::from_bytes(chunk);
  bits.resize((bits.size() + k - 1) / k * k);
  return bits;
}

}  // namespace

void SessionParams::validate() const {
  key.validate();
  if (noise.proba < 1 || noise.proba > 49) {
    throw Error(ErrorKind::InvalidParams, "noise probability outside [1,49] percent");
  }
  if (noise.degenerate()) {
    throw Error(ErrorKind::InvalidParams, "noise filter table is constant");
  }
  const auto& b = code.base();
  if (b.n() > 255 || b.mem() > 0xFFFF || code.width() > 0xFFFF) {
    throw Error(ErrorKind::InvalidParams, "code dimensions exceed blob field widths");
  }
}

std::size_t params_blob_size(int k, int n, int mem, int width) {
  return 30 + static_cast<std::size_t>(k) * static_cast<std::size_t>(n) * poly_bytes(mem) +
         (static_cast<std::size_t>(n) * static_cast<std::size_t>(width) + 7) / 8 + 4;
}

std::vector<std::uint8_t> serialize_params(const SessionParams& sp) {
  sp.validate();
  const auto& base = sp.code.base();
  Writer w;
  for (char c : kParamsMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(kParamsVersion);
  w.u8(static_cast<std::uint8_t>(base.k()));
  w.u8(static_cast<std::uint8_t>(base.n()));
  w.u16(static_cast<std::uint16_t>(base.mem()));
  w.u16(static_cast<std::uint16_t>(sp.code.width()));
  w.u8(static_cast<std::uint8_t>(sp.noise.proba));
  w.u16(sp.noise.bf);
  for (auto v : sp.key.init) w.u32(v);

  const std::size_t pbytes = poly_bytes(base.mem());
  for (const auto& p : base.polys()) {
    std::vector<bool> bits(pbytes * 8, false);
    for (int d = 0; d <= p.degree(); ++d) bits[static_cast<std::size_t>(d)] = p.coeff(d);
    w.bytes(pack_msb(bits));
  }
  std::vector<bool> pm(sp.code.pmatrix().begin(), sp.code.pmatrix().end());
  w.bytes(pack_msb(pm));

  w.u32(crc32_of(w.data()));
  return std::move(w.data());
}

SessionParams deserialize_params(std::span<const std::uint8_t> blob) {
  Reader r(blob);
  const auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kParamsMagic),
                  [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); })) {
    throw Error(ErrorKind::Format, "bad parameter blob magic");
  }
  if (const auto version = r.u8(); version != kParamsVersion) {
    throw Error(ErrorKind::Format, "unsupported parameter blob version " + std::to_string(version));
  }
  const int k = r.u8();
  const int n = r.u8();
  const int mem = r.u16();
  const int width = r.u16();
  if (blob.size() != params_blob_size(k, n, mem, width)) {
    throw Error(ErrorKind::Format, "parameter blob size does not match its header");
  }
  const auto crc_stored =
      static_cast<std::uint32_t>(blob[blob.size() - 4]) | (static_cast<std::uint32_t>(blob[blob.size() - 3]) << 8) |
      (static_cast<std::uint32_t>(blob[blob.size() - 2]) << 16) |
      (static_cast<std::uint32_t>(blob[blob.size() - 1]) << 24);
  if (crc32_of(blob.first(blob.size() - 4)) != crc_stored) {
    throw Error(ErrorKind::Corruption, "parameter blob CRC mismatch");
  }

  NoiseConfig noise;
  noise.proba = r.u8();
  noise.bf = r.u16();
  NoiseKey key;
  for (auto& v : key.init) v = r.u32();

  const std::size_t pbytes = poly_bytes(mem);
  std::vector<Gf2Poly> polys;
  polys.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
  for (int e = 0; e < k * n; ++e) {
    const auto bytes = r.bytes(pbytes);
    Gf2Poly p;
    for (std::size_t d = 0; d < pbytes * 8; ++d) {
      if (unpack_bit(bytes, d)) {
        if (d > static_cast<std::size_t>(mem)) {
          throw Error(ErrorKind::InvalidParams, "polynomial coefficient beyond encoder memory");
        }
        p.set_coeff(static_cast<int>(d), true);
      }
    }
    polys.push_back(std::move(p));
  }
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(width);
  const auto pm_bytes = r.bytes((cells + 7) / 8);
  std::vector<std::uint8_t> pmatrix(cells);
  for (std::size_t i = 0; i < cells; ++i) pmatrix[i] = unpack_bit(pm_bytes, i) ? 1 : 0;
  for (std::size_t i = cells; i < pm_bytes.size() * 8; ++i) {
    if (unpack_bit(pm_bytes, i)) throw Error(ErrorKind::InvalidParams, "nonzero puncturing padding bits");
  }

  auto base = ConvCode::make(k, n, mem, std::move(polys));
  SessionParams sp{PuncturedCode::make(std::move(base), width, std::move(pmatrix)), key, noise};
  sp.validate();
  return sp;
}

// ---------------------------------------------------------------------------

BitStream Frame::payload_bits() const {
  if (mode == PayloadMode::Hex) {
    return nibble_hex_to_bits(
        std::string_view(reinterpret_cast<const char*>(payload.data()), payload.size()), coded_bit_len);
  }
  return BitStream::from_packed(payload, coded_bit_len);
}

std::size_t expected_coded_bits(const PuncturedCode& code, std::size_t plain_len_bytes) {
  const auto k = static_cast<std::size_t>(code.base().k());
  return code.coded_bits_for((plain_len_bytes * 8 + k - 1) / k * k);
}

std::vector<Frame> protect(const SessionParams& sp, std::span<const std::uint8_t> data,
                           std::size_t chunk_bytes, PayloadMode mode) {
  if (chunk_bytes == 0) throw Error(ErrorKind::Precondition, "chunk size must be positive");
  const auto k = static_cast<std::size_t>(sp.code.base().k());
  NoiseGenerator gen(sp.key, sp.noise);
  std::vector<Frame> frames;
  for (std::size_t off = 0, index = 0; off < data.size(); off += chunk_bytes, ++index) {
    const auto chunk = data.subspan(off, std::min(chunk_bytes, data.size() - off));
    BitStream bits = puncture(sp.code, encode(sp.code.base(), bytes_to_message(chunk, k)));
    gen.apply(bits);

    Frame f;
    f.chunk_index = static_cast<std::uint32_t>(index);
    f.plain_len_bytes = static_cast<std::uint32_t>(chunk.size());
    f.coded_bit_len = static_cast<std::uint32_t>(bits.size());
    f.mode = mode;
    if (mode == PayloadMode::Hex) {
      const auto text = bits_to_nibble_hex(bits);
      f.payload.assign(text.begin(), text.end());
    } else {
      f.payload = bits.to_bytes();
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<std::uint8_t> unprotect(const SessionParams& sp, std::span<const Frame> frames) {
  const auto k = static_cast<std::size_t>(sp.code.base().k());
  NoiseGenerator gen(sp.key, sp.noise);
  std::vector<std::uint8_t> out;
  for (std::size_t index = 0; index < frames.size(); ++index) {
    const auto& f = frames[index];
    if (f.chunk_index != index) {
      throw Error(ErrorKind::Sequence, "expected chunk " + std::to_string(index) + ", found chunk " +
                                           std::to_string(f.chunk_index))
          .with_chunk(index);
    }
    try {
      const std::size_t msg_bits = (static_cast<std::size_t>(f.plain_len_bytes) * 8 + k - 1) / k * k;
      if (f.coded_bit_len != sp.code.coded_bits_for(msg_bits)) {
        throw Error(ErrorKind::Integrity, "coded length does not match this encoder");
      }
      BitStream bits = f.payload_bits();
      gen.apply(bits);
      auto report = decode_linear(sp.code, unpuncture(sp.code, bits), msg_bits);
      for (std::size_t i = static_cast<std::size_t>(f.plain_len_bytes) * 8; i < msg_bits; ++i) {
        if (report.message.get(i)) throw Error(ErrorKind::Integrity, "nonzero message padding");
      }
      report.message.resize(static_cast<std::size_t>(f.plain_len_bytes) * 8);
      const auto bytes = report.message.to_bytes();
      out.insert(out.end(), bytes.begin(), bytes.end());
    } catch (Error& e) {
      Error tagged(e.kind(), "chunk " + std::to_string(index) + ": " + e.what());
      tagged.with_chunk(index).with_rank_deficit(e.rank_deficit());
      throw tagged;
    }
  }
  return out;
}

std::vector<std::uint8_t> write_frames(std::span<const Frame> frames) {
  Writer w;
  for (const auto& f : frames) {
    w.u8(static_cast<std::uint8_t>(kFrameVersion | (f.mode == PayloadMode::Binary ? kFrameBinaryFlag : 0)));
    w.u32(f.chunk_index);
    w.u32(f.plain_len_bytes);
    w.u32(f.coded_bit_len);
    w.bytes(f.payload);
  }
  return std::move(w.data());
}

std::vector<Frame> read_frames(std::span<const std::uint8_t> container) {
  std::vector<Frame> frames;
  std::size_t pos = 0;
  auto le32 = [&](std::size_t at) {
    return static_cast<std::uint32_t>(container[at]) | (static_cast<std::uint32_t>(container[at + 1]) << 8) |
           (static_cast<std::uint32_t>(container[at + 2]) << 16) |
           (static_cast<std::uint32_t>(container[at + 3]) << 24);
  };
  while (pos < container.size()) {
    if (container.size() - pos < kFrameHeaderSize) {
      throw Error(ErrorKind::Sequence, "container ends inside a frame header").with_chunk(frames.size());
    }
    const std::uint8_t version = container[pos];
    if ((version & ~kFrameBinaryFlag) != kFrameVersion) {
      throw Error(ErrorKind::Format, "unknown frame version " + std::to_string(version)).with_chunk(frames.size());
    }
    Frame f;
    f.mode = (version & kFrameBinaryFlag) != 0 ? PayloadMode::Binary : PayloadMode::Hex;
    f.chunk_index = le32(pos + 1);
    f.plain_len_bytes = le32(pos + 5);
    f.coded_bit_len = le32(pos + 9);
    pos += kFrameHeaderSize;
    const std::size_t len = f.mode == PayloadMode::Hex ? (static_cast<std::size_t>(f.coded_bit_len) + 3) / 4
                                                       : (static_cast<std::size_t>(f.coded_bit_len) + 7) / 8;
    if (container.size() - pos < len) {
      throw Error(ErrorKind::Sequence, "container ends inside chunk " + std::to_string(f.chunk_index))
          .with_chunk(frames.size());
    }
    f.payload.assign(container.begin() + static_cast<std::ptrdiff_t>(pos),
                     container.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace perseus
