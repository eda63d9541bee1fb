#include "perseus/code.hpp"

#include <string>
#include <utility>
#include <vector>

#include "perseus/error.hpp"

namespace perseus {

ConvCode ConvCode::make(int k, int n, int mem, std::vector<Gf2Poly> polys, RateCheck check) {
  if (k < 1 || n < 1 || (check == RateCheck::Strict ? k >= n : k > n)) {
    throw Error(ErrorKind::InvalidParams,
                "invalid code dimensions k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  if (mem < 0 || mem > Gf2Poly::kMaxDegree) {
    throw Error(ErrorKind::InvalidParams, "encoder memory out of range");
  }
  if (polys.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::InvalidParams, "polynomial matrix must be k x n");
  }
  for (int i = 0; i < k; ++i) {
    bool row_nonzero = false;
    for (int j = 0; j < n; ++j) {
      const auto& p = polys[static_cast<std::size_t>(i) * n + j];
      if (p.degree() > mem) {
        throw Error(ErrorKind::InvalidParams, "polynomial degree exceeds encoder memory");
      }
      row_nonzero = row_nonzero || !p.is_zero();
    }
    if (!row_nonzero) {
      throw Error(ErrorKind::InvalidParams, "input row " + std::to_string(i) + " is all-zero");
    }
  }
  ConvCode code;
  code.k_ = k;
  code.n_ = n;
  code.mem_ = mem;
  code.polys_ = std::move(polys);
  return code;
}

PuncturedCode PuncturedCode::make(ConvCode base, int width, std::vector<std::uint8_t> pmatrix) {
  const int n = base.n();
  if (width < 1 || pmatrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::InvalidParams, "puncturing matrix must be n x width");
  }
  PuncturedCode pc(std::move(base));
  pc.width_ = width;
  pc.column_weight_.assign(static_cast<std::size_t>(width), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < width; ++j) {
      auto& e = pmatrix[static_cast<std::size_t>(i) * width + j];
      if (e > 1) throw Error(ErrorKind::InvalidParams, "puncturing entries must be 0 or 1");
      pc.column_weight_[static_cast<std::size_t>(j)] += e;
      pc.weight_ += e;
    }
  }
  for (int j = 0; j < width; ++j) {
    if (pc.column_weight_[static_cast<std::size_t>(j)] == 0) {
      throw Error(ErrorKind::InvalidParams, "puncturing column " + std::to_string(j) + " is all-zero");
    }
  }
  if (pc.weight_ < pc.base_.k() * width) {
    throw Error(ErrorKind::InvalidParams, "punctured rate exceeds 1");
  }
  pc.pmatrix_ = std::move(pmatrix);
  return pc;
}

PuncturedCode PuncturedCode::unpunctured(ConvCode base) {
  const auto n = static_cast<std::size_t>(base.n());
  return make(std::move(base), 1, std::vector<std::uint8_t>(n, 1));
}

std::size_t PuncturedCode::punctured_length(std::size_t sections) const noexcept {
  const auto m = static_cast<std::size_t>(width_);
  std::size_t total = (sections / m) * static_cast<std::size_t>(weight_);
  for (std::size_t c = 0; c < sections % m; ++c) {
    total += static_cast<std::size_t>(column_weight_[c]);
  }
  return total;
}

BitStream encode(const ConvCode& code, const BitStream& message) {
  const auto k = static_cast<std::size_t>(code.k());
  const auto n = static_cast<std::size_t>(code.n());
  if (message.size() % k != 0) {
    throw Error(ErrorKind::Precondition, "message length is not a multiple of k");
  }
  const std::size_t steps = message.size() / k;
  const std::size_t sections = code.sections_for(message.size());
  const std::size_t in_words = (steps + 63) / 64;
  const std::size_t out_words = (sections + 63) / 64;

  std::vector<std::vector<std::uint64_t>> inputs(k, std::vector<std::uint64_t>(in_words, 0));
  const auto msg = message.words();
  std::size_t pos = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t i = 0; i < k; ++i, ++pos) {
      inputs[i][t >> 6] |= ((msg[pos >> 6] >> (pos & 63)) & 1U) << (t & 63);
    }
  }

  std::vector<std::vector<std::uint64_t>> outputs(n, std::vector<std::uint64_t>(out_words, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      detail::clmul_accumulate(outputs[j], inputs[i],
                               code.poly(static_cast<int>(i), static_cast<int>(j)));
    }
  }

  BitStream out(sections * n);
  auto words = out.words();
  pos = 0;
  for (std::size_t t = 0; t < sections; ++t) {
    for (std::size_t j = 0; j < n; ++j, ++pos) {
      words[pos >> 6] |= ((outputs[j][t >> 6] >> (t & 63)) & 1U) << (pos & 63);
    }
  }
  return out;
}

namespace {

// Rows kept in each puncturing column, in transmission order.
std::vector<std::vector<std::size_t>> kept_rows(const PuncturedCode& pc) {
  std::vector<std::vector<std::size_t>> kept(static_cast<std::size_t>(pc.width()));
  for (int c = 0; c < pc.width(); ++c) {
    for (int i = 0; i < pc.base().n(); ++i) {
      if (pc.keeps(i, c)) kept[static_cast<std::size_t>(c)].push_back(static_cast<std::size_t>(i));
    }
  }
  return kept;
}

}  // namespace

BitStream puncture(const PuncturedCode& pc, const BitStream& coded) {
  const auto n = static_cast<std::size_t>(pc.base().n());
  if (coded.size() % n != 0) {
    throw Error(ErrorKind::Precondition, "coded length is not a multiple of n");
  }
  const std::size_t sections = coded.size() / n;
  const auto m = static_cast<std::size_t>(pc.width());
  const auto kept = kept_rows(pc);
  BitStream out(pc.punctured_length(sections));
  const auto in = coded.words();
  auto dst = out.words();
  std::size_t pos = 0;
  for (std::size_t s = 0; s < sections; ++s) {
    for (const std::size_t i : kept[s % m]) {
      const std::size_t src = s * n + i;
      dst[pos >> 6] |= ((in[src >> 6] >> (src & 63)) & 1U) << (pos & 63);
      ++pos;
    }
  }
  return out;
}

ErasureStream unpuncture(const PuncturedCode& pc, const BitStream& received) {
  const auto n = static_cast<std::size_t>(pc.base().n());
  const auto m = static_cast<std::size_t>(pc.width());
  const auto period = static_cast<std::size_t>(pc.weight());

  std::size_t sections = (received.size() / period) * m;
  std::size_t rest = received.size() % period;
  for (std::size_t c = 0; rest > 0; ++c) {
    const auto w = static_cast<std::size_t>(pc.column_weight(static_cast<int>(c)));
    if (w > rest) {
      throw Error(ErrorKind::LengthMismatch, "received length does not fit the puncturing pattern");
    }
    rest -= w;
    ++sections;
  }

  const auto kept = kept_rows(pc);
  BitStream values(n * sections);
  BitStream known(n * sections);
  const auto in = received.words();
  auto vw = values.words();
  auto kw = known.words();
  std::size_t pos = 0;
  for (std::size_t s = 0; s < sections; ++s) {
    for (const std::size_t i : kept[s % m]) {
      const std::size_t dst = s * n + i;
      vw[dst >> 6] |= ((in[pos >> 6] >> (pos & 63)) & 1U) << (dst & 63);
      kw[dst >> 6] |= std::uint64_t{1} << (dst & 63);
      ++pos;
    }
  }
  return ErasureStream(static_cast<int>(n), sections, std::move(values), std::move(known));
}

}  // namespace perseus
