#include "perseus/decode.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "perseus/error.hpp"

namespace perseus {
namespace {

// Incremental GF(2) elimination over rows whose support stays inside a sliding
// window of `window` columns. A pivot row is stored from word floor(pivot/64)
// on, `stride` words long, so XORing it into a work row never needs bit shifts.
class BandedEliminator {
 public:
  BandedEliminator(std::size_t unknowns, std::size_t window)
      : unknowns_(unknowns),
        stride_((window + 63) / 64 + 1),
        rows_(unknowns * stride_, 0),
        has_pivot_(unknowns, 0),
        rhs_(unknowns, 0),
        work_(2 * stride_, 0) {}

  void begin_row(std::size_t lowest_col) {
    base_ = lowest_col / 64;
    std::fill(work_.begin(), work_.end(), 0);
  }

  void toggle(std::size_t col) { work_[col / 64 - base_] ^= std::uint64_t{1} << (col & 63); }

  // Reduces the work row and stores it as a new pivot if independent.
  // Returns false when the row reduces to 0 = 1.
  bool commit(bool rhs) {
    std::uint8_t r = rhs ? 1 : 0;
    for (std::size_t w = 0; w < work_.size(); ++w) {
      while (work_[w] != 0) {
        const std::size_t col = (base_ + w) * 64 + static_cast<std::size_t>(std::countr_zero(work_[w]));
        if (has_pivot_[col] == 0) {
          std::uint64_t* dst = &rows_[col * stride_];
          const std::size_t n = std::min(stride_, work_.size() - w);
          std::copy_n(&work_[w], n, dst);
          has_pivot_[col] = 1;
          rhs_[col] = r;
          ++rank_;
          while (first_free_ < unknowns_ && has_pivot_[first_free_] != 0) ++first_free_;
          return true;
        }
        const std::uint64_t* src = &rows_[col * stride_];
        const std::size_t n = std::min(stride_, work_.size() - w);
        for (std::size_t x = 0; x < n; ++x) work_[w + x] ^= src[x];
        r ^= rhs_[col];
      }
    }
    return r == 0;
  }

  std::size_t rank_deficit() const noexcept { return unknowns_ - rank_; }

  // Every column below this one already has a pivot.
  std::size_t first_free() const noexcept { return first_free_; }

  BitStream solve() const {
    BitStream x(unknowns_);
    auto xw = x.words();
    for (std::size_t c = unknowns_; c-- > 0;) {
      const std::uint64_t* row = &rows_[c * stride_];
      const std::size_t base = c / 64;
      unsigned parity = rhs_[c];
      for (std::size_t w = 0; w < stride_ && base + w < xw.size(); ++w) {
        parity ^= static_cast<unsigned>(std::popcount(row[w] & xw[base + w])) & 1U;
      }
      if (parity != 0) xw[base] |= std::uint64_t{1} << (c & 63);
    }
    return x;
  }

 private:
  std::size_t unknowns_;
  std::size_t stride_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint8_t> has_pivot_;
  std::vector<std::uint8_t> rhs_;
  std::vector<std::uint64_t> work_;
  std::size_t base_ = 0;
  std::size_t rank_ = 0;
  std::size_t first_free_ = 0;
};

struct Tap {
  std::size_t input;
  std::size_t delay;
};

// taps[j] lists every (input, delay) with a nonzero coefficient in column j.
std::vector<std::vector<Tap>> collect_taps(const ConvCode& code) {
  std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(code.n()));
  for (int j = 0; j < code.n(); ++j) {
    for (int i = 0; i < code.k(); ++i) {
      const auto& p = code.poly(i, j);
      for (int d = 0; d <= p.degree(); ++d) {
        if (p.coeff(d)) {
          taps[static_cast<std::size_t>(j)].push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(d)});
        }
      }
    }
  }
  return taps;
}

void check_geometry(const PuncturedCode& pc, const ErasureStream& es, std::size_t msg_bits) {
  const auto& code = pc.base();
  if (msg_bits % static_cast<std::size_t>(code.k()) != 0) {
    throw Error(ErrorKind::Precondition, "message length is not a multiple of k");
  }
  if (es.n() != code.n() || es.sections() != code.sections_for(msg_bits)) {
    throw Error(ErrorKind::LengthMismatch,
                "received geometry does not match a " + std::to_string(msg_bits) + "-bit message");
  }
}

// Feeds every kept symbol of the transmission as an equation. `value(pos)`
// supplies the right-hand side. Returns false on the first contradiction.
//
// With `skip_spanned`, an equation whose columns all already carry pivots is
// dropped unreduced. That usually only loses a consistency check, but the
// caller must verify the solution and fall back to a full pass on rank loss.
template <typename ValueFn, typename KeptFn>
bool eliminate(const ConvCode& code, std::size_t msg_bits, BandedEliminator& elim, bool skip_spanned,
               KeptFn kept, ValueFn value) {
  const auto k = static_cast<std::size_t>(code.k());
  const auto n = static_cast<std::size_t>(code.n());
  const auto mem = static_cast<std::size_t>(code.mem());
  const std::size_t steps = msg_bits / k;
  const std::size_t sections = steps + mem;
  const auto taps = collect_taps(code);
  // Smallest delay per output column; bounds the newest unknown an equation touches.
  std::vector<std::size_t> min_delay(n, mem);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& tap : taps[j]) min_delay[j] = std::min(min_delay[j], tap.delay);
  }

  for (std::size_t t = 0; t < sections; ++t) {
    const std::size_t oldest = t >= mem ? t - mem : 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t pos = t * n + j;
      if (!kept(pos)) continue;
      if (skip_spanned) {
        const std::size_t newest = t >= min_delay[j] ? std::min(t - min_delay[j] + 1, steps) : 0;
        if (elim.first_free() >= newest * k) continue;
      }
      elim.begin_row(oldest * k);
      for (const auto& tap : taps[j]) {
        if (tap.delay > t || t - tap.delay >= steps) continue;
        elim.toggle((t - tap.delay) * k + tap.input);
      }
      if (!elim.commit(value(pos))) return false;
    }
  }
  return true;
}

}  // namespace

DecodeReport decode_linear(const PuncturedCode& pc, const ErasureStream& es, std::size_t msg_bits) {
  check_geometry(pc, es, msg_bits);
  const auto& code = pc.base();
  const auto window = static_cast<std::size_t>(code.k()) * static_cast<std::size_t>(code.mem() + 1);
  auto kept = [&](std::size_t pos) { return !es.erased(pos); };
  auto value = [&](std::size_t pos) { return es.value(pos); };

  // Fast path: solve from a spanning subset, then check every received symbol
  // against the re-encoded solution. A full-rank subset pins the only candidate.
  {
    BandedEliminator fast(msg_bits, window);
    if (!eliminate(code, msg_bits, fast, true, kept, value)) {
      throw Error(ErrorKind::Integrity, "received symbols are not a codeword");
    }
    if (fast.rank_deficit() == 0) {
      auto message = fast.solve();
      const auto cw = encode(code, message);
      const auto cws = cw.words();
      const auto vs = es.values().words();
      const auto ks = es.known().words();
      for (std::size_t w = 0; w < cws.size(); ++w) {
        if (((cws[w] ^ vs[w]) & ks[w]) != 0) {
          throw Error(ErrorKind::Integrity, "received symbols are not a codeword");
        }
      }
      return {std::move(message), 0, DecodeMethod::Linear};
    }
  }

  // Slow path decides between contradiction and ambiguity with every equation.
  BandedEliminator elim(msg_bits, window);
  const bool consistent = eliminate(code, msg_bits, elim, false, kept, value);
  if (!consistent) {
    throw Error(ErrorKind::Integrity, "received symbols are not a codeword");
  }
  if (elim.rank_deficit() > 0) {
    throw Error(ErrorKind::AmbiguousDecode,
                "message not uniquely determined (rank deficit " +
                    std::to_string(elim.rank_deficit()) + ")")
        .with_rank_deficit(elim.rank_deficit());
  }
  return {elim.solve(), 0, DecodeMethod::Linear};
}

std::size_t linear_rank_deficit(const PuncturedCode& pc, std::size_t msg_bits) {
  const auto& code = pc.base();
  if (msg_bits % static_cast<std::size_t>(code.k()) != 0) {
    throw Error(ErrorKind::Precondition, "message length is not a multiple of k");
  }
  const auto n = static_cast<std::size_t>(code.n());
  const auto m = static_cast<std::size_t>(pc.width());
  const auto window = static_cast<std::size_t>(code.k()) * static_cast<std::size_t>(code.mem() + 1);
  auto kept = [&](std::size_t pos) {
    return pc.keeps(static_cast<int>(pos % n), static_cast<int>((pos / n) % m));
  };
  auto zero = [](std::size_t) { return false; };
  BandedEliminator fast(msg_bits, window);
  eliminate(code, msg_bits, fast, true, kept, zero);
  if (fast.rank_deficit() == 0) return 0;
  BandedEliminator elim(msg_bits, window);
  eliminate(code, msg_bits, elim, false, kept, zero);
  return elim.rank_deficit();
}

DecodeReport decode_viterbi(const PuncturedCode& pc, const ErasureStream& es, std::size_t msg_bits) {
  const auto& code = pc.base();
  const int k = code.k();
  const int n = code.n();
  const int mem = code.mem();
  if (k * mem > 16 || n > 64 || k > 8) {
    throw Error(ErrorKind::ParamsTooLarge,
                "trellis too large for Viterbi decoding (k*mem=" + std::to_string(k * mem) +
                    "); use decode_linear");
  }
  check_geometry(pc, es, msg_bits);

  const int state_bits = k * mem;
  const std::size_t states = std::size_t{1} << state_bits;
  const std::uint32_t inputs = 1U << k;
  const std::uint32_t seg_mask = mem == 0 ? 0 : (1U << mem) - 1;
  const std::size_t steps = msg_bits / static_cast<std::size_t>(k);
  const std::size_t sections = es.sections();

  // State layout: stream i owns bits [i*mem, (i+1)*mem); bit i*mem + d - 1
  // holds that stream's input from d sections ago.
  std::vector<std::uint64_t> state_out(states, 0);
  std::vector<std::uint64_t> input_out(inputs, 0);
  for (int j = 0; j < n; ++j) {
    std::uint32_t smask = 0;
    std::uint32_t imask = 0;
    for (int i = 0; i < k; ++i) {
      const auto& p = code.poly(i, j);
      if (p.coeff(0)) imask |= 1U << i;
      for (int d = 1; d <= mem; ++d) {
        if (p.coeff(d)) smask |= 1U << (i * mem + d - 1);
      }
    }
    for (std::size_t s = 0; s < states; ++s) {
      if (std::popcount(static_cast<std::uint32_t>(s) & smask) & 1) state_out[s] |= std::uint64_t{1} << j;
    }
    for (std::uint32_t u = 0; u < inputs; ++u) {
      if (std::popcount(u & imask) & 1) input_out[u] |= std::uint64_t{1} << j;
    }
  }

  auto next_state = [&](std::uint32_t s, std::uint32_t u) {
    if (mem == 0) return std::uint32_t{0};
    std::uint32_t ns = 0;
    for (int i = 0; i < k; ++i) {
      const std::uint32_t seg = (s >> (i * mem)) & seg_mask;
      ns |= (((seg << 1) | ((u >> i) & 1U)) & seg_mask) << (i * mem);
    }
    return ns;
  };

  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> metric(states, kInf);
  std::vector<std::uint32_t> next_metric(states, kInf);
  std::vector<std::uint64_t> best_key(states);
  metric[0] = 0;
  // Per section and state: the bits shifted out (mem > 0) or the input (mem == 0).
  std::vector<std::uint8_t> decisions(sections * states, 0);

  for (std::size_t t = 0; t < sections; ++t) {
    std::uint64_t rx = 0;
    std::uint64_t known = 0;
    for (int j = 0; j < n; ++j) {
      const std::size_t pos = t * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
      if (!es.erased(pos)) {
        known |= std::uint64_t{1} << j;
        if (es.value(pos)) rx |= std::uint64_t{1} << j;
      }
    }
    const std::uint32_t input_count = t < steps ? inputs : 1;
    std::fill(next_metric.begin(), next_metric.end(), kInf);
    for (std::size_t s = 0; s < states; ++s) {
      if (metric[s] == kInf) continue;
      for (std::uint32_t u = 0; u < input_count; ++u) {
        const std::uint64_t out = state_out[s] ^ input_out[u];
        const auto m = metric[s] + static_cast<std::uint32_t>(std::popcount((out ^ rx) & known));
        const std::uint32_t ns = next_state(static_cast<std::uint32_t>(s), u);
        const std::uint64_t key = (static_cast<std::uint64_t>(s) << 8) | u;
        if (m < next_metric[ns] || (m == next_metric[ns] && key < best_key[ns])) {
          next_metric[ns] = m;
          best_key[ns] = key;
          std::uint8_t decision = 0;
          if (mem == 0) {
            decision = static_cast<std::uint8_t>(u);
          } else {
            for (int i = 0; i < k; ++i) {
              decision |= static_cast<std::uint8_t>(((s >> (i * mem + mem - 1)) & 1U) << i);
            }
          }
          decisions[t * states + ns] = decision;
        }
      }
    }
    metric.swap(next_metric);
  }

  BitStream message(msg_bits);
  std::uint32_t s = 0;
  for (std::size_t t = sections; t-- > 0;) {
    const std::uint8_t decision = decisions[t * states + s];
    std::uint32_t u = 0;
    std::uint32_t prev = 0;
    if (mem == 0) {
      u = decision;
    } else {
      for (int i = 0; i < k; ++i) {
        const std::uint32_t seg = (s >> (i * mem)) & seg_mask;
        u |= (seg & 1U) << i;
        prev |= ((seg >> 1) | (static_cast<std::uint32_t>((decision >> i) & 1U) << (mem - 1))) << (i * mem);
      }
    }
    if (t < steps) {
      for (int i = 0; i < k; ++i) {
        if ((u >> i) & 1U) message.set(t * static_cast<std::size_t>(k) + static_cast<std::size_t>(i), true);
      }
    }
    s = prev;
  }
  return {std::move(message), 0, DecodeMethod::Viterbi};
}

}  // namespace perseus
