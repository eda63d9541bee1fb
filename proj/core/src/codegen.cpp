#include "perseus/codegen.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "perseus/decode.hpp"
#include "perseus/error.hpp"

namespace perseus {
namespace {

int draw(EntropySource& rng, int lo, int span) {
  return static_cast<int>(rng.uniform(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(lo + span)));
}

int zero_count(int n, int width, int divisor) { return (n * width) / divisor; }

bool usable(int k, int n, int width, int divisor) {
  return k < n && n * width - zero_count(n, width, divisor) >= k * width;
}

std::vector<std::uint8_t> draw_pattern(EntropySource& rng, int n, int width, int zeros) {
  const auto cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(width);
  std::vector<std::size_t> order(cells);
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `zeros` slots become a uniform subset.
    for (std::size_t i = 0; i < static_cast<std::size_t>(zeros); ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform(i, cells - 1));
      std::swap(order[i], order[j]);
    }
    std::vector<std::uint8_t> pattern(cells, 1);
    for (std::size_t i = 0; i < static_cast<std::size_t>(zeros); ++i) pattern[order[i]] = 0;

    bool ok = true;
    for (int c = 0; c < width && ok; ++c) {
      bool any = false;
      for (int r = 0; r < n; ++r) any = any || pattern[static_cast<std::size_t>(r) * width + c] != 0;
      ok = any;
    }
    if (ok) return pattern;
  }
}

Gf2Poly draw_poly(EntropySource& rng, int mem) {
  std::vector<std::uint64_t> words(static_cast<std::size_t>(mem) / 64 + 1);
  for (auto& w : words) w = rng.next();
  const int top_bits = (mem % 64) + 1;
  if (top_bits < 64) words.back() &= (std::uint64_t{1} << top_bits) - 1;
  return Gf2Poly::from_words(std::move(words));
}

PuncturedCode draw_candidate(const GenBounds& b, EntropySource& rng) {
  int k = 0;
  int n = 0;
  int width = 0;
  do {
    k = draw(rng, b.k_min, b.k_span);
    n = draw(rng, b.n_min, b.n_span);
    width = draw(rng, b.mwidth_min, b.mwidth_span);
  } while (!usable(k, n, width, b.puncture_divisor));
  const int mem = draw(rng, b.mem_min, b.mem_span);

  std::vector<Gf2Poly> polys(static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i) {
    bool nonzero = false;
    while (!nonzero) {
      for (int j = 0; j < n; ++j) {
        auto& p = polys[static_cast<std::size_t>(i) * n + j];
        p = draw_poly(rng, mem);
        nonzero = nonzero || !p.is_zero();
      }
    }
  }
  auto base = ConvCode::make(k, n, mem, std::move(polys));
  auto pattern = draw_pattern(rng, n, width, zero_count(n, width, b.puncture_divisor));
  return PuncturedCode::make(std::move(base), width, std::move(pattern));
}

}  // namespace

void validate_bounds(const GenBounds& b) {
  if (b.k_min < 1 || b.n_min < 1 || b.mem_min < 0 || b.mwidth_min < 1 || b.k_span < 0 ||
      b.n_span < 0 || b.mem_span < 0 || b.mwidth_span < 0 || b.puncture_divisor < 1) {
    throw Error(ErrorKind::InvalidBounds, "bounds must be non-negative with positive minima");
  }
  if (b.k_min >= b.n_min + b.n_span) {
    throw Error(ErrorKind::InvalidBounds, "k < n is unsatisfiable: k_min=" + std::to_string(b.k_min) +
                                              " n_max=" + std::to_string(b.n_min + b.n_span));
  }
  if (b.mem_min + b.mem_span > Gf2Poly::kMaxDegree || b.n_min + b.n_span > 255 ||
      b.mwidth_min + b.mwidth_span > 0xFFFF) {
    throw Error(ErrorKind::InvalidBounds, "bounds exceed the parameter-blob field widths");
  }
  for (int k = b.k_min; k <= b.k_min + b.k_span; ++k) {
    for (int n = b.n_min; n <= b.n_min + b.n_span; ++n) {
      for (int w = b.mwidth_min; w <= b.mwidth_min + b.mwidth_span; ++w) {
        if (usable(k, n, w, b.puncture_divisor)) return;
      }
    }
  }
  throw Error(ErrorKind::InvalidBounds, "no dimension draw keeps the punctured rate <= 1");
}

bool probe_round_trip(const PuncturedCode& pc, EntropySource& rng) {
  const auto k = static_cast<std::size_t>(pc.base().k());
  const std::size_t bits = (kProbeBits + k - 1) / k * k;
  BitStream message(bits);
  for (std::size_t i = 0; i < bits; ++i) message.set(i, (rng.next() & 1U) != 0);
  try {
    const auto received = puncture(pc, encode(pc.base(), message));
    return decode_linear(pc, unpuncture(pc, received), bits).message == message;
  } catch (const Error&) {
    return false;
  }
}

PuncturedCode generate_code(const GenBounds& bounds, EntropySource& rng) {
  validate_bounds(bounds);
  for (int attempt = 0; attempt < kMaxProbeFailures; ++attempt) {
    auto candidate = draw_candidate(bounds, rng);
    if (probe_round_trip(candidate, rng)) return candidate;
  }
  throw Error(ErrorKind::GenerationFailure,
              std::to_string(kMaxProbeFailures) + " consecutive generated codes failed the probe");
}

}  // namespace perseus
