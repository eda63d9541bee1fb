#include "perseus/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "perseus/error.hpp"

namespace perseus {

ConvCode equivalent_code(const PuncturedCode& pc) {
  const auto& base = pc.base();
  const int k = base.k();
  const int n = base.n();
  const int m = pc.width();
  const int inputs = k * m;

  struct Slot {
    int phase;
    int output;
  };
  std::vector<Slot> outputs;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) {
      if (pc.keeps(j, r)) outputs.push_back({r, j});
    }
  }
  const int out_count = static_cast<int>(outputs.size());

  std::vector<Gf2Poly> polys(static_cast<std::size_t>(inputs) * static_cast<std::size_t>(out_count));
  int mem = 0;
  for (int rp = 0; rp < m; ++rp) {
    for (int i = 0; i < k; ++i) {
      const int row = rp * k + i;
      for (int o = 0; o < out_count; ++o) {
        const auto [r, j] = outputs[static_cast<std::size_t>(o)];
        const auto& f = base.poly(i, j);
        Gf2Poly g;
        for (int d = 0; d <= f.degree(); ++d) {
          const int shift = d - r + rp;
          if (f.coeff(d) && shift >= 0 && shift % m == 0) g.set_coeff(shift / m, true);
        }
        mem = std::max(mem, g.degree());
        polys[static_cast<std::size_t>(row) * out_count + o] = std::move(g);
      }
    }
  }
  return ConvCode::make(inputs, out_count, mem, std::move(polys), ConvCode::RateCheck::AllowUnit);
}

EntropyReport byte_entropy(std::span<const std::uint8_t> data) {
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "entropy of an empty sample");
  EntropyReport report;
  for (auto b : data) ++report.histogram[b];
  report.sample_bytes = data.size();
  const auto total = static_cast<double>(data.size());
  double h = 0.0;
  for (auto c : report.histogram) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  report.byte_entropy = std::clamp(h, 0.0, 8.0);
  return report;
}

ReconstructionResult reconstruct_bruteforce(const BitStream& intercepted, int max_mem, double noise_p,
                                            double threshold, const ConvCode* truth) {
  (void)noise_p;
  if (max_mem > kMaxReconstructionMem || max_mem < 0) {
    throw Error(ErrorKind::HypothesisSpaceTooLarge,
                "reconstruction limited to degree <= " + std::to_string(kMaxReconstructionMem));
  }
  const std::size_t len = intercepted.size() / 2;
  if (len <= static_cast<std::size_t>(max_mem)) {
    throw Error(ErrorKind::Precondition, "intercept too short for the hypothesis degree");
  }

  const std::size_t words = (len + static_cast<std::size_t>(max_mem)) / 64 + 1;
  std::vector<std::uint64_t> c1(words, 0);
  std::vector<std::uint64_t> c2(words, 0);
  for (std::size_t t = 0; t < len; ++t) {
    if (intercepted.get(2 * t)) c1[t >> 6] |= std::uint64_t{1} << (t & 63);
    if (intercepted.get(2 * t + 1)) c2[t >> 6] |= std::uint64_t{1} << (t & 63);
  }

  // Products of each stream with every hypothesis polynomial, computed once.
  const std::size_t poly_count = std::size_t{1} << (max_mem + 1);
  std::vector<std::uint64_t> p1(poly_count * words, 0);
  std::vector<std::uint64_t> p2(poly_count * words, 0);
  for (std::size_t g = 0; g < poly_count; ++g) {
    const auto poly = Gf2Poly::from_mask(g);
    detail::clmul_accumulate({&p1[g * words], words}, c1, poly);
    detail::clmul_accumulate({&p2[g * words], words}, c2, poly);
  }

  // Only positions whose whole window lies inside the intercept are scored.
  const auto first = static_cast<std::size_t>(max_mem);
  const double scored = static_cast<double>(len - first);
  auto syndrome_weight = [&](std::size_t ga, std::size_t gb) {
    // weight of c1*gb + c2*ga over [first, len)
    const std::uint64_t* a = &p1[gb * words];
    const std::uint64_t* b = &p2[ga * words];
    std::size_t ones = 0;
    for (std::size_t w = first / 64; w * 64 < len; ++w) {
      std::uint64_t x = a[w] ^ b[w];
      const std::size_t lo = w * 64;
      if (lo < first) x &= ~std::uint64_t{0} << (first - lo);
      if (lo + 64 > len) x &= (std::uint64_t{1} << (len - lo)) - 1;
      ones += static_cast<std::size_t>(std::popcount(x));
    }
    return ones;
  };

  ReconstructionResult result;
  for (std::size_t g1 = 0; g1 < poly_count; ++g1) {
    for (std::size_t g2 = g1; g2 < poly_count; ++g2) {
      if ((g1 & 1U) == 0 && (g2 & 1U) == 0) continue;
      ++result.tested;
      const std::size_t forward = syndrome_weight(g1, g2);
      const std::size_t swapped = syndrome_weight(g2, g1);
      const bool use_swapped = swapped < forward;
      const double fraction = static_cast<double>(use_swapped ? swapped : forward) / scored;
      if (fraction < threshold) {
        result.candidates.push_back({Gf2Poly::from_mask(use_swapped ? g2 : g1),
                                     Gf2Poly::from_mask(use_swapped ? g1 : g2), fraction});
      }
    }
  }

  if (truth != nullptr && truth->k() == 1 && truth->n() == 2) {
    const auto& f1 = truth->poly(0, 0);
    const auto& f2 = truth->poly(0, 1);
    result.success = std::any_of(result.candidates.begin(), result.candidates.end(), [&](const auto& c) {
      return (c.g1 == f1 && c.g2 == f2) || (c.g1 == f2 && c.g2 == f1);
    });
  }
  return result;
}

BitStream make_intercept(const ConvCode& code, std::size_t message_bits, double p, EntropySource& rng) {
  if (code.k() != 1 || code.n() != 2) {
    throw Error(ErrorKind::Precondition, "intercepts are produced by rate-1/2 codes");
  }
  BitStream message(message_bits);
  for (std::size_t i = 0; i < message_bits; ++i) message.set(i, (rng.next() & 1U) != 0);
  BitStream coded = encode(code, message);
  coded.resize(2 * message_bits);
  for (std::size_t i = 0; i < coded.size(); ++i) {
    const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    if (u < p) coded.flip(i);
  }
  return coded;
}

}  // namespace perseus
