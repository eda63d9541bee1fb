#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "perseus/codegen.hpp"
#include "perseus/decode.hpp"
#include "perseus/session.hpp"

using namespace perseus;

namespace {

SessionParams default_params(std::uint64_t seed) {
  SeededEntropy rng(seed);
  return {generate_code(GenBounds{}, rng), NoiseKey::generate(rng), gen_noise_config(rng)};
}

BitStream random_message(std::size_t bits, std::uint64_t seed) {
  SeededEntropy rng(seed);
  BitStream msg(bits);
  for (std::size_t i = 0; i < bits; ++i) msg.set(i, (rng.next() & 1U) != 0);
  return msg;
}

void BM_Encode(benchmark::State& state) {
  const auto sp = default_params(1);
  const auto msg = random_message(static_cast<std::size_t>(state.range(0)) * sp.code.base().k(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(encode(sp.code.base(), msg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(msg.size()));
}
BENCHMARK(BM_Encode)->Arg(1 << 14)->Arg(1 << 20);

void BM_Noise(benchmark::State& state) {
  const auto sp = default_params(3);
  BitStream bits(static_cast<std::size_t>(state.range(0)));
  NoiseGenerator gen(sp.key, sp.noise);
  for (auto _ : state) {
    gen.apply(bits);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Noise)->Arg(1 << 20);

void BM_DecodeLinear(benchmark::State& state) {
  const auto sp = default_params(4);
  const int k = sp.code.base().k();
  const auto msg = random_message(static_cast<std::size_t>(state.range(0) / k * k), 5);
  const auto rx = unpuncture(sp.code, puncture(sp.code, encode(sp.code.base(), msg)));
  for (auto _ : state) benchmark::DoNotOptimize(decode_linear(sp.code, rx, msg.size()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(msg.size()));
}
BENCHMARK(BM_DecodeLinear)->Arg(1 << 14)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

// Rate-1/2 memory-6 code; the trellis has 64 states.
void BM_DecodeViterbi(benchmark::State& state) {
  const auto base = ConvCode::make(1, 2, 6, {Gf2Poly::from_exponents({0, 1, 3, 4, 6}),
                                             Gf2Poly::from_exponents({0, 3, 4, 5, 6})});
  const auto code = PuncturedCode::unpunctured(base);
  const auto msg = random_message(static_cast<std::size_t>(state.range(0)), 6);
  const auto rx = unpuncture(code, encode(base, msg));
  for (auto _ : state) benchmark::DoNotOptimize(decode_viterbi(code, rx, msg.size()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(msg.size()));
}
BENCHMARK(BM_DecodeViterbi)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_ProtectRoundTrip(benchmark::State& state) {
  const auto sp = default_params(7);
  SeededEntropy rng(8);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)));
  for (auto& b : data) b = static_cast<std::uint8_t>(rng.next());
  for (auto _ : state) benchmark::DoNotOptimize(unprotect(sp, protect(sp, data)));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProtectRoundTrip)->Arg(2048)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
