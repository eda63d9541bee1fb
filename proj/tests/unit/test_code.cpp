#include <doctest.h>

#include "codes.hpp"
#include "oracles.hpp"
#include "perseus/code.hpp"
#include "perseus/codegen.hpp"
#include "perseus/error.hpp"

using namespace perseus;

TEST_CASE("encode: hand-checked rate-1/2 example") {
  const auto code = testcodes::example_base();
  const auto msg = oracle::Bits{1, 0, 1, 1};
  // c1_t = m_t + m_{t-2}, c2_t = m_t + m_{t-1} + m_{t-2}, two flush sections.
  const oracle::Bits expected{1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1};
  REQUIRE(oracle::Encoder::from(code).encode(msg) == expected);
  CHECK(oracle::to_bits(encode(code, oracle::to_stream(msg))) == expected);
}

TEST_CASE("encode: zero message and output length") {
  SeededEntropy rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pc = generate_code(testcodes::small_bounds(), rng);
    const auto& code = pc.base();
    const std::size_t steps = rng.uniform(0, 40);
    const auto out = encode(code, BitStream(steps * static_cast<std::size_t>(code.k())));
    CHECK(out.size() == static_cast<std::size_t>(code.n()) * (steps + static_cast<std::size_t>(code.mem())));
    CHECK(out.count() == 0);
  }
}

TEST_CASE("encode: rejects message not a multiple of k") {
  const auto code = ConvCode::make(2, 3, 1,
                                   {Gf2Poly::from_mask(1), Gf2Poly::from_mask(3), Gf2Poly{}, Gf2Poly{},
                                    Gf2Poly::from_mask(2), Gf2Poly::from_mask(1)});
  try {
    (void)encode(code, BitStream(5));
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("encode: GF(2)-linear") {
  SeededEntropy rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pc = generate_code(testcodes::small_bounds(), rng);
    const auto len = static_cast<std::size_t>(pc.base().k()) * rng.uniform(1, 64);
    const auto m1 = oracle::to_stream(oracle::random_bits(rng, len));
    const auto m2 = oracle::to_stream(oracle::random_bits(rng, len));
    CHECK(encode(pc.base(), m1 ^ m2) == (encode(pc.base(), m1) ^ encode(pc.base(), m2)));
  }
}

TEST_CASE("encode: agrees with the shift-register simulator") {
  SeededEntropy rng(12);
  const auto example = testcodes::example_base();
  const auto sim = oracle::Encoder::from(example);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto msg = oracle::random_bits(rng, rng.uniform(1, 48));
    REQUIRE(oracle::to_bits(encode(example, oracle::to_stream(msg))) == sim.encode(msg));
  }
  // Larger multi-input encoders, including memory past one machine word.
  GenBounds wide;
  wide.mem_min = 40;
  wide.mem_span = 40;
  for (int trial = 0; trial < 60; ++trial) {
    const auto pc = generate_code(trial % 2 == 0 ? GenBounds{} : wide, rng);
    const auto k = static_cast<std::size_t>(pc.base().k());
    const auto msg = oracle::random_bits(rng, k * rng.uniform(1, 150));
    REQUIRE(oracle::to_bits(encode(pc.base(), oracle::to_stream(msg))) ==
            oracle::Encoder::from(pc.base()).encode(msg));
  }
}

TEST_CASE("ConvCode and PuncturedCode invariants") {
  const auto f = Gf2Poly::from_mask(0b101);
  CHECK_THROWS_AS(ConvCode::make(2, 2, 2, {f, f, f, f}), Error);           // k == n
  CHECK_THROWS_AS(ConvCode::make(1, 2, 1, {f, f}), Error);                 // degree > mem
  CHECK_THROWS_AS(ConvCode::make(1, 2, 2, {Gf2Poly{}, Gf2Poly{}}), Error); // empty row
  CHECK_NOTHROW(ConvCode::make(2, 2, 2, {f, f, f, f}, ConvCode::RateCheck::AllowUnit));

  const auto base = testcodes::example_base();
  CHECK_THROWS_AS(PuncturedCode::make(base, 2, {1, 0, 1, 0}), Error);  // zero column
  CHECK_THROWS_AS(PuncturedCode::make(base, 2, {1, 1, 1}), Error);     // wrong shape
  const auto wide = ConvCode::make(2, 3, 1, {Gf2Poly::from_mask(1), Gf2Poly::from_mask(3), Gf2Poly{}, Gf2Poly{}, Gf2Poly::from_mask(2), Gf2Poly::from_mask(1)});
  CHECK_THROWS_AS(PuncturedCode::make(wide, 1, {1, 0, 0}), Error);     // rate > 1
  const auto pc = testcodes::example_punctured();
  CHECK(pc.weight() == 3);
  CHECK(pc.column_weight(0) == 2);
  CHECK(pc.column_weight(1) == 1);
}

TEST_CASE("puncture: example pattern keeps x0 y0 y1 x2 y2 y3 ...") {
  const auto pc = testcodes::example_punctured();
  SeededEntropy rng(3);
  const auto coded = oracle::random_bits(rng, 12);  // x_t at 2t, y_t at 2t+1
  const std::vector<std::size_t> order{0, 1, 3, 4, 5, 7, 8, 9, 11};
  oracle::Bits expected;
  for (auto i : order) expected.push_back(coded[i]);
  CHECK(oracle::to_bits(puncture(pc, oracle::to_stream(coded))) == expected);
}

TEST_CASE("puncture: all-ones is identity, one zero drops a symbol per period") {
  const auto base = testcodes::example_base();
  SeededEntropy rng(4);
  const auto coded = oracle::to_stream(oracle::random_bits(rng, 8));
  CHECK(puncture(PuncturedCode::make(base, 2, {1, 1, 1, 1}), coded) == coded);
  CHECK(puncture(PuncturedCode::unpunctured(base), coded) == coded);
  CHECK(puncture(PuncturedCode::make(base, 4, {1, 1, 1, 1, 1, 1, 1, 0}), coded).size() == 7);
}

TEST_CASE("unpuncture: example pattern restores erasures at x1 and x3") {
  const auto pc = testcodes::example_punctured();
  const auto received = BitStream::from_string("101101");
  const auto es = unpuncture(pc, received);
  REQUIRE(es.size() == 8);
  CHECK(es.sections() == 4);
  for (std::size_t i = 0; i < 8; ++i) CHECK(es.erased(i) == (i == 2 || i == 6));
  // kept positions in order 0,1,3,4,5,7
  CHECK(es.value(0));
  CHECK_FALSE(es.value(1));
  CHECK(es.value(3));
  CHECK(es.value(4));
  CHECK_FALSE(es.value(5));
  CHECK(es.value(7));

  const auto plain = unpuncture(PuncturedCode::unpunctured(testcodes::example_base()), received);
  CHECK(plain.erasure_count() == 0);
  CHECK(plain.values() == received);

  try {
    (void)unpuncture(PuncturedCode::make(testcodes::example_base(), 3, {1, 1, 1, 1, 0, 0}), BitStream(5));
    FAIL("expected length mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("puncture/unpuncture round-trip and rate accounting") {
  SeededEntropy rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pc = generate_code(trial % 3 == 0 ? GenBounds{} : testcodes::small_bounds(), rng);
    const auto k = static_cast<std::size_t>(pc.base().k());
    const std::size_t msg_bits = k * rng.uniform(0, 80);
    const auto coded = encode(pc.base(), oracle::to_stream(oracle::random_bits(rng, msg_bits)));
    const auto sent = puncture(pc, coded);
    const std::size_t sections = pc.base().sections_for(msg_bits);
    REQUIRE(sent.size() == oracle::kept_positions(pc, sections).size());
    REQUIRE(sent.size() == pc.coded_bits_for(msg_bits));

    const auto es = unpuncture(pc, sent);
    REQUIRE(es.size() == coded.size());
    const auto kept = oracle::kept_positions(pc, sections);
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < es.size(); ++pos) {
      const bool is_kept = next < kept.size() && kept[next] == pos;
      CHECK(es.erased(pos) == !is_kept);
      if (is_kept) {
        CHECK(es.value(pos) == coded.get(pos));
        ++next;
      }
    }
  }
}
