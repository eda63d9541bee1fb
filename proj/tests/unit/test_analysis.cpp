#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "codes.hpp"
#include "oracles.hpp"
#include "perseus/analysis.hpp"
#include "perseus/codegen.hpp"
#include "perseus/error.hpp"

using namespace perseus;

namespace {

Gf2Poly P(std::initializer_list<int> exps) { return Gf2Poly::from_exponents(exps); }

// Syndrome fraction of (g1, g2) computed directly on coefficient vectors.
double naive_fraction(const BitStream& s, int max_mem, const Gf2Poly& g1, const Gf2Poly& g2) {
  const std::size_t len = s.size() / 2;
  oracle::Bits c1(len), c2(len);
  for (std::size_t t = 0; t < len; ++t) {
    c1[t] = s.get(2 * t) ? 1 : 0;
    c2[t] = s.get(2 * t + 1) ? 1 : 0;
  }
  auto a = oracle::convolve(c1, oracle::coeffs(g2));
  auto b = oracle::convolve(c2, oracle::coeffs(g1));
  a.resize(len + 64, 0);
  b.resize(len + 64, 0);
  std::size_t ones = 0;
  for (std::size_t t = static_cast<std::size_t>(max_mem); t < len; ++t) ones += static_cast<std::size_t>(a[t] ^ b[t]);
  return static_cast<double>(ones) / static_cast<double>(len - static_cast<std::size_t>(max_mem));
}

}  // namespace

TEST_CASE("equivalent code of the example punctured encoder") {
  const auto eq = equivalent_code(testcodes::example_punctured());
  REQUIRE(eq.k() == 2);
  REQUIRE(eq.n() == 3);
  CHECK(eq.mem() == 1);
  CHECK(eq.poly(0, 0) == P({0, 1}));
  CHECK(eq.poly(0, 1) == P({0, 1}));
  CHECK(eq.poly(0, 2) == P({0}));
  CHECK(eq.poly(1, 0) == Gf2Poly{});
  CHECK(eq.poly(1, 1) == P({1}));
  CHECK(eq.poly(1, 2) == P({0, 1}));
}

TEST_CASE("equivalent code of an unpunctured encoder is the encoder") {
  SeededEntropy rng(200);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pc = generate_code(testcodes::small_bounds(), rng);
    const auto plain = PuncturedCode::unpunctured(pc.base());
    CHECK(equivalent_code(plain) == pc.base());
  }
}

TEST_CASE("equivalent code emits the punctured stream") {
  SeededEntropy rng(201);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pc = generate_code(trial % 5 == 0 ? GenBounds{} : testcodes::small_bounds(), rng);
    const auto eq = equivalent_code(pc);
    REQUIRE(eq.n() == pc.weight());
    REQUIRE(eq.k() == pc.base().k() * pc.width());
    const auto periods = static_cast<std::size_t>(rng.uniform(1, 20));
    const auto msg = oracle::to_stream(oracle::random_bits(rng, periods * static_cast<std::size_t>(eq.k())));
    const auto direct = puncture(pc, encode(pc.base(), msg));
    const auto via = encode(eq, msg);
    const std::size_t common = std::min(direct.size(), via.size());
    bool equal = true;
    for (std::size_t i = 0; i < common; ++i) equal = equal && direct.get(i) == via.get(i);
    REQUIRE(equal);
    // Whatever extends past the shorter flush is zero.
    for (std::size_t i = common; i < direct.size(); ++i) REQUIRE_FALSE(direct.get(i));
    for (std::size_t i = common; i < via.size(); ++i) REQUIRE_FALSE(via.get(i));
  }
}

TEST_CASE("byte entropy") {
  std::vector<std::uint8_t> all(256);
  for (int i = 0; i < 256; ++i) all[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  CHECK(byte_entropy(all).byte_entropy == doctest::Approx(8.0));
  CHECK(byte_entropy(std::vector<std::uint8_t>(1000, 'a')).byte_entropy == doctest::Approx(0.0));
  const std::string ab = "aabb";
  const auto r = byte_entropy({reinterpret_cast<const std::uint8_t*>(ab.data()), ab.size()});
  CHECK(r.byte_entropy == doctest::Approx(1.0));
  CHECK(r.histogram['a'] == 2);
  CHECK(r.sample_bytes == 4);
  try {
    (void)byte_entropy({});
    FAIL("expected empty input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyInput);
  }
}

TEST_CASE("hypothesis count and syndrome scoring") {
  SeededEntropy rng(202);
  const auto truth = testcodes::example_base();
  const auto s = make_intercept(truth, 500, 0.03, rng);
  const auto res = reconstruct_bruteforce(s, 2, 0.03, 1.0, &truth);
  // Unordered pairs {g1, g2}, deg <= 2, at least one with a constant term.
  std::size_t expected = 0;
  for (unsigned a = 0; a < 8; ++a) {
    for (unsigned b = a; b < 8; ++b) expected += ((a | b) & 1U) ? 1 : 0;
  }
  CHECK(res.tested == expected);
  CHECK(res.candidates.size() == expected);
  for (const auto& c : res.candidates) {
    const double fwd = naive_fraction(s, 2, c.g1, c.g2);
    const double rev = naive_fraction(s, 2, c.g2, c.g1);
    CHECK(c.syndrome_fraction == doctest::Approx(std::min(fwd, rev)));
  }
  CHECK(reconstruct_bruteforce(s, 6, 0.0, 0.1).tested == 6176);
}

TEST_CASE("reconstruction recovers the encoder only at low noise") {
  SeededEntropy rng(203);
  const auto truth = testcodes::example_base();
  int clean = 0, light = 0, heavy = 0;
  for (int trial = 0; trial < 10; ++trial) {
    clean += reconstruct_bruteforce(make_intercept(truth, 4000, 0.0, rng), 6, 0.0, 0.1, &truth).success;
    light += reconstruct_bruteforce(make_intercept(truth, 4000, 0.01, rng), 6, 0.01, 0.1, &truth).success;
    heavy += reconstruct_bruteforce(make_intercept(truth, 4000, 0.2, rng), 6, 0.2, 0.1, &truth).success;
  }
  CHECK(clean == 10);
  CHECK(light >= 9);
  CHECK(heavy == 0);

  const auto noiseless = reconstruct_bruteforce(make_intercept(truth, 2000, 0.0, rng), 4, 0.0, 0.01, &truth);
  const bool found = std::any_of(noiseless.candidates.begin(), noiseless.candidates.end(), [](const auto& c) {
    return c.syndrome_fraction == 0.0 && ((c.g1 == P({0, 2}) && c.g2 == P({0, 1, 2})) ||
                                          (c.g2 == P({0, 2}) && c.g1 == P({0, 1, 2})));
  });
  CHECK(found);
}

TEST_CASE("reconstruction argument checks") {
  SeededEntropy rng(204);
  const auto s = make_intercept(testcodes::example_base(), 100, 0.0, rng);
  try {
    (void)reconstruct_bruteforce(s, kMaxReconstructionMem + 1, 0.0, 0.1);
    FAIL("expected hypothesis space error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisSpaceTooLarge);
  }
  const auto rate13 = ConvCode::make(1, 3, 1, {P({0}), P({0, 1}), P({1})});
  CHECK_THROWS_AS(make_intercept(rate13, 10, 0.0, rng), Error);
}
