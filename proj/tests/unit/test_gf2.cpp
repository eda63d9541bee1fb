#include <doctest.h>

#include "oracles.hpp"
#include "perseus/entropy.hpp"
#include "perseus/error.hpp"
#include "perseus/gf2.hpp"

using namespace perseus;

namespace {

Gf2Poly random_poly(EntropySource& rng, int max_degree) {
  Gf2Poly p;
  for (int d = 0; d <= max_degree; ++d) {
    if (rng.next() & 1U) p.set_coeff(d, true);
  }
  return p;
}

}  // namespace

TEST_CASE("poly_mul examples") {
  const auto one_plus_x = Gf2Poly::from_exponents({0, 1});
  CHECK(poly_mul(one_plus_x, one_plus_x) == Gf2Poly::from_exponents({0, 2}));
  CHECK(poly_mul(Gf2Poly{}, Gf2Poly::from_exponents({0, 1, 2})).is_zero());

  // Frozen from the schoolbook convolution oracle: (1+x^2)(1+x+x^2).
  const auto a = Gf2Poly::from_exponents({0, 2});
  const auto b = Gf2Poly::from_exponents({0, 1, 2});
  REQUIRE(oracle::convolve(oracle::coeffs(a), oracle::coeffs(b)) == oracle::Bits{1, 1, 0, 1, 1});
  const auto product = poly_mul(a, b);
  CHECK(product == Gf2Poly::from_exponents({0, 1, 3, 4}));
  CHECK(product.degree() == 4);
  CHECK(product.to_string() == "1+x+x^3+x^4");
}

TEST_CASE("zero polynomial") {
  Gf2Poly zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == Gf2Poly::kZeroDegree);
  CHECK(zero == Gf2Poly{});
  CHECK_FALSE(zero == Gf2Poly::from_mask(1));
  auto p = Gf2Poly::from_exponents({3});
  p.set_coeff(3, false);
  CHECK(p == zero);
  CHECK_THROWS_AS(p.set_coeff(Gf2Poly::kMaxDegree + 1, true), Error);
}

TEST_CASE("poly_mul algebra against the convolution oracle") {
  SeededEntropy rng(0x5eed);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_poly(rng, static_cast<int>(rng.uniform(0, 64)));
    const auto b = random_poly(rng, static_cast<int>(rng.uniform(0, 64)));
    const auto c = random_poly(rng, static_cast<int>(rng.uniform(0, 64)));
    const auto ab = poly_mul(a, b);
    CHECK(oracle::coeffs(ab) == oracle::convolve(oracle::coeffs(a), oracle::coeffs(b)));
    CHECK(ab == poly_mul(b, a));
    CHECK(poly_mul(ab, c) == poly_mul(a, poly_mul(b, c)));
    CHECK(poly_mul(a, b + c) == ab + poly_mul(a, c));
    if (!a.is_zero() && !b.is_zero()) CHECK(ab.degree() == a.degree() + b.degree());
  }
}

TEST_CASE("hex nibble transport") {
  CHECK(bits_to_nibble_hex(BitStream::from_string("1010")) == "a");
  CHECK(bits_to_nibble_hex(BitStream{}).empty());
  CHECK(bits_to_nibble_hex(BitStream::from_string("1111 0000 101")) == "f0a");

  CHECK(nibble_hex_to_bits("a", 4) == BitStream::from_string("1010"));
  CHECK(nibble_hex_to_bits("f0a", 11) == BitStream::from_string("11110000101"));
  CHECK(nibble_hex_to_bits("", 0).empty());

  try {
    (void)nibble_hex_to_bits("zz", 8);
    FAIL("expected malformed payload");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedPayload);
  }
  try {
    (void)nibble_hex_to_bits("ab", 9);
    FAIL("expected length mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("hex round-trip property") {
  SeededEntropy rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto len = static_cast<std::size_t>(rng.uniform(0, 300));
    const auto s = oracle::to_stream(oracle::random_bits(rng, len));
    const auto text = bits_to_nibble_hex(s);
    CHECK(text.size() == (len + 3) / 4);
    CHECK(nibble_hex_to_bits(text, len) == s);
  }
}

TEST_CASE("bit stream packing") {
  const auto s = BitStream::from_bytes(std::vector<std::uint8_t>{0x80, 0x01});
  CHECK(s.size() == 16);
  CHECK(s.get(0));
  CHECK(s.get(15));
  CHECK(s.count() == 2);
  CHECK(s.to_bytes() == std::vector<std::uint8_t>{0x80, 0x01});

  auto t = BitStream::from_string("101");
  t.resize(70);
  t.set(69, true);
  t.resize(4);
  CHECK(t == BitStream::from_string("1010"));
  CHECK_THROWS_AS(t ^= BitStream(3), Error);
}
