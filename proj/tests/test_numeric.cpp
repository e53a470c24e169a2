#include <doctest.h>

#include <cmath>
#include <limits>

#include "galelab/bits.hpp"
#include "galelab/numeric.hpp"

using namespace galelab;

TEST_CASE("parse_rational accepts p/q and plain integers") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("123456789012345678901234567890/7") ==
        Rational(BigInt("123456789012345678901234567890"), 7));
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* bad : {"", "1/0", "1/-2", "0.5", "a/b", "1/2/3", "1 / 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
    try {
      parse_rational(bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
}

TEST_CASE("format_rational round-trips") {
  for (const char* text : {"3/4", "7", "-1/2", "1000000000000000000001/3"}) {
    CHECK(format_rational(parse_rational(text)) == text);
  }
  CHECK(format_rational(Rational(2, 4)) == "1/2");  // canonical form
}

TEST_CASE("log2_bigint handles values far beyond double range") {
  CHECK(log2_bigint(BigInt(1)) == 0.0);
  CHECK(log2_bigint(BigInt(1024)) == doctest::Approx(10.0));
  CHECK(log2_bigint(BigInt(1) << 4000) == doctest::Approx(4000.0));
  const BigInt x = (BigInt(1) << 5000) + (BigInt(1) << 4999);
  CHECK(log2_bigint(x) == doctest::Approx(5000.0 + std::log2(1.5)));
  CHECK_THROWS_AS(log2_bigint(BigInt(0)), Error);
}

TEST_CASE("log2_rational matches the integer route") {
  CHECK(log2_rational(Rational(3, 4)) == doctest::Approx(std::log2(0.75)));
  CHECK(log2_rational(Rational(0)) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("floor_mul_pow2 is an exact floor") {
  CHECK(floor_mul_pow2(Rational(1, 4), 3) == 2);
  CHECK(floor_mul_pow2(Rational(1, 4), 1) == 0);
  CHECK(floor_mul_pow2(Rational(1, 2), 0) == 0);
  CHECK(floor_mul_pow2(Rational(3, 8), 3) == 3);
  CHECK(floor_mul_pow2(Rational(1), 10) == 1024);
}

TEST_CASE("dyadic_from_double is exactly representable") {
  const Rational d = dyadic_from_double(0.8112781244591329, 40);
  CHECK(denominator(d) == (BigInt(1) << 40));
  CHECK(std::fabs(to_bigfloat(d).convert_to<double>() - 0.8112781244591329) < 1e-12);
}

TEST_CASE("bit strings index lexicographically") {
  CHECK(BitString::from_index(3, 0).to_string() == "000");
  CHECK(BitString::from_index(3, 5).to_string() == "101");
  CHECK(BitString::from_string("101").to_index() == 5);
  CHECK(BitString::from_string("0011").popcount() == 2);
  CHECK(BitString::from_string("01") < BitString::from_string("10"));
  CHECK_THROWS_AS(BitString::from_string("012"), Error);
}

TEST_CASE("block layout follows 2^n-1 .. 2^{n+1}-2") {
  CHECK(block_start(0) == 0);
  CHECK(block_start(3) == 7);
  CHECK(block_length(3) == 8);
  CHECK(boundary_length(3) == 15);
  CHECK(block_of_position(0).block == 0);
  CHECK(block_of_position(1).block == 1);
  CHECK(block_of_position(6).block == 2);
  CHECK(block_of_position(6).offset == 3);
  CHECK(block_of_position(7).block == 3);
}

TEST_CASE("language prefix blocks partition the prefix") {
  const LanguagePrefix lp(BitString::from_string("0" "10" "1100" "10000000"), 3);
  CHECK(lp.block(0).to_string() == "0");
  CHECK(lp.block(1).to_string() == "10");
  CHECK(lp.block(2).to_string() == "1100");
  CHECK(lp.block(3).to_string() == "10000000");
  CHECK_THROWS_AS(lp.block(4), Error);
  CHECK_THROWS_AS(LanguagePrefix(BitString::from_string("01"), 1), Error);
}

TEST_CASE("language prefix serialization round-trips") {
  const LanguagePrefix lp(BitString::from_string("0101101"), 2);
  const std::string text = lp.serialize();
  CHECK(text == "nmax=2\n0101101\n");
  const LanguagePrefix back = LanguagePrefix::deserialize(text);
  CHECK(back.bits() == lp.bits());
  CHECK(back.n_max() == 2);
  CHECK_THROWS_AS(LanguagePrefix::deserialize("0101101\n"), Error);
}
