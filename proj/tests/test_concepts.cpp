#include <doctest.h>

#include "galelab/concepts.hpp"
#include "galelab/entropy.hpp"

using namespace galelab;

TEST_CASE("density class with alpha = 1 admits every block") {
  auto cls = density_class(Rational(1));
  for (unsigned n = 0; n <= 3; ++n)
    CHECK(cls->enumerate_blocks(n).size() == (std::size_t{1} << block_length(n)));
}

TEST_CASE("density class counts match the exact binomial tail") {
  auto cls = density_class(Rational(1, 4));
  CHECK(cls->enumerate_blocks(3).size() == 37);
  CHECK(cls->count_blocks(3) == 37);
  // floor rule at n=1: floor(2/4) = 0 ones allowed
  const auto n1 = cls->enumerate_blocks(1);
  REQUIRE(n1.size() == 1);
  CHECK(n1[0].to_string() == "00");
  for (unsigned n = 0; n <= 4; ++n) {
    const BigInt expected = entropy::binomial_tail(
        block_length(n), floor_mul_pow2(Rational(1, 4), n).convert_to<std::uint64_t>());
    CHECK(BigInt(cls->enumerate_blocks(n).size()) == expected);
  }
}

TEST_CASE("density membership is the popcount cap") {
  auto cls = density_class(Rational(1, 4));
  CHECK(cls->contains_block(3, BitString::from_string("10000001")));
  CHECK_FALSE(cls->contains_block(3, BitString::from_string("10100001")));
  CHECK_THROWS_AS(cls->contains_block(3, BitString::from_string("101")), Error);
}

TEST_CASE("density class rejects alpha outside (0,1]") {
  CHECK_THROWS_AS(density_class(Rational(0)), Error);
  CHECK_THROWS_AS(density_class(Rational(-1, 4)), Error);
  CHECK_THROWS_AS(density_class(Rational(5, 4)), Error);
}

TEST_CASE("density count_extensions agrees with enumeration") {
  auto cls = density_class(Rational(3, 8));
  for (unsigned n = 2; n <= 4; ++n) {
    const auto members = cls->enumerate_blocks(n);
    for (const BitString prefix :
         {BitString{}, BitString::from_string("1"), BitString::from_string("01"),
          BitString::from_string("11")}) {
      BigInt by_hand = 0;
      for (const auto& m : members)
        if (m.prefix(prefix.size()) == prefix) ++by_hand;
      CHECK(cls->count_extensions(n, prefix) == by_hand);
    }
  }
}

TEST_CASE("padded class blocks are free bits followed by zeros") {
  auto cls = padded_class(Rational(1, 4));
  const auto free = cls->free_positions(3);
  REQUIRE(free.has_value());
  CHECK(*free == std::vector<std::size_t>{0, 1});
  CHECK(cls->enumerate_blocks(3).size() == 4);
  CHECK(cls->count_blocks(3) == 4);
  CHECK(cls->contains_block(3, BitString::from_string("11000000")));
  CHECK_FALSE(cls->contains_block(3, BitString::from_string("00100000")));
}

TEST_CASE("padded class floor rule at tiny blocks") {
  auto cls = padded_class(Rational(1, 2));
  const auto n0 = cls->enumerate_blocks(0);
  REQUIRE(n0.size() == 1);
  CHECK(n0[0].to_string() == "0");
  // n=2: blocks of the form xy00
  const auto n2 = cls->enumerate_blocks(2);
  REQUIRE(n2.size() == 4);
  for (const auto& b : n2) {
    CHECK(b[2] == 0);
    CHECK(b[3] == 0);
  }
}

TEST_CASE("padded class rejects alpha outside (0,1)") {
  CHECK_THROWS_AS(padded_class(Rational(0)), Error);
  CHECK_THROWS_AS(padded_class(Rational(1)), Error);
}

TEST_CASE("padded free-bit map is a bijection onto the members") {
  for (const Rational alpha : {Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
    auto cls = padded_class(alpha);
    for (unsigned n = 0; n <= 4; ++n) {
      const std::size_t free = floor_mul_pow2(alpha, n).convert_to<std::size_t>();
      const auto members = cls->enumerate_blocks(n);
      REQUIRE(members.size() == (std::size_t{1} << free));
      std::vector<bool> seen(members.size(), false);
      for (const auto& b : members) {
        const std::uint64_t key = b.prefix(free).to_index();
        CHECK_FALSE(seen[key]);
        seen[key] = true;
        for (std::size_t i = free; i < b.size(); ++i) CHECK(b[i] == 0);
      }
    }
  }
}

TEST_CASE("sampled languages always satisfy the class predicate") {
  for (const auto& cls : {density_class(Rational(1, 4)), density_class(Rational(1)),
                          padded_class(Rational(1, 2))}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      for (SampleMode mode : {SampleMode::Random, SampleMode::Extremal}) {
        const LanguagePrefix lp = sample_language(*cls, 7, seed, mode);
        CHECK(lp.bits().size() == boundary_length(7));
        for (unsigned n = 0; n <= 7; ++n) {
          CAPTURE(cls->name());
          CAPTURE(seed);
          CAPTURE(n);
          CHECK(cls->contains_block(n, lp.block(n)));
        }
      }
    }
  }
}

TEST_CASE("extremal density samples have exactly the ones cap per block") {
  auto cls = density_class(Rational(1, 4));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const LanguagePrefix lp = sample_language(*cls, 8, seed, SampleMode::Extremal);
    for (unsigned n = 0; n <= 8; ++n)
      CHECK(BigInt(lp.block(n).popcount()) == floor_mul_pow2(Rational(1, 4), n));
  }
}

TEST_CASE("sampling is deterministic per seed and varies across seeds") {
  auto cls = density_class(Rational(1, 2));
  CHECK(sample_language(*cls, 9, 123).bits() == sample_language(*cls, 9, 123).bits());
  CHECK_FALSE(sample_language(*cls, 9, 123).bits() == sample_language(*cls, 9, 124).bits());
}

TEST_CASE("enumeration is budget-limited for generic block spaces") {
  auto cls = density_class(Rational(1, 4));
  CHECK_THROWS_AS(cls->enumerate_blocks(5), Error);
  try {
    cls->enumerate_blocks(5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Budget);
  }
  // padded classes stay enumerable while the free region is small
  CHECK(padded_class(Rational(1, 100))->enumerate_blocks(6).size() == 1);
}

TEST_CASE("closed-form counting reaches far beyond the enumeration budget") {
  auto cls = density_class(Rational(1, 4));
  CHECK(cls->count_blocks(12) == entropy::binomial_tail(4096, 1024));
  CHECK(padded_class(Rational(1, 4))->count_blocks(12) == (BigInt(1) << 1024));
}
