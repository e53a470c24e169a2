#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "galelab/error.hpp"

namespace galelab {

// Exact arithmetic for counts, betting fractions and martingale values.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// High-precision reals for entropies and log-domain bounds (~166 bits of
// mantissa, far beyond the 2^-40 error budget the entropy contracts need).
using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigFloat to_bigfloat(const Rational& r);

// log2 of arbitrarily large positive integers / rationals, accurate to a few
// double ulps. Linear-domain conversion would overflow past 2^1024.
double log2_bigint(const BigInt& x);
double log2_rational(const Rational& r);

// Parses "p/q" or "p" with arbitrary-precision integers; rejects q <= 0 and
// anything that is not a plain fraction (no decimals, no whitespace).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

// floor(r * 2^n), exact.
BigInt floor_mul_pow2(const Rational& r, unsigned n);

// Nearest dyadic k/2^frac_bits to x; exact Rational result.
Rational dyadic_from_double(double x, unsigned frac_bits);

inline std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

}  // namespace galelab
