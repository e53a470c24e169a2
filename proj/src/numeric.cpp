#include "galelab/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace galelab {

BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

double log2_bigint(const BigInt& x) {
  if (x <= 0) throw_error(ErrorKind::Domain, "log2 of non-positive integer");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 512) return std::log2(x.convert_to<double>());
  // keep ~53 significant bits so the double conversion is exact
  const unsigned shift = bits - 52;
  const BigInt top = x >> shift;
  return static_cast<double>(shift) + std::log2(top.convert_to<double>());
}

double log2_rational(const Rational& r) {
  if (r < 0) throw_error(ErrorKind::Domain, "log2 of negative rational");
  if (r == 0) return -std::numeric_limits<double>::infinity();
  return log2_bigint(numerator(r)) - log2_bigint(denominator(r));
}

namespace {

bool parse_int(const std::string& s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = BigInt(s);
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  if (slash == std::string::npos) {
    if (!parse_int(text, num))
      throw_error(ErrorKind::Parse, "malformed rational '" + text + "'");
  } else {
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den))
      throw_error(ErrorKind::Parse, "malformed rational '" + text + "'");
    if (den <= 0) throw_error(ErrorKind::Parse, "malformed rational '" + text + "': denominator must be positive");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt floor_mul_pow2(const Rational& r, unsigned n) {
  BigInt num = numerator(r) << n;
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;  // round toward -inf
  return q;
}

Rational dyadic_from_double(double x, unsigned frac_bits) {
  if (!std::isfinite(x)) throw_error(ErrorKind::Domain, "dyadic_from_double: non-finite input");
  const double scaled = std::ldexp(x, static_cast<int>(frac_bits));
  BigInt k(std::llround(scaled));
  return Rational(k, BigInt(1) << frac_bits);
}

}  // namespace galelab
