#include "galelab/entropy.hpp"

namespace galelab::entropy {

namespace {

const BigFloat& ln2() {
  static const BigFloat v = log(BigFloat(2));
  return v;
}

BigFloat log2_bf(const BigFloat& x) { return log(x) / ln2(); }

void check_probability(const Rational& p, const char* name) {
  if (p < 0 || p > 1)
    throw_error(ErrorKind::Domain, std::string(name) + " must lie in [0,1], got " + format_rational(p));
}

}  // namespace

BigFloat shannon(const BigFloat& alpha) {
  if (alpha < 0 || alpha > 1) throw_error(ErrorKind::Domain, "alpha must lie in [0,1]");
  if (alpha == 0 || alpha == 1) return BigFloat(0);
  return alpha * log2_bf(1 / alpha) + (1 - alpha) * log2_bf(1 / (1 - alpha));
}

BigFloat shannon(const Rational& alpha) {
  check_probability(alpha, "alpha");
  return shannon(to_bigfloat(alpha));
}

BigFloat cross_h(const BigFloat& alpha, const BigFloat& x) {
  if (alpha < 0 || alpha > 1) throw_error(ErrorKind::Domain, "alpha must lie in [0,1]");
  if (x <= 0 || x >= 1) throw_error(ErrorKind::Domain, "cross_h requires 0 < x < 1");
  return alpha * log2_bf(1 / x) + (1 - alpha) * log2_bf(1 / (1 - x));
}

BigFloat cross_h(const Rational& alpha, const Rational& x) {
  check_probability(alpha, "alpha");
  if (x <= 0 || x >= 1) throw_error(ErrorKind::Domain, "cross_h requires 0 < x < 1");
  return cross_h(to_bigfloat(alpha), to_bigfloat(x));
}

double inverse(double beta) {
  if (beta < 0 || beta > 1) throw_error(ErrorKind::Domain, "beta must lie in [0,1]");
  if (beta == 0) return 0.0;
  if (beta == 1) return 0.5;
  // H is strictly increasing on [0,1/2]
  BigFloat lo = 0, hi = BigFloat(1) / 2;
  const BigFloat target = beta;
  for (int it = 0; it < 90; ++it) {
    const BigFloat mid = (lo + hi) / 2;
    if (shannon(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return ((lo + hi) / 2).convert_to<double>();
}

Rational choose_delta(const Rational& alpha, const Rational& eps) {
  return choose_delta(alpha, to_bigfloat(eps));
}

Rational choose_delta(const Rational& alpha, const BigFloat& eps) {
  check_probability(alpha, "alpha");
  if (alpha >= Rational(1, 2)) throw_error(ErrorKind::Domain, "choose_delta requires alpha < 1/2");
  if (eps <= 0) throw_error(ErrorKind::Domain, "choose_delta requires eps > 0");
  const BigFloat budget = shannon(alpha) + eps;
  for (unsigned k = 1; k <= 256; ++k) {
    const Rational delta(BigInt(1), BigInt(1) << k);
    const Rational x = alpha + delta;
    if (x >= Rational(1, 2)) continue;
    if (cross_h(alpha, x) <= budget) return delta;
  }
  throw_error(ErrorKind::Domain, "no dyadic delta up to 2^-256 satisfies the entropy slack");
}

BigInt binomial_tail(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw_error(ErrorKind::Domain, "binomial_tail requires k <= n");
  BigInt term = 1, sum = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    term = term * (n - j) / (j + 1);
    sum += term;
  }
  return sum;
}

bool binomial_tail_entropy_bound(std::uint64_t n, std::uint64_t k) {
  if (2 * k > n) throw_error(ErrorKind::Domain, "entropy bound stated for k <= n/2");
  if (n == 0) return true;
  const BigFloat lhs = log2_bf(BigFloat(binomial_tail(n, k)));
  const BigFloat rhs = shannon(Rational(k, n)) * n;
  return lhs <= rhs;
}

}  // namespace galelab::entropy
