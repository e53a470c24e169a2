#pragma once

#include <cstdint>

#include "galelab/numeric.hpp"

namespace galelab::entropy {

// Shannon binary entropy H(alpha) in bits; H(0) = H(1) = 0 by the continuity
// convention. Domain error outside [0,1]. Absolute error far below 2^-40.
BigFloat shannon(const Rational& alpha);
BigFloat shannon(const BigFloat& alpha);

// h_alpha(x) = alpha log2(1/x) + (1-alpha) log2(1/(1-x)); minimum H(alpha) at
// x = alpha. Domain error when x is 0 or 1.
BigFloat cross_h(const Rational& alpha, const Rational& x);
BigFloat cross_h(const BigFloat& alpha, const BigFloat& x);

// Smallest gamma in [0,1/2] with H(gamma) = beta, by bisection; the result
// satisfies |H(gamma) - beta| <= 1e-9.
double inverse(double beta);

// Largest dyadic delta = 2^-k (k >= 1) with h_alpha(alpha+delta) <= H(alpha)+eps
// and alpha+delta < 1/2. Domain error when alpha >= 1/2 or eps <= 0.
Rational choose_delta(const Rational& alpha, const Rational& eps);
Rational choose_delta(const Rational& alpha, const BigFloat& eps);

// sum_{j<=k} C(n, j), exact. Domain error when k > n.
BigInt binomial_tail(std::uint64_t n, std::uint64_t k);

// Chernoff-style counting bound: binomial_tail(n,k) <= 2^{H(k/n) n}.
// Precondition 2k <= n.
bool binomial_tail_entropy_bound(std::uint64_t n, std::uint64_t k);

}  // namespace galelab::entropy
