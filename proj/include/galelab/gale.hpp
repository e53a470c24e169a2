#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "galelab/bits.hpp"
#include "galelab/numeric.hpp"

namespace galelab {

inline constexpr std::size_t kDefaultEvalBudget = std::size_t{1} << 14;
inline constexpr unsigned kMaxFreezeDepth = 16;

// Stateful walk down the betting tree. fraction_one() is the exact stake
// share on bit 1 at the current prefix; the share on 0 is its complement.
// Cursors exist so sequential evaluation of strategies with per-prefix state
// (conditional counting, block bookkeeping) stays O(1) per bit.
class BetCursor {
public:
  virtual ~BetCursor() = default;
  virtual Rational fraction_one() = 0;
  virtual void advance(int bit) = 0;
  virtual std::unique_ptr<BetCursor> clone() const = 0;
};

// An s-gale given intensionally: rate s plus a deterministic map from every
// bit-string prefix to the betting fraction on the next bit. The induced
// capital d(lambda)=1, d(wb) = 2^s * pi_b(w) * d(w) satisfies the s-gale
// identity by construction.
class BettingStrategy {
public:
  using CursorFactory = std::function<std::unique_ptr<BetCursor>()>;

  BettingStrategy(Rational s, CursorFactory make_cursor);

  // stateless strategies: fraction on 1 as a pure function of the prefix
  static BettingStrategy from_function(Rational s, std::function<Rational(const BitString&)> bet_one);

  const Rational& rate() const { return s_; }
  std::unique_ptr<BetCursor> cursor() const { return make_cursor_(); }

  // pure per-prefix view (walks a fresh cursor; O(|prefix|))
  Rational fraction_one(const BitString& prefix) const;

private:
  Rational s_;
  CursorFactory make_cursor_;
};

struct TraceSample {
  std::size_t prefix_len;
  double log2_capital;  // -inf once capital hits zero
  bool is_block_boundary;
};

// log2-domain capital at every prefix length, with running max and the
// samples at block boundaries 2^{n+1}-1.
class CapitalTrace {
public:
  explicit CapitalTrace(std::vector<TraceSample> samples);

  const std::vector<TraceSample>& samples() const { return samples_; }
  double running_max() const { return running_max_; }
  std::vector<TraceSample> boundary_samples() const;
  double final_log2_capital() const { return samples_.back().log2_capital; }

  // columns: prefix_len,log2_capital,is_block_boundary
  std::string to_csv() const;

private:
  std::vector<TraceSample> samples_;
  double running_max_;
};

// Exact martingale-value table to a bounded depth: m(lambda)=1 and
// m(w0)+m(w1) = 2 m(w); the induced s-gale value is d(w) = 2^{(s-1)|w|} m(w).
class ExtensionalGale {
public:
  ExtensionalGale(Rational s, unsigned depth, std::vector<Rational> table);

  const Rational& rate() const { return s_; }
  unsigned depth() const { return depth_; }
  std::size_t table_size() const { return table_.size(); }

  static std::size_t node_index(const BitString& w);
  const Rational& martingale(const BitString& w) const;
  double log2_value(const BitString& w) const;  // log2 d(w)

private:
  Rational s_;
  unsigned depth_;
  std::vector<Rational> table_;  // heap layout: idx(lambda)=0, idx(wb)=2*idx(w)+1+b
};

struct MartingaleReport {
  bool ok;
  std::string first_violation;  // violating prefix when !ok
  std::string message;
};

// Evaluates log2 capital over every prefix of `bits`. Resource error past the
// budget; contract violation if a fraction leaves [0,1].
CapitalTrace evaluate(const BettingStrategy& strategy, const BitString& bits,
                      std::size_t budget = kDefaultEvalBudget);

// Trace of the frozen table along `bits` (|bits| <= depth).
CapitalTrace evaluate_frozen(const ExtensionalGale& gale, const BitString& bits);

// Exact table of the strategy to the given depth: m(wb) = 2 * pi_b(w) * m(w).
ExtensionalGale freeze(const BettingStrategy& strategy, unsigned depth);

// Exhaustive exact check of m(w0)+m(w1) = 2 m(w) for all |w| < depth.
MartingaleReport verify_martingale_identity(const ExtensionalGale& gale);

// log2 capital per bit at the last block boundary; -inf on a dead trace.
double growth_exponent(const CapitalTrace& trace);
std::vector<double> boundary_slopes(const CapitalTrace& trace);

}  // namespace galelab
