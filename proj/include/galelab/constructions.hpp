#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galelab/gale.hpp"
#include "galelab/learners.hpp"

namespace galelab {

// per-n example/query budgets (xi(n), q(n))
using BudgetFn = std::function<std::size_t(unsigned)>;

BudgetFn budget_from_table(std::vector<std::size_t> table);
BudgetFn budget_floor_alpha(const Rational& alpha);  // n -> floor(alpha * 2^n)

struct TheoremParams {
  Rational s;
  std::optional<Rational> alpha;
  std::optional<Rational> delta;
  std::optional<Rational> epsilon;
  BudgetFn example_budget;  // xi
  BudgetFn query_budget;    // q
};

// Betting strategy of the mistake-bound construction: stake 1-(alpha+delta)
// on the learner's prediction for the next lexicographic example, alpha+delta
// on the other bit. Requires alpha+delta < 1/2.
BettingStrategy online_to_gale(OnlineLearner learner, const Rational& alpha,
                               const Rational& delta, const Rational& s);

// Exact conditional measure on one block: values over all within-block
// prefixes, d(lambda)=1 and d(v0)+d(v1)=d(v).
class BlockMeasure {
public:
  BlockMeasure(unsigned n, std::vector<Rational> values);

  unsigned n() const { return n_; }
  const Rational& at(const BitString& v) const;
  const std::vector<Rational>& values() const { return values_; }
  bool additivity_holds() const;

  // martingale rescaling m(v) = 2^{|v|} d(v)
  ExtensionalGale to_extensional(const Rational& s) const;

private:
  unsigned n_;
  std::vector<Rational> values_;  // heap layout to depth 2^n
};

// capital of the product gale 2^{s|w|} prod_i d_i(w^i)
BettingStrategy product_strategy(Rational s, std::shared_ptr<const std::vector<BlockMeasure>> blocks);

struct PacBlockData {
  unsigned n;
  std::vector<std::vector<std::size_t>> example_sets;  // all Q with #Q <= xi(n)
  std::vector<std::vector<char>> good;                 // [q][block lex index]
  std::vector<BigInt> good_count;                      // #B_{n,Q}
  std::vector<char> uniform_fallback;                  // B_{n,Q} empty
  BlockMeasure measure;                                // d_n
};

struct PacGale {
  Rational s;
  Rational epsilon;
  Rational delta;
  unsigned n_max;
  std::vector<PacBlockData> blocks;
  BettingStrategy strategy;

  const BlockMeasure& measure(unsigned n) const { return blocks.at(n).measure; }
  // #Q_n(w) / #Q_n, the measured goodness of a target block
  Rational good_fraction(unsigned n, const BitString& block) const;
};

// Thm-4.1-style compiler: enumerate every example set Q and every candidate
// block, average the conditional good-set measures, chain blocks at rate s.
// delta is passed to the learner and used for reporting only.
PacGale pac_to_gale(PACLearner learner, const Rational& epsilon, const Rational& delta,
                    BudgetFn xi, const Rational& s, unsigned n_max);

struct MqBlockData {
  unsigned n;
  std::size_t query_budget;   // q(n)
  std::vector<char> good;     // [block lex index]
  BigInt good_count;          // #B_n
  bool count_bound_holds;     // #B_n <= 2^{q(n)}
  bool uniform_fallback;      // B_n empty
  BlockMeasure measure;       // d_n
};

struct MqGale {
  Rational s;
  unsigned n_max;
  std::vector<MqBlockData> blocks;
  BettingStrategy strategy;

  const BlockMeasure& measure(unsigned n) const { return blocks.at(n).measure; }
};

// Membership-query compiler: run the learner against every length-2^n oracle,
// bet proportionally to the good-set conditional counts.
MqGale mq_to_gale(MQLearner learner, BudgetFn q, const Rational& s, unsigned n_max);

// Explicit gale for the padded class: fair bets on free positions, all-in on 0
// across the padding.
BettingStrategy padded_gale(const Rational& alpha, const Rational& s);

// Adversary sequence: at free positions pick the bit with the smaller next
// capital (ties to 0), zeros across the padding. Output is a member of
// padded_class(alpha).
LanguagePrefix diagonalize_against(const BettingStrategy& d, const Rational& alpha, unsigned n_max);

// Closed-form log2 capital bounds of the constructions' telescoped chains,
// floor-adjusted. ids: online, pac, pac-alpha, mq, mq-alpha, padded.
double theoretical_bound(const std::string& construction_id, const TheoremParams& params, unsigned n);

inline constexpr unsigned kPacEnumerationMaxN = 3;
inline constexpr unsigned kMqEnumerationMaxN = 4;

}  // namespace galelab
