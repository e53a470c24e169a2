#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galelab/bits.hpp"
#include "galelab/concepts.hpp"
#include "galelab/numeric.hpp"

namespace galelab {

// On-line protocol, lexicographic example order: block_prefix holds the
// correct labels of the examples already presented; predict returns the label
// guessed for the next one.
struct OnlineLearner {
  std::string name;
  std::function<int(unsigned n, const BitString& block_prefix)> predict;
};

struct MQRunResult {
  BitString hypothesis;
  std::size_t queries_used = 0;
  bool budget_exhausted = false;
};

// Membership-query learner: oracle(position) is the target's label there.
struct MQLearner {
  std::string name;
  std::function<MQRunResult(unsigned n, const std::function<int(std::size_t)>& oracle,
                            std::size_t budget)>
      run;
};

struct LabeledExample {
  std::size_t position;
  int label;
};

struct PACLearner {
  std::string name;
  std::function<BitString(unsigned n, const Rational& eps, const Rational& delta,
                          const std::vector<LabeledExample>& sample)>
      learn;
};

// Equivalence-query oracle: nullopt answers YES, otherwise the position of a
// counterexample (the target's label there is the complement of h's).
using EqOracle = std::function<std::optional<std::size_t>(const BitString& hypothesis)>;

struct EqRunResult {
  BitString hypothesis;
  std::vector<BitString> queries;
};

struct EQLearner {
  std::string name;
  std::function<EqRunResult(unsigned n, const EqOracle& oracle)> run;
};

// predicts 0 on every example
OnlineLearner predict_zero_learner();

// majority vote among the enumerated blocks consistent with the history;
// ties predict 0. Valid for n <= n_cap.
OnlineLearner halving_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap);

// mistakes of the learner over one full block presented in lexicographic order
std::size_t count_mistakes(const OnlineLearner& learner, const BitString& block);

// Standard reduction: predict with the equivalence learner's current
// hypothesis and feed each realized mistake back as a counterexample.
OnlineLearner eq_to_online(EQLearner eq, unsigned n_cap);

// proposes the lexicographically least class member consistent with all
// counterexamples received so far
EQLearner lex_consistent_eq_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap);

// queries exactly the floor(alpha*2^n) free positions of the padded class and
// fills everything else with zeros
MQLearner padded_mq_learner(const Rational& alpha);

// lexicographically least enumerated block consistent with the sample, or the
// least block minimizing disagreements when none is consistent
PACLearner erm_pac_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap);

// fraction of positions where the blocks differ (uniform distribution), exact
Rational error_rate(const BitString& h, const BitString& c);

}  // namespace galelab
