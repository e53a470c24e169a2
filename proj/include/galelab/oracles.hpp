#pragma once

#include <memory>
#include <string>
#include <vector>

#include "galelab/concepts.hpp"
#include "galelab/gale.hpp"
#include "galelab/learners.hpp"

namespace galelab::oracles {

struct BlockCensus {
  unsigned n;
  std::vector<BitString> members;  // listed when small enough to enumerate
  BigInt count;
};

// Conditional-proportion betting over the class's block family: the stake on
// bit b at within-block prefix v is #extensions(vb) / #extensions(v). The
// brute-force optimal reference for every construction.
BettingStrategy counting_gale(std::shared_ptr<const ConceptClass> cls, const Rational& s,
                              unsigned n_max);

// exact #enumerate_blocks(n) via the class's counting route
BigInt class_count(const ConceptClass& cls, unsigned n);

// enumerated census when feasible, count-only otherwise
BlockCensus census(const ConceptClass& cls, unsigned n);

// every block of length 2^n that is good for the PAC learner w.r.t. the
// example set Q at error epsilon (recomputed from the definition)
BlockCensus exhaustive_good_set_pac(const PACLearner& learner, unsigned n,
                                    const std::vector<std::size_t>& example_set,
                                    const Rational& epsilon, const Rational& delta);

// every block the MQ learner recovers exactly within the query budget
BlockCensus exhaustive_good_set_mq(const MQLearner& learner, unsigned n, std::size_t query_budget);

// exact product of the counting-gale fractions along one block (equals
// 1/class_count(n) for members)
Rational within_block_fraction_product(const ConceptClass& cls, unsigned n, const BitString& block);

// columns: n,count,member_bits (one row per member when count <= 256)
std::string census_to_csv(const BlockCensus& c);

}  // namespace galelab::oracles
