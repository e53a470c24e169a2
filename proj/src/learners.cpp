#include "galelab/learners.hpp"

#include <algorithm>
#include <map>

namespace galelab {

namespace {

unsigned block_exponent(const BitString& block) {
  const std::size_t len = block.size();
  if (len == 0 || (len & (len - 1)) != 0)
    throw_error(ErrorKind::Domain, "block length must be a power of two");
  unsigned n = 0;
  while (block_length(n) < len) ++n;
  return n;
}

// enumerations for n = 0..n_cap, shared by the learners below
struct EnumeratedClass {
  EnumeratedClass(std::shared_ptr<const ConceptClass> cls, unsigned n_cap) : cls(std::move(cls)) {
    blocks.reserve(n_cap + 1);
    for (unsigned n = 0; n <= n_cap; ++n) blocks.push_back(this->cls->enumerate_blocks(n));
  }

  const std::vector<BitString>& at(unsigned n) const {
    if (n >= blocks.size())
      throw_error(ErrorKind::Budget, "learner built for n <= " + std::to_string(blocks.size() - 1));
    if (blocks[n].empty()) throw_error(ErrorKind::EmptyClass, cls->name() + " is empty at n=" + std::to_string(n));
    return blocks[n];
  }

  std::shared_ptr<const ConceptClass> cls;
  std::vector<std::vector<BitString>> blocks;
};

bool consistent_with_prefix(const BitString& block, const BitString& prefix) {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (block[i] != prefix[i]) return false;
  return true;
}

}  // namespace

OnlineLearner predict_zero_learner() {
  return {"predict_zero", [](unsigned, const BitString&) { return 0; }};
}

OnlineLearner halving_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap) {
  auto enumerated = std::make_shared<EnumeratedClass>(std::move(cls), n_cap);
  auto predict = [enumerated](unsigned n, const BitString& prefix) -> int {
    const std::size_t k = prefix.size();
    if (k >= block_length(n)) throw_error(ErrorKind::Domain, "history covers the whole block");
    std::size_t ones = 0, total = 0;
    for (const auto& b : enumerated->at(n)) {
      if (!consistent_with_prefix(b, prefix)) continue;
      ++total;
      ones += static_cast<std::size_t>(b[k]);
    }
    if (total == 0)
      throw_error(ErrorKind::Contract, "no class member is consistent with the history");
    return (2 * ones > total) ? 1 : 0;
  };
  return {"halving(" + enumerated->cls->name() + ")", std::move(predict)};
}

std::size_t count_mistakes(const OnlineLearner& learner, const BitString& block) {
  const unsigned n = block_exponent(block);
  std::size_t mistakes = 0;
  for (std::size_t k = 0; k < block.size(); ++k)
    if (learner.predict(n, block.prefix(k)) != block[k]) ++mistakes;
  return mistakes;
}

OnlineLearner eq_to_online(EQLearner eq, unsigned n_cap) {
  auto shared_eq = std::make_shared<EQLearner>(std::move(eq));
  // Replays the whole interaction per prediction: counterexamples are exactly
  // the realized mistakes inside `prefix`, and once the current hypothesis
  // agrees with the rest of the history the pending query is answered YES.
  // Determinism of the learner makes successive replays consistent.
  auto predict = [shared_eq, n_cap](unsigned n, const BitString& prefix) -> int {
    if (n > n_cap) throw_error(ErrorKind::Budget, "reduction built for n <= " + std::to_string(n_cap));
    std::size_t scan_from = 0;
    auto oracle = [&](const BitString& h) -> std::optional<std::size_t> {
      for (std::size_t i = scan_from; i < prefix.size(); ++i) {
        if (h[i] != prefix[i]) {
          scan_from = i + 1;
          return i;
        }
      }
      return std::nullopt;
    };
    const EqRunResult run = shared_eq->run(n, oracle);
    return run.hypothesis[prefix.size()];
  };
  return {"eq_to_online(" + shared_eq->name + ")", std::move(predict)};
}

EQLearner lex_consistent_eq_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap) {
  auto enumerated = std::make_shared<EnumeratedClass>(std::move(cls), n_cap);
  auto run = [enumerated](unsigned n, const EqOracle& oracle) -> EqRunResult {
    const auto& members = enumerated->at(n);
    std::map<std::size_t, int> pinned;
    EqRunResult result;
    const std::size_t max_queries = members.size() + 1;
    while (result.queries.size() < max_queries) {
      const BitString* hypothesis = nullptr;
      for (const auto& b : members) {
        bool ok = true;
        for (const auto& [pos, label] : pinned)
          if (b[pos] != label) {
            ok = false;
            break;
          }
        if (ok) {
          hypothesis = &b;
          break;
        }
      }
      if (hypothesis == nullptr)
        throw_error(ErrorKind::Contract, "target is inconsistent with every class member");
      result.queries.push_back(*hypothesis);
      const auto counterexample = oracle(*hypothesis);
      if (!counterexample) {
        result.hypothesis = *hypothesis;
        return result;
      }
      pinned[*counterexample] = 1 - (*hypothesis)[*counterexample];
    }
    throw_error(ErrorKind::Budget, "equivalence learner exceeded its query budget");
  };
  return {"lex_eq(" + enumerated->cls->name() + ")", std::move(run)};
}

MQLearner padded_mq_learner(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1)
    throw_error(ErrorKind::Domain, "padded MQ learner requires 0 < alpha < 1");
  auto run = [alpha](unsigned n, const std::function<int(std::size_t)>& oracle,
                     std::size_t budget) -> MQRunResult {
    const std::size_t free = floor_mul_pow2(alpha, n).convert_to<std::size_t>();
    MQRunResult out;
    std::vector<std::uint8_t> bits(block_length(n), 0);
    for (std::size_t i = 0; i < free; ++i) {
      if (out.queries_used == budget) {
        out.budget_exhausted = true;
        break;
      }
      bits[i] = static_cast<std::uint8_t>(oracle(i) & 1);
      ++out.queries_used;
    }
    out.hypothesis = BitString(std::move(bits));
    return out;
  };
  return {"padded_mq(" + format_rational(alpha) + ")", std::move(run)};
}

PACLearner erm_pac_learner(std::shared_ptr<const ConceptClass> cls, unsigned n_cap) {
  auto enumerated = std::make_shared<EnumeratedClass>(std::move(cls), n_cap);
  auto learn = [enumerated](unsigned n, const Rational&, const Rational&,
                            const std::vector<LabeledExample>& sample) -> BitString {
    // canonicalize to a set so the output ignores order and duplicates
    std::map<std::pair<std::size_t, int>, bool> constraints;
    for (const auto& ex : sample) {
      if (ex.position >= block_length(n))
        throw_error(ErrorKind::Domain, "example position outside the instance space");
      constraints[{ex.position, ex.label & 1}] = true;
    }
    const BitString* best = nullptr;
    std::size_t best_violations = 0;
    for (const auto& b : enumerated->at(n)) {
      std::size_t violations = 0;
      for (const auto& [key, _] : constraints)
        if (b[key.first] != key.second) ++violations;
      if (best == nullptr || violations < best_violations) {
        best = &b;
        best_violations = violations;
        if (violations == 0) break;  // lexicographically least consistent block
      }
    }
    return *best;
  };
  return {"erm(" + enumerated->cls->name() + ")", std::move(learn)};
}

Rational error_rate(const BitString& h, const BitString& c) {
  if (h.size() != c.size() || h.empty())
    throw_error(ErrorKind::Domain, "error_rate requires equal nonempty lengths");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != c[i]) ++diff;
  return Rational(diff, h.size());
}

}  // namespace galelab
