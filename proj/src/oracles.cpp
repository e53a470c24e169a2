#include "galelab/oracles.hpp"

namespace galelab::oracles {

namespace {

class CountingCursor final : public BetCursor {
public:
  CountingCursor(std::shared_ptr<const ConceptClass> cls, unsigned n_max)
      : cls_(std::move(cls)), n_max_(n_max) {
    extensions_ = cls_->count_blocks(0);
  }

  Rational fraction_one() override {
    if (block_ > n_max_)
      throw_error(ErrorKind::Budget, "counting gale built for blocks 0.." + std::to_string(n_max_));
    if (extensions_ == 0) return Rational(1, 2);  // off-class dead branch
    compute_one_extensions();
    return Rational(one_extensions_, extensions_);
  }

  void advance(int bit) override {
    if (extensions_ != 0) {
      compute_one_extensions();
      extensions_ = bit ? one_extensions_ : extensions_ - one_extensions_;
    }
    prefix_.push_back(bit);
    one_valid_ = false;
    if (prefix_.size() == block_length(block_)) {
      ++block_;
      prefix_ = BitString{};
      extensions_ = (block_ <= n_max_) ? cls_->count_blocks(block_) : BigInt(0);
    }
  }

  std::unique_ptr<BetCursor> clone() const override {
    return std::make_unique<CountingCursor>(*this);
  }

private:
  void compute_one_extensions() {
    if (one_valid_) return;
    BitString extended = prefix_;
    extended.push_back(1);
    one_extensions_ = cls_->count_extensions(block_, extended);
    one_valid_ = true;
  }

  std::shared_ptr<const ConceptClass> cls_;
  unsigned n_max_;
  unsigned block_ = 0;
  BitString prefix_;
  BigInt extensions_;      // valid blocks extending the current within-block prefix
  BigInt one_extensions_;  // of those, the ones whose next bit is 1
  bool one_valid_ = false;
};

}  // namespace

BettingStrategy counting_gale(std::shared_ptr<const ConceptClass> cls, const Rational& s,
                              unsigned n_max) {
  if (cls->count_blocks(0) == 0)
    throw_error(ErrorKind::EmptyClass, cls->name() + " has no valid block at n=0");
  return BettingStrategy(s, [cls, n_max]() -> std::unique_ptr<BetCursor> {
    return std::make_unique<CountingCursor>(cls, n_max);
  });
}

BigInt class_count(const ConceptClass& cls, unsigned n) { return cls.count_blocks(n); }

BlockCensus census(const ConceptClass& cls, unsigned n) {
  BlockCensus out{n, {}, cls.count_blocks(n)};
  try {
    out.members = cls.enumerate_blocks(n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Budget) throw;  // count-only census past the enumeration budget
  }
  return out;
}

BlockCensus exhaustive_good_set_pac(const PACLearner& learner, unsigned n,
                                    const std::vector<std::size_t>& example_set,
                                    const Rational& epsilon, const Rational& delta) {
  if (n > 3) throw_error(ErrorKind::Budget, "PAC good-set enumeration limited to n <= 3");
  const std::size_t len = block_length(n);
  BlockCensus out{n, {}, 0};
  for (std::uint64_t widx = 0; widx < (std::uint64_t{1} << len); ++widx) {
    const BitString w = BitString::from_index(len, widx);
    std::vector<LabeledExample> sample;
    sample.reserve(example_set.size());
    for (auto p : example_set) sample.push_back({p, w[p]});
    const BitString h = learner.learn(n, epsilon, delta, sample);
    if (error_rate(h, w) <= epsilon) {
      out.members.push_back(w);
      ++out.count;
    }
  }
  return out;
}

BlockCensus exhaustive_good_set_mq(const MQLearner& learner, unsigned n, std::size_t query_budget) {
  if (n > 4) throw_error(ErrorKind::Budget, "MQ good-set enumeration limited to n <= 4");
  const std::size_t len = block_length(n);
  BlockCensus out{n, {}, 0};
  for (std::uint64_t widx = 0; widx < (std::uint64_t{1} << len); ++widx) {
    const BitString w = BitString::from_index(len, widx);
    auto oracle = [&w](std::size_t pos) { return w[pos]; };
    const MQRunResult run = learner.run(n, oracle, query_budget);
    if (!run.budget_exhausted && run.queries_used <= query_budget && run.hypothesis == w) {
      out.members.push_back(w);
      ++out.count;
    }
  }
  return out;
}

Rational within_block_fraction_product(const ConceptClass& cls, unsigned n, const BitString& block) {
  if (block.size() != block_length(n))
    throw_error(ErrorKind::Domain, "block has wrong length for n=" + std::to_string(n));
  Rational product = 1;
  BigInt extensions = cls.count_blocks(n);
  BitString prefix;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (extensions == 0) {
      product /= BigInt(1) << (block.size() - i);  // uniform fallback
      break;
    }
    BitString extended = prefix;
    extended.push_back(1);
    const BigInt ones = cls.count_extensions(n, extended);
    const BigInt chosen = block[i] ? ones : extensions - ones;
    product *= Rational(chosen, extensions);
    extensions = chosen;
    prefix.push_back(block[i]);
    if (extensions == 0 && i + 1 < block.size()) {
      product = 0;
      break;
    }
  }
  return product;
}

std::string census_to_csv(const BlockCensus& c) {
  std::string out = "n,count,member_bits\n";
  const std::string head = std::to_string(c.n) + "," + c.count.str() + ",";
  if (c.count <= 256 && !c.members.empty()) {
    for (const auto& m : c.members) out += head + m.to_string() + "\n";
  } else {
    out += head + "\n";
  }
  return out;
}

}  // namespace galelab::oracles
