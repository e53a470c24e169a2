#include "galelab/constructions.hpp"

#include <cmath>

#include "galelab/entropy.hpp"

namespace galelab {

BudgetFn budget_from_table(std::vector<std::size_t> table) {
  return [table = std::move(table)](unsigned n) -> std::size_t {
    if (n >= table.size())
      throw_error(ErrorKind::Budget, "budget table has no entry for n=" + std::to_string(n));
    return table[n];
  };
}

BudgetFn budget_floor_alpha(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw_error(ErrorKind::Domain, "budget alpha must lie in [0,1]");
  return [alpha](unsigned n) { return floor_mul_pow2(alpha, n).convert_to<std::size_t>(); };
}

namespace {

// walks blocks of the characteristic-sequence layout
struct BlockWalker {
  unsigned block = 0;
  std::size_t offset = 0;

  void step() {
    if (++offset == block_length(block)) {
      ++block;
      offset = 0;
    }
  }
};

class OnlineCursor final : public BetCursor {
public:
  OnlineCursor(std::shared_ptr<const OnlineLearner> learner, Rational stake_off)
      : learner_(std::move(learner)), stake_off_(std::move(stake_off)) {}

  Rational fraction_one() override {
    const int predicted = learner_->predict(walker_.block, history_);
    return predicted == 1 ? Rational(1) - stake_off_ : stake_off_;
  }

  void advance(int bit) override {
    history_.push_back(bit);
    walker_.step();
    if (walker_.offset == 0) history_ = BitString{};
  }

  std::unique_ptr<BetCursor> clone() const override {
    return std::make_unique<OnlineCursor>(*this);
  }

private:
  std::shared_ptr<const OnlineLearner> learner_;
  Rational stake_off_;  // alpha + delta
  BlockWalker walker_;
  BitString history_;
};

class PaddedCursor final : public BetCursor {
public:
  explicit PaddedCursor(Rational alpha) : alpha_(std::move(alpha)) { refresh(); }

  Rational fraction_one() override {
    return (walker_.offset < free_count_) ? Rational(1, 2) : Rational(0);
  }

  void advance(int) override {
    walker_.step();
    if (walker_.offset == 0) refresh();
  }

  std::unique_ptr<BetCursor> clone() const override { return std::make_unique<PaddedCursor>(*this); }

private:
  void refresh() { free_count_ = floor_mul_pow2(alpha_, walker_.block).convert_to<std::size_t>(); }

  Rational alpha_;
  BlockWalker walker_;
  std::size_t free_count_ = 0;
};

class ProductCursor final : public BetCursor {
public:
  explicit ProductCursor(std::shared_ptr<const std::vector<BlockMeasure>> blocks)
      : blocks_(std::move(blocks)) {}

  Rational fraction_one() override {
    if (walker_.block >= blocks_->size())
      throw_error(ErrorKind::Budget,
                  "product gale only covers blocks 0.." + std::to_string(blocks_->size() - 1));
    const auto& values = (*blocks_)[walker_.block].values();
    const Rational& here = values[node_];
    if (here == 0) return Rational(1, 2);  // capital is already dead along this path
    return values[2 * node_ + 2] / here;
  }

  void advance(int bit) override {
    node_ = 2 * node_ + 1 + static_cast<std::size_t>(bit & 1);
    walker_.step();
    if (walker_.offset == 0) node_ = 0;
  }

  std::unique_ptr<BetCursor> clone() const override { return std::make_unique<ProductCursor>(*this); }

private:
  std::shared_ptr<const std::vector<BlockMeasure>> blocks_;
  BlockWalker walker_;
  std::size_t node_ = 0;
};

// exact conditional-count measure over one block from a goodness profile:
// leaf weight = [good], internal = children sum, normalized by the total;
// an empty profile falls back to the uniform measure.
BlockMeasure measure_from_good_profile(unsigned n, const std::vector<char>& good, BigInt& total_out,
                                       bool& fallback_out) {
  const std::size_t len = block_length(n);
  const std::size_t nodes = (std::size_t{2} << len) - 1;
  std::vector<BigInt> counts(nodes, 0);
  const std::size_t first_leaf = (std::size_t{1} << len) - 1;
  for (std::size_t i = 0; i < good.size(); ++i) counts[first_leaf + i] = good[i] ? 1 : 0;
  for (std::size_t v = first_leaf; v-- > 0;) counts[v] = counts[2 * v + 1] + counts[2 * v + 2];
  total_out = counts[0];
  fallback_out = (total_out == 0);
  std::vector<Rational> values(nodes);
  if (fallback_out) {
    std::size_t level_start = 0;
    for (std::size_t level = 0; level <= len; ++level) {
      const std::size_t width = std::size_t{1} << level;
      for (std::size_t i = 0; i < width; ++i)
        values[level_start + i] = Rational(BigInt(1), BigInt(1) << level);
      level_start += width;
    }
  } else {
    for (std::size_t v = 0; v < nodes; ++v) values[v] = Rational(counts[v], total_out);
  }
  return BlockMeasure(n, std::move(values));
}

std::vector<std::vector<std::size_t>> enumerate_example_sets(std::size_t universe, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  // subsets in increasing size, lexicographic within a size
  std::function<void(std::size_t, std::size_t)> emit = [&](std::size_t start, std::size_t left) {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = start; p < universe; ++p) {
      current.push_back(p);
      emit(p + 1, left - 1);
      current.pop_back();
    }
  };
  for (std::size_t size = 0; size <= std::min(universe, max_size); ++size) emit(0, size);
  return out;
}

}  // namespace

BettingStrategy online_to_gale(OnlineLearner learner, const Rational& alpha,
                               const Rational& delta, const Rational& s) {
  if (alpha < 0 || delta <= 0)
    throw_error(ErrorKind::Domain, "online_to_gale requires alpha >= 0 and delta > 0");
  const Rational stake_off = alpha + delta;
  if (stake_off >= Rational(1, 2))
    throw_error(ErrorKind::Domain, "online_to_gale requires alpha + delta < 1/2");
  auto shared = std::make_shared<const OnlineLearner>(std::move(learner));
  return BettingStrategy(s, [shared, stake_off]() -> std::unique_ptr<BetCursor> {
    return std::make_unique<OnlineCursor>(shared, stake_off);
  });
}

BlockMeasure::BlockMeasure(unsigned n, std::vector<Rational> values)
    : n_(n), values_(std::move(values)) {
  const std::size_t expected = (std::size_t{2} << block_length(n)) - 1;
  if (values_.size() != expected)
    throw_error(ErrorKind::Incomplete, "block measure table has wrong size");
}

const Rational& BlockMeasure::at(const BitString& v) const {
  if (v.size() > block_length(n_))
    throw_error(ErrorKind::Domain, "prefix longer than the block");
  return values_[ExtensionalGale::node_index(v)];
}

bool BlockMeasure::additivity_holds() const {
  if (values_[0] != 1) return false;
  const std::size_t internal = (std::size_t{1} << block_length(n_)) - 1;
  for (std::size_t v = 0; v < internal; ++v)
    if (values_[2 * v + 1] + values_[2 * v + 2] != values_[v]) return false;
  return true;
}

ExtensionalGale BlockMeasure::to_extensional(const Rational& s) const {
  const std::size_t depth = block_length(n_);
  std::vector<Rational> table(values_.size());
  std::size_t level_start = 0;
  for (std::size_t level = 0; level <= depth; ++level) {
    const std::size_t width = std::size_t{1} << level;
    for (std::size_t i = 0; i < width; ++i)
      table[level_start + i] = values_[level_start + i] * (BigInt(1) << level);
    level_start += width;
  }
  return ExtensionalGale(s, static_cast<unsigned>(depth), std::move(table));
}

BettingStrategy product_strategy(Rational s, std::shared_ptr<const std::vector<BlockMeasure>> blocks) {
  return BettingStrategy(std::move(s), [blocks]() -> std::unique_ptr<BetCursor> {
    return std::make_unique<ProductCursor>(blocks);
  });
}

PacGale pac_to_gale(PACLearner learner, const Rational& epsilon, const Rational& delta,
                    BudgetFn xi, const Rational& s, unsigned n_max) {
  if (n_max > kPacEnumerationMaxN)
    throw_error(ErrorKind::Budget, "pac_to_gale enumeration limited to n_max <= 3");
  if (epsilon < 0 || epsilon > 1) throw_error(ErrorKind::Domain, "epsilon must lie in [0,1]");
  std::vector<PacBlockData> blocks;
  auto measures = std::make_shared<std::vector<BlockMeasure>>();
  for (unsigned n = 0; n <= n_max; ++n) {
    const std::size_t len = block_length(n);
    const std::size_t block_count = std::size_t{1} << len;
    PacBlockData data{n,
                      enumerate_example_sets(len, xi(n)),
                      {},
                      {},
                      {},
                      BlockMeasure(n, std::vector<Rational>((std::size_t{2} << len) - 1))};
    const std::size_t q_count = data.example_sets.size();
    data.good.resize(q_count);
    data.good_count.resize(q_count);
    data.uniform_fallback.resize(q_count);

    // per-Q conditional measures, averaged into d_n with exact rationals
    const std::size_t nodes = (std::size_t{2} << len) - 1;
    std::vector<Rational> d_n(nodes);
    for (std::size_t qi = 0; qi < q_count; ++qi) {
      const auto& positions = data.example_sets[qi];
      auto& good = data.good[qi];
      good.resize(block_count);
      for (std::size_t widx = 0; widx < block_count; ++widx) {
        const BitString w = BitString::from_index(len, widx);
        std::vector<LabeledExample> sample;
        sample.reserve(positions.size());
        for (auto p : positions) sample.push_back({p, w[p]});
        const BitString h = learner.learn(n, epsilon, delta, sample);
        good[widx] = (error_rate(h, w) <= epsilon) ? 1 : 0;
      }
      BigInt total;
      bool fallback = false;
      BlockMeasure conditional = measure_from_good_profile(n, good, total, fallback);
      data.good_count[qi] = total;
      data.uniform_fallback[qi] = fallback ? 1 : 0;
      for (std::size_t v = 0; v < nodes; ++v) d_n[v] += conditional.values()[v];
    }
    for (auto& value : d_n) value /= BigInt(q_count);
    data.measure = BlockMeasure(n, std::move(d_n));
    measures->push_back(data.measure);
    blocks.push_back(std::move(data));
  }
  PacGale out{s, epsilon, delta, n_max, std::move(blocks), product_strategy(s, measures)};
  return out;
}

Rational PacGale::good_fraction(unsigned n, const BitString& block) const {
  const auto& data = blocks.at(n);
  const std::uint64_t idx = block.to_index();
  BigInt hits = 0;
  for (const auto& good : data.good)
    if (good[idx]) ++hits;
  return Rational(hits, BigInt(data.good.size()));
}

MqGale mq_to_gale(MQLearner learner, BudgetFn q, const Rational& s, unsigned n_max) {
  if (n_max > kMqEnumerationMaxN)
    throw_error(ErrorKind::Budget, "mq_to_gale enumeration limited to n_max <= 4");
  std::vector<MqBlockData> blocks;
  auto measures = std::make_shared<std::vector<BlockMeasure>>();
  for (unsigned n = 0; n <= n_max; ++n) {
    const std::size_t len = block_length(n);
    const std::size_t block_count = std::size_t{1} << len;
    const std::size_t budget = q(n);
    std::vector<char> good(block_count, 0);
    for (std::size_t widx = 0; widx < block_count; ++widx) {
      const BitString w = BitString::from_index(len, widx);
      auto oracle = [&w](std::size_t pos) { return w[pos]; };
      const MQRunResult run = learner.run(n, oracle, budget);
      good[widx] =
          (!run.budget_exhausted && run.queries_used <= budget && run.hypothesis == w) ? 1 : 0;
    }
    BigInt total;
    bool fallback = false;
    BlockMeasure measure = measure_from_good_profile(n, good, total, fallback);
    const bool count_ok = total <= (BigInt(1) << budget);
    measures->push_back(measure);
    blocks.push_back(MqBlockData{n, budget, std::move(good), total, count_ok, fallback,
                                 std::move(measure)});
  }
  MqGale out{s, n_max, std::move(blocks), product_strategy(s, measures)};
  return out;
}

BettingStrategy padded_gale(const Rational& alpha, const Rational& s) {
  if (alpha <= 0 || alpha >= 1) throw_error(ErrorKind::Domain, "padded gale requires 0 < alpha < 1");
  return BettingStrategy(s, [alpha]() -> std::unique_ptr<BetCursor> {
    return std::make_unique<PaddedCursor>(alpha);
  });
}

LanguagePrefix diagonalize_against(const BettingStrategy& d, const Rational& alpha, unsigned n_max) {
  if (alpha <= 0 || alpha >= 1)
    throw_error(ErrorKind::Domain, "diagonalization requires 0 < alpha < 1");
  const std::size_t total = boundary_length(n_max);
  if (total > kDefaultEvalBudget)
    throw_error(ErrorKind::Budget, "diagonalization prefix exceeds the evaluation budget");
  auto cursor = d.cursor();
  BitString bits;
  BlockWalker walker;
  std::size_t free_count = floor_mul_pow2(alpha, 0).convert_to<std::size_t>();
  for (std::size_t pos = 0; pos < total; ++pos) {
    int bit = 0;
    if (walker.offset < free_count) {
      const Rational pi_one = cursor->fraction_one();
      // d(w b) is proportional to the stake on b; ties go to 0
      bit = (pi_one < Rational(1) - pi_one) ? 1 : 0;
    }
    cursor->advance(bit);
    bits.push_back(bit);
    walker.step();
    if (walker.offset == 0) free_count = floor_mul_pow2(alpha, walker.block).convert_to<std::size_t>();
  }
  return LanguagePrefix(std::move(bits), n_max);
}

double theoretical_bound(const std::string& construction_id, const TheoremParams& params, unsigned n) {
  const double len = static_cast<double>(boundary_length(n));
  const double s = to_bigfloat(params.s).convert_to<double>();
  auto entropy_of = [](const Rational& p) { return entropy::shannon(p).convert_to<double>(); };
  auto require = [&](const std::optional<Rational>& p, const char* what) -> const Rational& {
    if (!p) throw_error(ErrorKind::Domain, std::string("bound needs parameter ") + what);
    return *p;
  };
  auto budget_sum = [&](const BudgetFn& fn, const char* what) {
    if (!fn) throw_error(ErrorKind::Domain, std::string("bound needs budget ") + what);
    double acc = 0;
    for (unsigned i = 0; i <= n; ++i) acc += static_cast<double>(fn(i));
    return acc;
  };

  if (construction_id == "online") {
    const double eps = (s - entropy_of(require(params.alpha, "alpha"))) / 2.0;
    return eps * len;
  }
  if (construction_id == "pac") {
    const double h_eps = entropy_of(require(params.epsilon, "epsilon"));
    const Rational& delta = require(params.delta, "delta");
    return (s - h_eps) * len + (n + 1) * log2_rational(Rational(1) - delta) -
           budget_sum(params.example_budget, "xi");
  }
  if (construction_id == "pac-alpha") {
    const double h_eps = entropy_of(require(params.epsilon, "epsilon"));
    const Rational& delta = require(params.delta, "delta");
    const double alpha = to_bigfloat(require(params.alpha, "alpha")).convert_to<double>();
    return (s - h_eps - alpha) * len + (n + 1) * log2_rational(Rational(1) - delta);
  }
  if (construction_id == "mq") {
    return s * len - budget_sum(params.query_budget, "q");
  }
  if (construction_id == "mq-alpha") {
    const double alpha = to_bigfloat(require(params.alpha, "alpha")).convert_to<double>();
    return (s - alpha) * len;
  }
  if (construction_id == "padded") {
    const Rational& alpha = require(params.alpha, "alpha");
    BigInt padded_free = 0;
    for (unsigned i = 0; i <= n; ++i) padded_free += floor_mul_pow2(alpha, i);
    return s * len - padded_free.convert_to<double>();
  }
  throw_error(ErrorKind::Unknown, "unknown construction id '" + construction_id + "'");
}

}  // namespace galelab
