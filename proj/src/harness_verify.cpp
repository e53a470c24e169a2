#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "galelab/entropy.hpp"
#include "galelab/harness.hpp"
#include "galelab/oracles.hpp"
#include "galelab/rng.hpp"

namespace galelab::harness {

namespace {

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

using Suite = std::function<std::vector<Check>()>;

void add(std::vector<Check>& out, const std::string& name, bool pass, std::string detail = "") {
  out.push_back({name, pass, std::move(detail)});
}

const double kTwoPowMinus39 = std::ldexp(1.0, -39);
const double kTwoPowMinus40 = std::ldexp(1.0, -40);

Rational random_rational(SplitMix64& rng, std::uint64_t max_den) {
  const std::uint64_t den = 2 + rng.below(max_den - 1);
  const std::uint64_t num = 1 + rng.below(den - 1);
  return Rational(num, den);  // strictly inside (0,1)
}

BitString random_bits(SplitMix64& rng, std::size_t len) {
  BitString b;
  for (std::size_t i = 0; i < len; ++i) b.push_back(rng.coin() ? 1 : 0);
  return b;
}

// ---- entropy ----------------------------------------------------------

std::vector<Check> suite_entropy() {
  std::vector<Check> out;
  using entropy::shannon;

  add(out, "H(0)=0", shannon(Rational(0)) == 0);
  add(out, "H(1)=0", shannon(Rational(1)) == 0);
  add(out, "H(1/2)=1", abs(shannon(Rational(1, 2)) - 1).convert_to<double>() <= kTwoPowMinus40);
  add(out, "H(1/4) high-precision value",
      abs(shannon(Rational(1, 4)) - BigFloat("0.81127812445913286390969579203913761843")).convert_to<double>() <=
          kTwoPowMinus40);

  SplitMix64 rng(0x5eed);
  bool symmetric = true;
  for (int i = 0; i < 64 && symmetric; ++i) {
    const Rational a = random_rational(rng, 10'000);
    symmetric = abs(shannon(a) - shannon(Rational(1) - a)).convert_to<double>() <= kTwoPowMinus39;
  }
  add(out, "H(alpha) = H(1-alpha)", symmetric, "64 random rationals");

  bool min_at_alpha = true;
  for (int i = 0; i < 64 && min_at_alpha; ++i) {
    const Rational a = random_rational(rng, 1'000) / 2;  // in (0,1/2)
    const Rational x = random_rational(rng, 1'000);
    if (x == a) continue;
    min_at_alpha =
        (entropy::cross_h(a, x) - shannon(a)).convert_to<double>() > -kTwoPowMinus39 &&
        abs(entropy::cross_h(a, a) - shannon(a)).convert_to<double>() <= kTwoPowMinus40;
  }
  add(out, "h_alpha(x) >= h_alpha(alpha) = H(alpha)", min_at_alpha, "64 random pairs");

  bool inverse_ok = true;
  std::string inverse_detail;
  for (double beta : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    const double gamma = entropy::inverse(beta);
    const double back = shannon(dyadic_from_double(gamma, 52)).convert_to<double>();
    if (gamma > 0.5 || std::fabs(back - beta) > 1e-9) {
      inverse_ok = false;
      inverse_detail = "failed at beta=" + std::to_string(beta);
    }
  }
  add(out, "H(inverse(beta)) = beta +- 1e-9, inverse <= 1/2", inverse_ok, inverse_detail);
  add(out, "inverse(1/2) reference value",
      std::fabs(entropy::inverse(0.5) - 0.110027864438359551) <= 1e-9);
  add(out, "inverse(1)=1/2", entropy::inverse(1.0) == 0.5);

  add(out, "choose_delta(1/4, 1/20) = 1/16",
      entropy::choose_delta(Rational(1, 4), Rational(1, 20)) == Rational(1, 16));
  add(out, "choose_delta(1/4, 1/2) = 1/8",
      entropy::choose_delta(Rational(1, 4), Rational(1, 2)) == Rational(1, 8));
  add(out, "choose_delta(49/100, 1/1000) keeps alpha+delta < 1/2",
      Rational(49, 100) + entropy::choose_delta(Rational(49, 100), Rational(1, 1000)) <
          Rational(1, 2));
  return out;
}

// ---- binomial tail -----------------------------------------------------

std::vector<Check> suite_binomial_tail() {
  std::vector<Check> out;
  add(out, "tail(8,2) = 37", entropy::binomial_tail(8, 2) == 37);
  add(out, "tail(8,0) = 1", entropy::binomial_tail(8, 0) == 1);
  add(out, "tail(12,12) = 2^12", entropy::binomial_tail(12, 12) == 4096);
  add(out, "tail(16,4) = 2517", entropy::binomial_tail(16, 4) == 2517);

  bool bound_ok = true;
  std::string detail;
  for (std::uint64_t n = 1; n <= 20 && bound_ok; ++n)
    for (std::uint64_t k = 0; 2 * k <= n && bound_ok; ++k)
      if (!entropy::binomial_tail_entropy_bound(n, k)) {
        bound_ok = false;
        detail = "violated at N=" + std::to_string(n) + " k=" + std::to_string(k);
      }
  add(out, "tail(N,k) <= 2^{H(k/N) N} for N <= 20, k <= N/2", bound_ok, detail);
  return out;
}

// ---- concept classes ---------------------------------------------------

std::vector<Check> suite_classes() {
  std::vector<Check> out;

  bool census_ok = true;
  std::string census_detail;
  for (const Rational alpha : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    auto cls = density_class(alpha);
    for (unsigned n = 0; n <= 4 && census_ok; ++n) {
      const BigInt expected =
          entropy::binomial_tail(block_length(n), floor_mul_pow2(alpha, n).convert_to<std::uint64_t>());
      const auto members = cls->enumerate_blocks(n);
      if (BigInt(members.size()) != expected || oracles::class_count(*cls, n) != expected) {
        census_ok = false;
        census_detail = cls->name() + " at n=" + std::to_string(n);
      }
    }
  }
  add(out, "density census = binomial tail (n <= 4)", census_ok, census_detail);

  {
    auto cls = density_class(Rational(1, 4));
    add(out, "density(1/4) n=1 has the single block 00",
        cls->enumerate_blocks(1).size() == 1 && cls->enumerate_blocks(1)[0].to_string() == "00");
    add(out, "density(1/4) n=3 has 37 blocks", cls->enumerate_blocks(3).size() == 37);
  }

  bool padded_ok = true;
  std::string padded_detail;
  for (const Rational alpha : {Rational(1, 4), Rational(1, 2)}) {
    auto cls = padded_class(alpha);
    for (unsigned n = 0; n <= 4 && padded_ok; ++n) {
      const std::size_t free = floor_mul_pow2(alpha, n).convert_to<std::size_t>();
      const auto members = cls->enumerate_blocks(n);
      if (members.size() != (std::size_t{1} << free)) padded_ok = false;
      std::map<std::uint64_t, bool> seen;
      for (const auto& b : members) {
        for (std::size_t i = free; i < b.size(); ++i)
          if (b[i]) padded_ok = false;
        seen[b.prefix(free).to_index()] = true;  // free bits determine the member
      }
      if (seen.size() != members.size()) padded_ok = false;
      if (!padded_ok) padded_detail = cls->name() + " at n=" + std::to_string(n);
    }
  }
  add(out, "padded blocks: zeros outside free positions, free bits bijective", padded_ok,
      padded_detail);
  add(out, "padded(1/2) n=0 is the single block 0",
      padded_class(Rational(1, 2))->enumerate_blocks(0).size() == 1 &&
          padded_class(Rational(1, 2))->enumerate_blocks(0)[0].to_string() == "0");

  bool sampler_ok = true;
  std::string sampler_detail;
  for (const auto& cls : {density_class(Rational(1, 4)), padded_class(Rational(1, 2))}) {
    for (std::uint64_t seed = 1; seed <= 12 && sampler_ok; ++seed) {
      for (SampleMode mode : {SampleMode::Random, SampleMode::Extremal}) {
        const LanguagePrefix lp = sample_language(*cls, 6, seed, mode);
        for (unsigned n = 0; n <= 6; ++n)
          if (!cls->contains_block(n, lp.block(n))) {
            sampler_ok = false;
            sampler_detail = cls->name() + " seed=" + std::to_string(seed);
          }
      }
    }
  }
  add(out, "sampled languages satisfy contains_block everywhere", sampler_ok, sampler_detail);

  {
    auto cls = density_class(Rational(1, 4));
    bool extremal_ok = true;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const LanguagePrefix lp = sample_language(*cls, 6, seed, SampleMode::Extremal);
      for (unsigned n = 0; n <= 6; ++n)
        if (BigInt(lp.block(n).popcount()) != floor_mul_pow2(Rational(1, 4), n)) extremal_ok = false;
    }
    add(out, "extremal density samples hit the ones cap exactly", extremal_ok);
  }

  {
    // counting-dimension estimate against H(alpha) for exactly dyadic alpha
    const Rational alpha(1, 4);
    const double h = entropy::shannon(alpha).convert_to<double>();
    auto cls = density_class(alpha);
    bool estimate_ok = true;
    std::string detail;
    for (unsigned n = 6; n <= 12; ++n) {
      const double len = static_cast<double>(block_length(n));
      const double estimate = log2_bigint(oracles::class_count(*cls, n)) / len;
      const double lower = h - (std::log2(len) + 2.0) / len;
      if (!(lower <= estimate && estimate <= h)) {
        estimate_ok = false;
        detail = "n=" + std::to_string(n) + " estimate=" + std::to_string(estimate);
      }
    }
    add(out, "log2 class_count / 2^n within [H - (log2(2^n)+2)/2^n, H]", estimate_ok, detail);
  }
  return out;
}

// ---- learners -----------------------------------------------------------

std::size_t canonical_eq_queries(const EQLearner& eq, unsigned n, const BitString& target) {
  auto oracle = [&target](const BitString& h) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < target.size(); ++i)
      if (h[i] != target[i]) return i;
    return std::nullopt;
  };
  return eq.run(n, oracle).queries.size();
}

std::vector<Check> suite_learners() {
  std::vector<Check> out;

  {
    SplitMix64 rng(7);
    bool zero_ok = true;
    const OnlineLearner zero = predict_zero_learner();
    for (int i = 0; i < 16; ++i) {
      const BitString block = random_bits(rng, 8);
      if (count_mistakes(zero, block) != block.popcount()) zero_ok = false;
    }
    add(out, "predict_zero mistakes = popcount", zero_ok);
  }

  {
    bool halving_ok = true;
    std::string detail;
    for (const auto& cls : {density_class(Rational(1, 4)), padded_class(Rational(1, 2))}) {
      for (unsigned n = 0; n <= 3 && halving_ok; ++n) {
        const auto members = cls->enumerate_blocks(n);
        const OnlineLearner learner = halving_learner(cls, n);
        const std::size_t budget =
            static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(members.size()))));
        for (const auto& m : members)
          if (count_mistakes(learner, m) > budget) {
            halving_ok = false;
            detail = cls->name() + " n=" + std::to_string(n);
          }
      }
    }
    add(out, "halving mistakes <= ceil(log2 #class) (exhaustive, n <= 3)", halving_ok, detail);
    add(out, "halving on density(1/4) n=3: <= 5 mistakes on all 37 members", [] {
      auto cls = density_class(Rational(1, 4));
      const OnlineLearner learner = halving_learner(cls, 3);
      for (const auto& m : cls->enumerate_blocks(3))
        if (count_mistakes(learner, m) > 5) return false;
      return true;
    }());
  }

  {
    auto cls = density_class(Rational(1, 4));
    const PACLearner erm = erm_pac_learner(cls, 3);
    const auto members = cls->enumerate_blocks(2);
    bool full_sample_ok = true;
    for (const auto& m : members) {
      std::vector<LabeledExample> sample;
      for (std::size_t p = 0; p < m.size(); ++p) sample.push_back({p, m[p]});
      if (erm.learn(2, Rational(0), Rational(1, 8), sample) != m) full_sample_ok = false;
    }
    add(out, "erm on a full sample returns the member", full_sample_ok);
    add(out, "erm on an empty sample returns the least block",
        erm.learn(2, Rational(0), Rational(1, 8), {}) == members.front());
    add(out, "erm density(1/4) n=2 with (pos 0, 1) returns 1000",
        erm.learn(2, Rational(1, 4), Rational(1, 8), {{0, 1}}).to_string() == "1000");

    SplitMix64 rng(11);
    bool invariant_ok = true;
    for (int trial = 0; trial < 24; ++trial) {
      std::vector<LabeledExample> sample;
      const std::size_t len = 1 + rng.below(6);
      for (std::size_t i = 0; i < len; ++i)
        sample.push_back({static_cast<std::size_t>(rng.below(4)), static_cast<int>(rng.below(2))});
      const BitString base = erm.learn(2, Rational(1, 4), Rational(1, 8), sample);
      std::vector<LabeledExample> shuffled = sample;
      for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
      shuffled.push_back(shuffled.front());  // duplicate
      if (erm.learn(2, Rational(1, 4), Rational(1, 8), shuffled) != base) invariant_ok = false;
    }
    add(out, "erm invariant under sample permutation and duplication", invariant_ok);
  }

  {
    bool mq_ok = true;
    std::string detail;
    for (const Rational alpha : {Rational(1, 4), Rational(1, 2)}) {
      const MQLearner learner = padded_mq_learner(alpha);
      auto cls = padded_class(alpha);
      for (unsigned n = 0; n <= 4 && mq_ok; ++n) {
        const std::size_t free = floor_mul_pow2(alpha, n).convert_to<std::size_t>();
        for (const auto& m : cls->enumerate_blocks(n)) {
          auto oracle = [&m](std::size_t pos) { return m[pos]; };
          const MQRunResult run = learner.run(n, oracle, block_length(n));
          if (run.hypothesis != m || run.queries_used != free || run.budget_exhausted) {
            mq_ok = false;
            detail = "alpha=" + format_rational(alpha) + " n=" + std::to_string(n);
          }
        }
      }
    }
    add(out, "padded MQ learner recovers every member with exactly floor(alpha 2^n) queries",
        mq_ok, detail);
  }

  {
    add(out, "error_rate(h,h) = 0",
        error_rate(BitString::from_string("0110"), BitString::from_string("0110")) == 0);
    add(out, "error_rate(h, ~h) = 1",
        error_rate(BitString::from_string("0110"), BitString::from_string("1001")) == 1);
    add(out, "error_rate one differing bit of 8 = 1/8",
        error_rate(BitString::from_string("00000000"), BitString::from_string("00010000")) ==
            Rational(1, 8));
  }

  {
    bool reduction_ok = true;
    std::string detail;
    for (const auto& cls : {padded_class(Rational(1, 2)), density_class(Rational(1, 4))}) {
      for (unsigned n = 0; n <= 3 && reduction_ok; ++n) {
        const EQLearner eq = lex_consistent_eq_learner(cls, n);
        const OnlineLearner online = eq_to_online(eq, n);
        for (const auto& target : cls->enumerate_blocks(n)) {
          const std::size_t mistakes = count_mistakes(online, target);
          const std::size_t queries = canonical_eq_queries(eq, n, target);
          if (mistakes > queries) {
            reduction_ok = false;
            detail = cls->name() + " n=" + std::to_string(n) + " target=" + target.to_string() +
                     " mistakes=" + std::to_string(mistakes) + " queries=" + std::to_string(queries);
          }
        }
      }
    }
    add(out, "eq_to_online mistakes <= EQ query count (exhaustive, n <= 3)", reduction_ok, detail);
  }
  return out;
}

// ---- construction fixtures ----------------------------------------------

Rational dyadic_s_for_online() {
  // s = H(1/4) + 0.1 rounded to 40 fractional bits
  return dyadic_from_double(entropy::shannon(Rational(1, 4)).convert_to<double>() + 0.1, 40);
}

struct NamedStrategy {
  std::string name;
  BettingStrategy strategy;
};

std::vector<NamedStrategy> construction_fixtures() {
  std::vector<NamedStrategy> out;
  out.push_back({"online(predict_zero, 1/4, 1/16)",
                 online_to_gale(predict_zero_learner(), Rational(1, 4), Rational(1, 16),
                                dyadic_s_for_online())});
  out.push_back(
      {"pac(erm over density(1/4), eps=1/4)",
       pac_to_gale(erm_pac_learner(density_class(Rational(1, 4)), 3), Rational(1, 4),
                   Rational(1, 8), budget_floor_alpha(Rational(3, 8)), Rational(1, 2), 3)
           .strategy});
  out.push_back({"mq(padded_mq(1/4))",
                 mq_to_gale(padded_mq_learner(Rational(1, 4)), budget_floor_alpha(Rational(1, 4)),
                            Rational(1, 2), 4)
                     .strategy});
  out.push_back({"padded(1/2, 3/5)", padded_gale(Rational(1, 2), Rational(3, 5))});
  out.push_back({"counting(density(1/4), 13/16)",
                 oracles::counting_gale(density_class(Rational(1, 4)), Rational(13, 16), 12)});
  return out;
}

std::vector<Check> suite_martingale_identities() {
  std::vector<Check> out;
  for (const auto& fixture : construction_fixtures()) {
    const ExtensionalGale frozen = freeze(fixture.strategy, 12);
    const MartingaleReport report = verify_martingale_identity(frozen);
    add(out, "freeze(" + fixture.name + ", depth 12) martingale identity", report.ok,
        report.message);
  }
  return out;
}

std::vector<Check> suite_freeze_consistency() {
  std::vector<Check> out;
  SplitMix64 rng(23);
  for (const auto& fixture : construction_fixtures()) {
    const ExtensionalGale frozen = freeze(fixture.strategy, 10);
    bool agree = true;
    double worst = 0;
    for (int trial = 0; trial < 8; ++trial) {
      const BitString prefix = random_bits(rng, 10);
      const CapitalTrace direct = evaluate(fixture.strategy, prefix);
      const CapitalTrace tabled = evaluate_frozen(frozen, prefix);
      for (std::size_t i = 0; i < direct.samples().size(); ++i) {
        const double a = direct.samples()[i].log2_capital;
        const double b = tabled.samples()[i].log2_capital;
        if (a == b) continue;  // covers the -inf/-inf case
        const double diff = std::fabs(a - b);
        worst = std::max(worst, diff);
        if (!(diff <= 1e-6)) agree = false;
      }
    }
    add(out, "freeze/evaluate agreement <= 1e-6 (" + fixture.name + ")", agree,
        "worst diff " + std::to_string(worst));
  }
  return out;
}

// ---- online chain --------------------------------------------------------

std::vector<Check> suite_online_chain() {
  std::vector<Check> out;
  const Rational alpha(1, 4), delta(1, 16);
  const Rational stake = alpha + delta;
  const Rational s = dyadic_s_for_online();
  auto cls = density_class(alpha);
  const BettingStrategy gale = online_to_gale(predict_zero_learner(), alpha, delta, s);
  const double s_d = to_bigfloat(s).convert_to<double>();
  const double log_hit = log2_rational(Rational(1) - stake);
  const double log_miss = log2_rational(stake);

  bool factor_ok = true;
  bool bound_ok = true;
  const double eps = ((to_bigfloat(s) - entropy::shannon(alpha)) / 2).convert_to<double>();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const LanguagePrefix member = sample_language(*cls, 8, seed, SampleMode::Extremal);
    const CapitalTrace trace = evaluate(gale, member.bits());
    const auto boundaries = trace.boundary_samples();
    double prev = 0;
    for (unsigned n = 0; n < boundaries.size(); ++n) {
      const BitString block = member.block(n);
      const std::size_t mistakes = count_mistakes(predict_zero_learner(), block);
      const double expected = static_cast<double>(mistakes) * log_miss +
                              static_cast<double>(block.size() - mistakes) * log_hit +
                              s_d * static_cast<double>(block.size());
      const double actual = boundaries[n].log2_capital - prev;
      if (std::fabs(actual - expected) > 1e-6) factor_ok = false;
      prev = boundaries[n].log2_capital;
      if (boundaries[n].log2_capital <
          eps * static_cast<double>(boundaries[n].prefix_len) - 1e-6)
        bound_ok = false;
    }
  }
  add(out, "per-block log2 factor = k log2(a+d) + (2^n - k) log2(1-a-d) + s 2^n", factor_ok,
      "extremal members, n <= 8");
  add(out, "boundary capital >= eps (2^{n+1}-1)", bound_ok, "eps = (s - H(alpha))/2");

  // single-step factors straight from the construction's case split
  const Rational pi_zero = Rational(1) - gale.fraction_one(BitString{});
  add(out, "predicted bit carries stake 1-(alpha+delta)", pi_zero == Rational(1) - stake);
  add(out, "capital factor on a correct prediction is (1-(alpha+delta)) 2^s",
      std::fabs(evaluate(gale, BitString::from_string("0")).final_log2_capital() -
                (s_d + log_hit)) <= 1e-9);
  add(out, "capital factor on a missed prediction is (alpha+delta) 2^s",
      std::fabs(evaluate(gale, BitString::from_string("1")).final_log2_capital() -
                (s_d + log_miss)) <= 1e-9);
  return out;
}

// ---- lemma 4.2 ------------------------------------------------------------

std::vector<Check> suite_lemma_42() {
  std::vector<Check> out;
  const Rational epsilon(1, 4);
  auto cls = density_class(Rational(1, 4));
  const PacGale gale = pac_to_gale(erm_pac_learner(cls, 3), epsilon, Rational(1, 8),
                                   budget_floor_alpha(Rational(3, 8)), Rational(1, 2), 3);
  const auto& data = gale.blocks[3];
  add(out, "#Q_3 = 93 example sets with #Q <= 3", data.example_sets.size() == 93,
      std::to_string(data.example_sets.size()) + " sets");

  const double cap =
      entropy::shannon(epsilon).convert_to<double>() * 8.0 + 3.0;  // H(1/4)*8 + xi(3)
  bool b_ok = true;
  BigInt largest = 0;
  for (const auto& count : data.good_count) {
    largest = std::max(largest, count);
    if (count > 0 && log2_bigint(count) > cap) b_ok = false;
  }
  add(out, "#B_{3,Q} <= 2^{H(1/4) 8} 2^3 for all 93 Q", b_ok,
      "largest #B = " + largest.str() + ", bound 2^" + std::to_string(cap));

  bool approx_ok = true;
  for (unsigned n = 0; n <= 3 && approx_ok; ++n) {
    const std::size_t len = block_length(n);
    const std::uint64_t radius = floor_mul_pow2(Rational(1, 4), n).convert_to<std::uint64_t>();
    const BigInt expected = entropy::binomial_tail(len, radius);
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << len); ++h) {
      BigInt within = 0;
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w)
        if (static_cast<std::uint64_t>(__builtin_popcountll(h ^ w)) <= radius) ++within;
      if (within != expected) approx_ok = false;
    }
  }
  add(out, "#Approx(1/4, h) = binomial_tail(2^n, floor(2^n/4)) for every h, n <= 3", approx_ok,
      "37 at n=3");
  add(out, "37 <= 2^{H(1/4) 8}",
      log2_bigint(BigInt(37)) <= entropy::shannon(epsilon).convert_to<double>() * 8.0);
  add(out, "37 = binomial_tail(8, 2)", entropy::binomial_tail(8, 2) == 37);
  return out;
}

// ---- pac structure ---------------------------------------------------------

std::vector<Check> suite_pac_structure() {
  std::vector<Check> out;
  const Rational epsilon(1, 4), delta(1, 8), s(1, 2);
  auto cls = density_class(Rational(1, 4));
  const PACLearner erm = erm_pac_learner(cls, 3);
  BudgetFn xi = budget_floor_alpha(Rational(3, 8));
  const PacGale gale = pac_to_gale(erm, epsilon, delta, xi, s, 3);

  bool additive = true;
  bool rescaled = true;
  for (const auto& block : gale.blocks) {
    if (!block.measure.additivity_holds()) additive = false;
    if (!verify_martingale_identity(block.measure.to_extensional(Rational(1))).ok) rescaled = false;
  }
  add(out, "d_n(lambda) = 1 and d_n(v0)+d_n(v1) = d_n(v), exact, n <= 3", additive);
  add(out, "rescaled per-block tables pass the martingale identity", rescaled);

  bool good_match = true;
  for (const auto& block : gale.blocks) {
    for (std::size_t qi = 0; qi < block.example_sets.size() && good_match; ++qi) {
      const auto oracle_census = oracles::exhaustive_good_set_pac(
          erm, block.n, block.example_sets[qi], epsilon, delta);
      BigInt internal = 0;
      for (std::uint64_t w = 0; w < block.good[qi].size(); ++w) {
        if (!block.good[qi][w]) continue;
        ++internal;
        bool found = false;
        for (const auto& m : oracle_census.members)
          if (m.to_index() == w) found = true;
        if (!found) good_match = false;
      }
      if (internal != oracle_census.count) good_match = false;
    }
  }
  add(out, "internal good sets equal the exhaustive oracle census (all Q, n <= 3)", good_match);

  bool chain_ok = true;
  std::string chain_detail;
  for (unsigned n = 0; n <= 3 && chain_ok; ++n) {
    const double h_term = entropy::shannon(epsilon).convert_to<double>() *
                          static_cast<double>(block_length(n));
    for (const auto& member : cls->enumerate_blocks(n)) {
      const Rational gf = gale.good_fraction(n, member);
      const Rational d_val = gale.measure(n).at(member);
      const double lhs = log2_rational(d_val);
      const double rhs = log2_rational(gf) - h_term - static_cast<double>(xi(n));
      if (!(lhs + 1e-9 >= rhs)) {
        chain_ok = false;
        chain_detail = "n=" + std::to_string(n) + " member=" + member.to_string();
      }
    }
  }
  add(out, "d_n(w) >= goodfrac / (2^{H(eps) 2^n} 2^{xi(n)}) for every member", chain_ok,
      chain_detail);

  // the product strategy realizes 2^{s|w|} prod d_i(w^i)
  bool product_ok = true;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const LanguagePrefix member = sample_language(*cls, 3, seed, SampleMode::Random);
    const CapitalTrace trace = evaluate(gale.strategy, member.bits());
    double expected = 0;
    const auto boundaries = trace.boundary_samples();
    for (unsigned n = 0; n < boundaries.size(); ++n) {
      expected += to_bigfloat(s).convert_to<double>() * static_cast<double>(block_length(n)) +
                  log2_rational(gale.measure(n).at(member.block(n)));
      if (std::fabs(boundaries[n].log2_capital - expected) > 1e-6) product_ok = false;
    }
  }
  add(out, "product strategy capital = 2^{s|w|} prod d_i(w^i)", product_ok);
  return out;
}

// ---- mq structure -----------------------------------------------------------

std::vector<Check> suite_mq_structure() {
  std::vector<Check> out;
  const Rational s(1, 2);
  const Rational alpha(1, 4);
  BudgetFn q = budget_floor_alpha(alpha);
  const MQLearner learner = padded_mq_learner(alpha);
  const MqGale gale = mq_to_gale(learner, q, s, 4);
  auto cls = padded_class(alpha);

  bool count_ok = true;
  for (const auto& block : gale.blocks)
    if (!block.count_bound_holds) count_ok = false;
  add(out, "#B_n <= 2^{q(n)} for n <= 4", count_ok);
  add(out, "#B_3 = 4", gale.blocks[3].good_count == 4);

  bool member_val_ok = true;
  bool exact_inverse_ok = true;
  for (unsigned n = 0; n <= 4; ++n) {
    for (const auto& member : cls->enumerate_blocks(n)) {
      if (!gale.blocks[n].good[member.to_index()]) member_val_ok = false;
      if (gale.measure(n).at(member) * gale.blocks[n].good_count != 1) exact_inverse_ok = false;
    }
  }
  add(out, "every padded member is good", member_val_ok);
  add(out, "d_n(member) * #B_n = 1 exactly", exact_inverse_ok);

  bool oracle_match = true;
  for (unsigned n = 0; n <= 4; ++n) {
    const auto oracle_census = oracles::exhaustive_good_set_mq(learner, n, q(n));
    BigInt internal = 0;
    for (std::uint64_t w = 0; w < gale.blocks[n].good.size(); ++w)
      if (gale.blocks[n].good[w]) ++internal;
    if (internal != oracle_census.count) oracle_match = false;
    for (const auto& m : oracle_census.members)
      if (!gale.blocks[n].good[m.to_index()]) oracle_match = false;
  }
  add(out, "internal good sets equal the exhaustive oracle census (n <= 4)", oracle_match);

  bool chain_ok = true;
  double q_sum = 0;
  TheoremParams params{s, std::nullopt, std::nullopt, std::nullopt, nullptr, q};
  for (unsigned n = 0; n <= 4; ++n) q_sum += static_cast<double>(q(n));
  const auto members = [&] {
    std::vector<LanguagePrefix> out_members;
    std::function<void(unsigned, BitString)> rec = [&](unsigned n, BitString acc) {
      if (n > 4) {
        out_members.emplace_back(std::move(acc), 4);
        return;
      }
      for (const auto& b : cls->enumerate_blocks(n)) {
        BitString next = acc;
        next.append(b);
        rec(n + 1, std::move(next));
      }
    };
    rec(0, BitString{});
    return out_members;
  }();
  add(out, "all 128 members enumerated", members.size() == 128,
      std::to_string(members.size()) + " members");
  for (const auto& member : members) {
    const CapitalTrace trace = evaluate(gale.strategy, member.bits());
    const auto boundaries = trace.boundary_samples();
    for (unsigned n = 0; n <= 4; ++n)
      if (boundaries[n].log2_capital < theoretical_bound("mq", params, n) - 1e-6) chain_ok = false;
  }
  add(out, "boundary capital >= s(2^{n+1}-1) - sum q(i) on all members", chain_ok);

  add(out, "theoretical mq bound at n=4 is 8.5",
      std::fabs(theoretical_bound("mq", params, 4) - 8.5) <= 1e-12);
  return out;
}

// ---- diagonalization ---------------------------------------------------------

std::vector<Check> suite_diagonalization() {
  std::vector<Check> out;
  const Rational alpha(1, 2);
  auto cls = padded_class(alpha);

  {
    const BettingStrategy gale = padded_gale(alpha, Rational(2, 5));
    const LanguagePrefix adversary = diagonalize_against(gale, alpha, 12);
    bool in_class = true;
    for (unsigned n = 0; n <= 12; ++n)
      if (!cls->contains_block(n, adversary.block(n))) in_class = false;
    add(out, "adversary output is a padded-class member", in_class);

    const CapitalTrace trace = evaluate(gale, adversary.bits());
    add(out, "running max log2 capital <= 1 against padded_gale(1/2, 2/5)",
        trace.running_max() <= 1.0, "running max " + std::to_string(trace.running_max()));

    // block-boundary cap from the telescoped case analysis
    bool boundary_cap_ok = true;
    const double s_d = 0.4;
    double cap = 0;
    const auto boundaries = trace.boundary_samples();
    for (unsigned n = 0; n < boundaries.size(); ++n) {
      const double free = static_cast<double>(floor_mul_pow2(alpha, n).convert_to<std::size_t>());
      const double len = static_cast<double>(block_length(n));
      cap += free * (s_d - 1.0) + (len - free) * s_d;
      if (boundaries[n].log2_capital > cap + 1e-6) boundary_cap_ok = false;
    }
    add(out, "boundary capital <= sum floor(alpha 2^i)(s-1) + (2^i - floor) s", boundary_cap_ok);

    // within a block the gale never beats the previous boundary plus what the
    // padded run can reclaim
    bool within_cap_ok = true;
    double prev_boundary = 0;
    for (const auto& sample : trace.samples()) {
      if (sample.prefix_len == 0) continue;
      const BlockPos pos = block_of_position(sample.prefix_len - 1);
      const double padded_gain =
          s_d * static_cast<double>(block_length(pos.block) -
                                    floor_mul_pow2(alpha, pos.block).convert_to<std::size_t>());
      if (sample.log2_capital > prev_boundary + padded_gain + 1e-6) within_cap_ok = false;
      if (sample.is_block_boundary) prev_boundary = sample.log2_capital;
    }
    add(out, "within-block running max <= previous boundary + padded-region gain", within_cap_ok);
  }

  {
    // fair-coin gale at s = 2/5: all free bets tie, capital strictly falls
    const BettingStrategy fair =
        BettingStrategy::from_function(Rational(2, 5), [](const BitString&) { return Rational(1, 2); });
    const LanguagePrefix adversary = diagonalize_against(fair, alpha, 8);
    bool all_zero = true;
    for (std::size_t i = 0; i < adversary.bits().size(); ++i)
      if (adversary.bits()[i]) all_zero = false;
    add(out, "ties against the fair gale resolve to 0", all_zero);
    const CapitalTrace trace = evaluate(fair, adversary.bits());
    bool decreasing = true;
    for (std::size_t i = 1; i < trace.samples().size(); ++i)
      if (trace.samples()[i].log2_capital >= trace.samples()[i - 1].log2_capital)
        decreasing = false;
    add(out, "capital strictly decreases against the fair gale", decreasing);
  }
  return out;
}

// ---- determinism ---------------------------------------------------------------

std::vector<Check> suite_determinism() {
  std::vector<Check> out;

  ExperimentConfig config;
  config.construction = "online";
  config.concept_class = ClassSpec{"density", Rational(1, 4)};
  config.s = dyadic_s_for_online();
  config.delta = Rational(1, 16);
  config.n_max = 8;
  config.seed = 42;
  config.mode = "extremal";

  std::ostringstream first_out, first_diag, second_out, second_diag;
  const int rc1 = run_growth(config, first_out, first_diag);
  const int rc2 = run_growth(config, second_out, second_diag);
  add(out, "growth run is byte-identical under a fixed seed",
      rc1 == rc2 && first_out.str() == second_out.str());

  ExperimentConfig scan = config;
  scan.construction = "counting";
  scan.grid = {Rational(3, 4), Rational(4, 5), Rational(17, 20), Rational(9, 10)};
  std::ostringstream scan1, scan2, diag;
  run_dimension_scan(scan, scan1, diag);
  run_dimension_scan(scan, scan2, diag);
  add(out, "scan run is byte-identical under a fixed seed", scan1.str() == scan2.str());

  auto cls = density_class(Rational(1, 4));
  add(out, "sampling is deterministic per seed",
      sample_language(*cls, 8, 5).bits() == sample_language(*cls, 8, 5).bits());
  add(out, "different seeds give different languages",
      !(sample_language(*cls, 8, 5).bits() == sample_language(*cls, 8, 6).bits()));
  return out;
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table = {
      {"entropy", suite_entropy},
      {"binomial-tail", suite_binomial_tail},
      {"classes", suite_classes},
      {"learners", suite_learners},
      {"martingale-identities", suite_martingale_identities},
      {"freeze-consistency", suite_freeze_consistency},
      {"online-chain", suite_online_chain},
      {"lemma-4.2", suite_lemma_42},
      {"pac-structure", suite_pac_structure},
      {"mq-structure", suite_mq_structure},
      {"diagonalization", suite_diagonalization},
      {"determinism", suite_determinism},
  };
  return table;
}

}  // namespace

std::vector<std::string> verify_suite_ids() {
  std::vector<std::string> ids;
  for (const auto& [name, _] : suites()) ids.push_back(name);
  ids.push_back("all");
  return ids;
}

int run_verify(const std::string& suite_id, std::ostream& out) {
  std::vector<std::pair<std::string, Suite>> selected;
  for (const auto& entry : suites())
    if (suite_id == "all" || suite_id == entry.first) selected.push_back(entry);
  if (selected.empty()) {
    out << "ERROR\tunknown suite '" << suite_id << "'\n";
    return kExitUsage;
  }
  bool all_pass = true;
  for (const auto& [name, suite] : selected) {
    for (const auto& check : suite()) {
      all_pass = all_pass && check.pass;
      out << (check.pass ? "PASS" : "FAIL") << '\t' << name << '/' << check.name;
      if (!check.detail.empty()) out << '\t' << check.detail;
      out << '\n';
    }
  }
  return all_pass ? kExitOk : kExitInvariant;
}

}  // namespace galelab::harness
