#include <doctest.h>

#include <cmath>
#include <limits>

#include "galelab/constructions.hpp"
#include "galelab/entropy.hpp"
#include "galelab/oracles.hpp"
#include "galelab/rng.hpp"

using namespace galelab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Rational online_rate() {
  return dyadic_from_double(entropy::shannon(Rational(1, 4)).convert_to<double>() + 0.1, 40);
}

}  // namespace

TEST_CASE("online gale betting fractions follow the prediction") {
  const BettingStrategy gale =
      online_to_gale(predict_zero_learner(), Rational(3, 16), Rational(1, 16), Rational(1));
  // stake on the predicted bit (0) is 3/4, on the other 1/4
  CHECK(gale.fraction_one(BitString{}) == Rational(1, 4));
  CHECK(gale.fraction_one(BitString::from_string("1")) == Rational(1, 4));
  // capital factors 2^s pi: 3/2 on a hit, 1/2 on a miss at s = 1
  CHECK(evaluate(gale, BitString::from_string("0")).final_log2_capital() ==
        doctest::Approx(std::log2(1.5)));
  CHECK(evaluate(gale, BitString::from_string("1")).final_log2_capital() ==
        doctest::Approx(std::log2(0.5)));
}

TEST_CASE("online gale enforces alpha + delta < 1/2") {
  CHECK_THROWS_AS(online_to_gale(predict_zero_learner(), Rational(1, 2), Rational(1, 16),
                                 Rational(1)),
                  Error);
  CHECK_THROWS_AS(online_to_gale(predict_zero_learner(), Rational(7, 16), Rational(1, 16),
                                 Rational(1)),
                  Error);
}

TEST_CASE("online gale per-block factor matches the mistake-count identity") {
  const Rational alpha(1, 4), delta(1, 16);
  const Rational s = online_rate();
  const BettingStrategy gale = online_to_gale(predict_zero_learner(), alpha, delta, s);
  const double s_d = to_bigfloat(s).convert_to<double>();
  const double log_hit = log2_rational(Rational(1) - (alpha + delta));
  const double log_miss = log2_rational(alpha + delta);
  auto cls = density_class(alpha);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const LanguagePrefix member = sample_language(*cls, 6, seed, SampleMode::Random);
    const CapitalTrace trace = evaluate(gale, member.bits());
    const auto boundaries = trace.boundary_samples();
    double previous = 0;
    for (unsigned n = 0; n <= 6; ++n) {
      const std::size_t k = count_mistakes(predict_zero_learner(), member.block(n));
      const double expected = static_cast<double>(k) * log_miss +
                              static_cast<double>(block_length(n) - k) * log_hit +
                              s_d * static_cast<double>(block_length(n));
      CHECK(boundaries[n].log2_capital - previous == doctest::Approx(expected).epsilon(1e-9));
      previous = boundaries[n].log2_capital;
    }
  }
}

TEST_CASE("online gale capital clears the epsilon bound on extremal members") {
  const Rational alpha(1, 4);
  const Rational delta = entropy::choose_delta(alpha, Rational(1, 20));
  REQUIRE(delta == Rational(1, 16));
  const BettingStrategy gale = online_to_gale(predict_zero_learner(), alpha, delta, online_rate());
  auto cls = density_class(alpha);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LanguagePrefix member = sample_language(*cls, 8, seed, SampleMode::Extremal);
    for (const auto& b : evaluate(gale, member.bits()).boundary_samples())
      CHECK(b.log2_capital >= 0.05 * static_cast<double>(b.prefix_len) - 1e-6);
  }
}

TEST_CASE("pac gale per-block measures are exact conditional averages") {
  auto cls = density_class(Rational(1, 4));
  const PacGale gale = pac_to_gale(erm_pac_learner(cls, 3), Rational(1, 4), Rational(1, 8),
                                   budget_floor_alpha(Rational(3, 8)), Rational(1, 2), 3);
  REQUIRE(gale.blocks.size() == 4);
  for (const auto& block : gale.blocks) {
    CHECK(block.measure.at(BitString{}) == 1);
    CHECK(block.measure.additivity_holds());
  }
  // xi = floor(3/8 * 2^n): 0, 0, 1, 3 example-set budgets
  CHECK(gale.blocks[0].example_sets.size() == 1);
  CHECK(gale.blocks[1].example_sets.size() == 1);
  CHECK(gale.blocks[2].example_sets.size() == 5);
  CHECK(gale.blocks[3].example_sets.size() == 93);
}

TEST_CASE("pac gale value at a fully good block is the averaged inverse counts") {
  // eq. form: d_n(w) = sum over good Q of 1 / (#Q_n #B_{n,Q})
  auto cls = density_class(Rational(1, 4));
  const PacGale gale = pac_to_gale(erm_pac_learner(cls, 2), Rational(1, 4), Rational(1, 8),
                                   budget_floor_alpha(Rational(3, 8)), Rational(1, 2), 2);
  const auto& data = gale.blocks[2];
  const std::size_t q_count = data.example_sets.size();
  for (std::uint64_t widx = 0; widx < 16; ++widx) {
    const BitString w = BitString::from_index(4, widx);
    Rational expected = 0;
    for (std::size_t qi = 0; qi < q_count; ++qi)
      if (data.good[qi][widx]) expected += Rational(1, BigInt(q_count) * data.good_count[qi]);
    CHECK(gale.measure(2).at(w) == expected);
  }
}

TEST_CASE("pac enumeration budget is n_max <= 3") {
  auto cls = density_class(Rational(1, 4));
  CHECK_THROWS_AS(pac_to_gale(erm_pac_learner(cls, 3), Rational(1, 4), Rational(1, 8),
                              budget_floor_alpha(Rational(3, 8)), Rational(1, 2), 4),
                  Error);
}

TEST_CASE("pac per-Q empty good sets fall back to uniform and keep additivity") {
  // answers the complement of every queried label: never within epsilon=0 of
  // the target once Q is nonempty, so those B_{n,Q} are empty
  PACLearner contrarian{"contrarian",
                        [](unsigned n, const Rational&, const Rational&,
                           const std::vector<LabeledExample>& sample) -> BitString {
                          BitString h = BitString::from_index(block_length(n), 0);
                          BitString flipped;
                          for (std::size_t i = 0; i < h.size(); ++i) {
                            int bit = 0;
                            for (const auto& ex : sample)
                              if (ex.position == i) bit = 1 - ex.label;
                            flipped.push_back(bit);
                          }
                          return flipped;
                        }};
  const PacGale gale = pac_to_gale(contrarian, Rational(0), Rational(1, 8),
                                   budget_from_table({1, 1}), Rational(1, 2), 1);
  const auto& data = gale.blocks[0];
  REQUIRE(data.example_sets.size() == 2);  // {} and {0}
  CHECK(data.good_count[0] == 1);          // empty Q: the constant output is its own target
  CHECK(data.good_count[1] == 0);
  CHECK(data.uniform_fallback[1] == 1);
  CHECK(gale.measure(0).additivity_holds());
  CHECK(gale.measure(0).at(BitString::from_string("0")) == Rational(3, 4));
  CHECK(gale.measure(0).at(BitString::from_string("1")) == Rational(1, 4));
}

TEST_CASE("empty good sets fall back to the uniform conditional measure") {
  // a learner that always overruns a zero query budget is never good
  MQLearner hopeless{"hopeless", [](unsigned n, const std::function<int(std::size_t)>& oracle,
                                    std::size_t) -> MQRunResult {
                       (void)oracle(0);
                       return {BitString::from_index(block_length(n), 0), 1, true};
                     }};
  const MqGale gale = mq_to_gale(hopeless, budget_from_table({0, 0}), Rational(1, 2), 1);
  for (const auto& block : gale.blocks) {
    CHECK(block.uniform_fallback);
    CHECK(block.good_count == 0);
    CHECK(block.measure.additivity_holds());
    CHECK(block.measure.at(BitString::from_string("0")) == Rational(1, 2));
  }
}

TEST_CASE("mq gale on the padded learner counts exactly the padded members") {
  const MqGale gale = mq_to_gale(padded_mq_learner(Rational(1, 4)),
                                 budget_floor_alpha(Rational(1, 4)), Rational(1, 2), 4);
  CHECK(gale.blocks[0].good_count == 1);
  CHECK(gale.blocks[1].good_count == 1);
  CHECK(gale.blocks[2].good_count == 2);
  CHECK(gale.blocks[3].good_count == 4);
  CHECK(gale.blocks[4].good_count == 16);
  auto cls = padded_class(Rational(1, 4));
  for (unsigned n = 0; n <= 4; ++n) {
    CHECK(gale.blocks[n].count_bound_holds);
    for (const auto& member : cls->enumerate_blocks(n)) {
      CHECK(gale.measure(n).at(member) == Rational(1, gale.blocks[n].good_count));
      // d_n(member) >= 2^{-q(n)}
      CHECK(gale.measure(n).at(member) >=
            Rational(1, BigInt(1) << floor_mul_pow2(Rational(1, 4), n).convert_to<unsigned>()));
    }
  }
}

TEST_CASE("mq gale with a constant zero-output learner at n=0") {
  MQLearner constant{"const0", [](unsigned n, const std::function<int(std::size_t)>&,
                                  std::size_t) -> MQRunResult {
                       return {BitString::from_index(block_length(n), 0), 0, false};
                     }};
  const MqGale gale = mq_to_gale(constant, budget_from_table({0}), Rational(1, 2), 0);
  CHECK(gale.blocks[0].good_count == 1);
  CHECK(gale.measure(0).at(BitString::from_string("0")) == 1);
  CHECK(gale.measure(0).at(BitString::from_string("1")) == 0);
}

TEST_CASE("mq enumeration budget is n_max <= 4") {
  CHECK_THROWS_AS(mq_to_gale(padded_mq_learner(Rational(1, 4)), budget_floor_alpha(Rational(1, 4)),
                             Rational(1, 2), 5),
                  Error);
}

TEST_CASE("product strategies stop at their last block") {
  const MqGale gale = mq_to_gale(padded_mq_learner(Rational(1, 2)),
                                 budget_floor_alpha(Rational(1, 2)), Rational(1, 2), 1);
  BitString too_long;
  for (int i = 0; i < 4; ++i) too_long.push_back(0);
  CHECK_THROWS_AS(evaluate(gale.strategy, too_long), Error);  // covers blocks 0..1 = 3 bits
}

TEST_CASE("padded gale case split: half stakes on free bits, all-in on padding") {
  const BettingStrategy gale = padded_gale(Rational(1, 2), Rational(1, 2));
  // block 0 has no free position: everything rides on 0
  CHECK(evaluate(gale, BitString::from_string("0")).final_log2_capital() ==
        doctest::Approx(0.5));
  CHECK(evaluate(gale, BitString::from_string("1")).final_log2_capital() == -kInf);
  // block 1 opens with a free position: factor 2^{s-1} either way
  const CapitalTrace trace = evaluate(gale, BitString::from_string("010"));
  CHECK(trace.samples()[2].log2_capital == doctest::Approx(0.0));  // 0.5 - 0.5
  CHECK(trace.samples()[3].log2_capital == doctest::Approx(0.5));  // padded 0 wins 2^s
}

TEST_CASE("padded gale capital on members telescopes exactly") {
  const Rational alpha(1, 2), s(3, 5);
  const BettingStrategy gale = padded_gale(alpha, s);
  auto cls = padded_class(alpha);
  const double s_d = to_bigfloat(s).convert_to<double>();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const LanguagePrefix member = sample_language(*cls, 9, seed, SampleMode::Random);
    const auto boundaries = evaluate(gale, member.bits()).boundary_samples();
    double free_total = 0;
    for (unsigned n = 0; n <= 9; ++n) {
      free_total += static_cast<double>(floor_mul_pow2(alpha, n).convert_to<std::size_t>());
      const double expected = s_d * static_cast<double>(boundary_length(n)) - free_total;
      CHECK(boundaries[n].log2_capital == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("off-class padding bits kill the padded gale's capital") {
  const BettingStrategy gale = padded_gale(Rational(1, 2), Rational(3, 5));
  // position 2 (second bit of block 1) is padding; a 1 there is fatal
  const CapitalTrace trace = evaluate(gale, BitString::from_string("0011000"));
  CHECK(trace.samples()[3].log2_capital == -kInf);
  CHECK(trace.final_log2_capital() == -kInf);
}

TEST_CASE("diagonalization emits a padded member minimizing the gale's capital") {
  const Rational alpha(1, 2);
  const BettingStrategy gale = padded_gale(alpha, Rational(2, 5));
  const LanguagePrefix adversary = diagonalize_against(gale, alpha, 10);
  auto cls = padded_class(alpha);
  for (unsigned n = 0; n <= 10; ++n) CHECK(cls->contains_block(n, adversary.block(n)));
  const CapitalTrace trace = evaluate(gale, adversary.bits());
  CHECK(trace.running_max() <= 1.0);
  CHECK(trace.final_log2_capital() < 0.0);
}

TEST_CASE("diagonalization against symmetric bets resolves ties to zero") {
  const BettingStrategy fair =
      BettingStrategy::from_function(Rational(2, 5), [](const BitString&) { return Rational(1, 2); });
  const LanguagePrefix adversary = diagonalize_against(fair, Rational(1, 2), 6);
  for (std::size_t i = 0; i < adversary.bits().size(); ++i) CHECK(adversary.bits()[i] == 0);
  const CapitalTrace trace = evaluate(fair, adversary.bits());
  for (std::size_t i = 1; i < trace.samples().size(); ++i)
    CHECK(trace.samples()[i].log2_capital < trace.samples()[i - 1].log2_capital);
}

TEST_CASE("diagonalization picks the smaller branch at free positions") {
  // bias the gale toward 1 everywhere: the adversary must play 1... no,
  // smaller stake means smaller capital, so it plays the *less* funded bit 0
  const BettingStrategy biased =
      BettingStrategy::from_function(Rational(1, 2), [](const BitString&) { return Rational(2, 3); });
  const LanguagePrefix adversary = diagonalize_against(biased, Rational(1, 2), 4);
  // free positions are the first floor(2^n/2) of each block; check block 2
  CHECK(adversary.block(2)[0] == 0);
  CHECK(adversary.block(2)[1] == 0);
}

TEST_CASE("theoretical bounds reproduce the closed forms") {
  SUBCASE("online epsilon form") {
    TheoremParams params{online_rate(), Rational(1, 4), std::nullopt, std::nullopt, nullptr,
                         nullptr};
    CHECK(theoretical_bound("online", params, 10) == doctest::Approx(0.05 * 2047).epsilon(1e-6));
  }
  SUBCASE("mq with floored query budget") {
    TheoremParams params{Rational(1, 2), std::nullopt, std::nullopt, std::nullopt, nullptr,
                         budget_floor_alpha(Rational(1, 4))};
    CHECK(theoretical_bound("mq", params, 4) == doctest::Approx(8.5));
  }
  SUBCASE("mq-alpha closed form") {
    TheoremParams params{Rational(3, 4), Rational(1, 4), std::nullopt, std::nullopt, nullptr,
                         nullptr};
    CHECK(theoretical_bound("mq-alpha", params, 4) == doctest::Approx(0.5 * 31));
  }
  SUBCASE("padded bound is floor-adjusted") {
    TheoremParams params{Rational(1, 2), Rational(1, 2), std::nullopt, std::nullopt, nullptr,
                         nullptr};
    // sum floor(2^i/2) for i<=n is 2^n - 1, so the bound settles at +1/2
    CHECK(theoretical_bound("padded", params, 4) == doctest::Approx(0.5));
    CHECK(theoretical_bound("padded", params, 12) == doctest::Approx(0.5));
  }
  SUBCASE("pac closed form") {
    TheoremParams params{Rational(1), std::nullopt, Rational(1, 8), Rational(1, 4),
                         budget_from_table({0, 0, 1, 3}), nullptr};
    const double expected = (1.0 - entropy::shannon(Rational(1, 4)).convert_to<double>()) * 15 +
                            4 * std::log2(7.0 / 8.0) - 4.0;
    CHECK(theoretical_bound("pac", params, 3) == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("pac-alpha closed form") {
    TheoremParams params{Rational(1), Rational(1, 2), Rational(1, 8), Rational(1, 4), nullptr,
                         nullptr};
    const double expected = (1.0 - entropy::shannon(Rational(1, 4)).convert_to<double>() - 0.5) * 15 +
                            4 * std::log2(7.0 / 8.0);
    CHECK(theoretical_bound("pac-alpha", params, 3) == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("unknown ids are rejected") {
    TheoremParams params{Rational(1), std::nullopt, std::nullopt, std::nullopt, nullptr, nullptr};
    CHECK_THROWS_AS(theoretical_bound("bogus", params, 3), Error);
  }
}

TEST_CASE("budget helpers: table lookup and floored alpha") {
  const BudgetFn table = budget_from_table({1, 2, 3});
  CHECK(table(2) == 3);
  CHECK_THROWS_AS(table(3), Error);
  const BudgetFn floored = budget_floor_alpha(Rational(1, 4));
  CHECK(floored(0) == 0);
  CHECK(floored(2) == 1);
  CHECK(floored(4) == 4);
}
