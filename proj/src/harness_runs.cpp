#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "galelab/concepts.hpp"
#include "galelab/entropy.hpp"
#include "galelab/harness.hpp"
#include "galelab/oracles.hpp"

namespace galelab::harness {

using nlohmann::json;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kFloatSlack = 1e-6;

std::string format_double(double v) {
  if (v == kNegInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::shared_ptr<ConceptClass> build_class(const ExperimentConfig& config) {
  if (!config.concept_class) throw_error(ErrorKind::Domain, "a concept class is required");
  const auto& spec = *config.concept_class;
  if (spec.kind == "density") return density_class(spec.alpha);
  if (spec.kind == "padded") return padded_class(spec.alpha);
  throw_error(ErrorKind::Unknown, "unknown class kind '" + spec.kind + "'");
}

const Rational& require_s(const ExperimentConfig& config) {
  if (!config.s) throw_error(ErrorKind::Domain, "rate s is required");
  return *config.s;
}

Rational construction_alpha(const ExperimentConfig& config) {
  if (config.alpha) return *config.alpha;
  if (config.concept_class) return config.concept_class->alpha;
  throw_error(ErrorKind::Domain, "alpha is required");
}

void check_nmax(const ExperimentConfig& config) {
  unsigned limit = kMaxEvalN;
  if (config.construction == "pac") limit = kPacEnumerationMaxN;
  if (config.construction == "mq") limit = kMqEnumerationMaxN;
  if (config.n_max > limit)
    throw_error(ErrorKind::Budget, "nmax " + std::to_string(config.n_max) + " exceeds the '" +
                                       config.construction + "' budget of " + std::to_string(limit));
}

OnlineLearner build_online_learner(const ExperimentConfig& config,
                                   const std::shared_ptr<ConceptClass>& cls) {
  const std::string& id = config.learner.empty() ? "predict_zero" : config.learner;
  if (id == "predict_zero") return predict_zero_learner();
  if (id == "halving") return halving_learner(cls, config.n_max);
  if (id == "eq_lex")
    return eq_to_online(lex_consistent_eq_learner(cls, config.n_max), config.n_max);
  throw_error(ErrorKind::Unknown, "unknown online learner '" + id + "'");
}

Rational online_delta(const ExperimentConfig& config, const Rational& alpha, const Rational& s) {
  if (config.delta) return *config.delta;
  const BigFloat eps = (to_bigfloat(s) - entropy::shannon(alpha)) / 2;
  return entropy::choose_delta(alpha, eps);
}

// growth bound at each boundary plus whether the construction promises it
// for the sampled member
struct GrowthModel {
  BettingStrategy strategy;
  std::function<double(unsigned)> bound;
  std::function<bool(unsigned)> promised;
  std::vector<std::string> advisories;
};

GrowthModel build_growth_model(const ExperimentConfig& config,
                               const std::shared_ptr<ConceptClass>& cls,
                               const LanguagePrefix& member) {
  const Rational& s = require_s(config);
  const unsigned n_max = config.n_max;

  if (config.construction == "online") {
    const Rational alpha = construction_alpha(config);
    const Rational delta = online_delta(config, alpha, s);
    OnlineLearner learner = build_online_learner(config, cls);
    const double eps = ((to_bigfloat(s) - entropy::shannon(alpha)) / 2).convert_to<double>();
    // the epsilon-form bound needs h_alpha(alpha+delta) <= H(alpha) + eps
    const bool slack_ok =
        entropy::cross_h(alpha, alpha + delta) <= entropy::shannon(alpha) + BigFloat(eps);
    std::vector<char> mistake_ok(n_max + 1, 1);
    std::vector<std::string> advisories;
    for (unsigned n = 0; n <= n_max; ++n) {
      const std::size_t mistakes = count_mistakes(learner, member.block(n));
      if (BigInt(mistakes) > floor_mul_pow2(alpha, n)) {
        mistake_ok[n] = 0;
        advisories.push_back("mistake bound exceeded at n=" + std::to_string(n) + " (" +
                             std::to_string(mistakes) + " mistakes)");
      }
    }
    if (!slack_ok)
      advisories.push_back("delta too large for the epsilon slack; bound not promised");
    auto promised = [slack_ok, mistake_ok](unsigned n) {
      if (!slack_ok) return false;
      for (unsigned i = 0; i <= n; ++i)
        if (!mistake_ok[i]) return false;
      return true;
    };
    TheoremParams params{s, alpha, delta, std::nullopt, nullptr, nullptr};
    auto bound = [params](unsigned n) { return theoretical_bound("online", params, n); };
    return {online_to_gale(std::move(learner), alpha, delta, s), bound, promised,
            std::move(advisories)};
  }

  if (config.construction == "pac") {
    if (!config.epsilon) throw_error(ErrorKind::Domain, "pac construction needs epsilon");
    if (!config.xi) throw_error(ErrorKind::Domain, "pac construction needs the xi budget");
    const Rational epsilon = *config.epsilon;
    const Rational delta = config.delta.value_or(Rational(1, 8));
    BudgetFn xi = config.xi->to_fn();
    auto gale = std::make_shared<PacGale>(
        pac_to_gale(erm_pac_learner(cls, n_max), epsilon, delta, xi, s, n_max));
    const double h_eps = entropy::shannon(epsilon).convert_to<double>();
    const double s_d = to_bigfloat(s).convert_to<double>();
    // measured-good-fraction chain: d_n(w) >= goodfrac_n / (2^{H(eps)2^n} 2^{xi(n)})
    std::vector<double> chain(n_max + 1);
    std::vector<std::string> advisories;
    double acc = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
      const Rational gf = gale->good_fraction(n, member.block(n));
      advisories.push_back("good fraction at n=" + std::to_string(n) + ": " +
                           format_rational(gf) + " (" + format_double(log2_rational(gf)) +
                           " in log2)");
      acc += log2_rational(gf) - h_eps * static_cast<double>(block_length(n)) -
             static_cast<double>(xi(n));
      chain[n] = acc;
    }
    auto bound = [chain, s_d](unsigned n) {
      return s_d * static_cast<double>(boundary_length(n)) + chain[n];
    };
    return {gale->strategy, bound, [](unsigned) { return true; }, std::move(advisories)};
  }

  if (config.construction == "mq") {
    if (!config.q) throw_error(ErrorKind::Domain, "mq construction needs the q budget");
    BudgetFn q = config.q->to_fn();
    if (!config.learner.empty() && config.learner != "padded_mq")
      throw_error(ErrorKind::Unknown, "unknown mq learner '" + config.learner + "'");
    MQLearner learner = padded_mq_learner(construction_alpha(config));
    auto gale = std::make_shared<MqGale>(mq_to_gale(std::move(learner), q, s, n_max));
    std::vector<char> good(n_max + 1, 1);
    std::vector<std::string> advisories;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (!gale->blocks[n].good[member.block(n).to_index()]) {
        good[n] = 0;
        advisories.push_back("member block not good for the learner at n=" + std::to_string(n));
      }
    }
    TheoremParams params{s, std::nullopt, std::nullopt, std::nullopt, nullptr, q};
    auto bound = [params](unsigned n) { return theoretical_bound("mq", params, n); };
    auto promised = [good](unsigned n) {
      for (unsigned i = 0; i <= n; ++i)
        if (!good[i]) return false;
      return true;
    };
    return {gale->strategy, bound, promised, std::move(advisories)};
  }

  if (config.construction == "padded") {
    const Rational alpha = construction_alpha(config);
    auto pad = padded_class(alpha);
    std::vector<char> in_class(n_max + 1, 1);
    std::vector<std::string> advisories;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (!pad->contains_block(n, member.block(n))) {
        in_class[n] = 0;
        advisories.push_back("sampled block leaves the padded class at n=" + std::to_string(n));
      }
    }
    TheoremParams params{s, alpha, std::nullopt, std::nullopt, nullptr, nullptr};
    auto bound = [params](unsigned n) { return theoretical_bound("padded", params, n); };
    auto promised = [in_class](unsigned n) {
      for (unsigned i = 0; i <= n; ++i)
        if (!in_class[i]) return false;
      return true;
    };
    return {padded_gale(alpha, s), bound, promised, std::move(advisories)};
  }

  if (config.construction == "counting") {
    std::vector<double> count_log2(n_max + 1);
    double acc = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
      acc += log2_bigint(oracles::class_count(*cls, n));
      count_log2[n] = acc;
    }
    const double s_d = to_bigfloat(s).convert_to<double>();
    std::vector<char> in_class(n_max + 1, 1);
    std::vector<std::string> advisories;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (!cls->contains_block(n, member.block(n))) {
        in_class[n] = 0;
        advisories.push_back("sampled block leaves the class at n=" + std::to_string(n));
      }
    }
    auto bound = [count_log2, s_d](unsigned n) {
      return s_d * static_cast<double>(boundary_length(n)) - count_log2[n];
    };
    auto promised = [in_class](unsigned n) {
      for (unsigned i = 0; i <= n; ++i)
        if (!in_class[i]) return false;
      return true;
    };
    return {oracles::counting_gale(cls, s, n_max), bound, promised, std::move(advisories)};
  }

  throw_error(ErrorKind::Unknown, "unknown construction '" + config.construction + "'");
}

int map_error(const Error& e, std::ostream& diag) {
  diag << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Domain:
    case ErrorKind::Unknown:
      return kExitUsage;
    case ErrorKind::Budget:
      return kExitBudget;
    default:
      return kExitInvariant;
  }
}

SampleMode sample_mode(const ExperimentConfig& config) {
  return config.mode == "extremal" ? SampleMode::Extremal : SampleMode::Random;
}

}  // namespace

BettingStrategy build_strategy(const ExperimentConfig& config) {
  check_nmax(config);
  const Rational& s = require_s(config);
  if (config.construction == "online") {
    auto cls = build_class(config);
    const Rational alpha = construction_alpha(config);
    return online_to_gale(build_online_learner(config, cls), alpha,
                          online_delta(config, alpha, s), s);
  }
  if (config.construction == "pac") {
    if (!config.epsilon || !config.xi)
      throw_error(ErrorKind::Domain, "pac construction needs epsilon and the xi budget");
    auto cls = build_class(config);
    return pac_to_gale(erm_pac_learner(cls, config.n_max), *config.epsilon,
                       config.delta.value_or(Rational(1, 8)), config.xi->to_fn(), s, config.n_max)
        .strategy;
  }
  if (config.construction == "mq") {
    if (!config.q) throw_error(ErrorKind::Domain, "mq construction needs the q budget");
    return mq_to_gale(padded_mq_learner(construction_alpha(config)), config.q->to_fn(), s,
                      config.n_max)
        .strategy;
  }
  if (config.construction == "padded") return padded_gale(construction_alpha(config), s);
  if (config.construction == "counting")
    return oracles::counting_gale(build_class(config), s, config.n_max);
  throw_error(ErrorKind::Unknown, "unknown construction '" + config.construction + "'");
}

int run_growth(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    check_nmax(config);
    auto cls = build_class(config);
    const LanguagePrefix member = sample_language(*cls, config.n_max, config.seed, sample_mode(config));
    GrowthModel model = build_growth_model(config, cls, member);
    const CapitalTrace trace = evaluate(model.strategy, member.bits());

    bool all_bounds_hold = true;
    struct Row {
      unsigned n;
      std::size_t prefix_len;
      double log2_capital, bound, slope;
      bool promised;
    };
    std::vector<Row> rows;
    unsigned n = 0;
    for (const auto& sample : trace.boundary_samples()) {
      const double bound = model.bound(n);
      const bool promised = model.promised(n);
      if (promised && !(sample.log2_capital >= bound - kFloatSlack)) all_bounds_hold = false;
      rows.push_back({n, sample.prefix_len, sample.log2_capital, bound,
                      sample.log2_capital / static_cast<double>(sample.prefix_len), promised});
      ++n;
    }

    if (!rows.empty() && rows.back().slope <= 0)
      model.advisories.push_back(
          "final slope is non-positive; the gale does not succeed at this rate");

    if (config.format == "json") {
      json j;
      j["construction"] = config.construction;
      j["rows"] = json::array();
      for (const auto& r : rows)
        j["rows"].push_back({{"n", r.n},
                             {"prefix_len", r.prefix_len},
                             {"log2_capital", r.log2_capital},
                             {"theoretical_bound", r.bound},
                             {"slope", r.slope},
                             {"promised", r.promised}});
      j["advisories"] = model.advisories;
      j["bounds_hold"] = all_bounds_hold;
      out << j.dump(2) << "\n";
    } else {
      out << "n,prefix_len,log2_capital,theoretical_bound,slope\n";
      for (const auto& r : rows)
        out << r.n << ',' << r.prefix_len << ',' << format_double(r.log2_capital) << ','
            << format_double(r.bound) << ',' << format_double(r.slope) << "\n";
      for (const auto& a : model.advisories) diag << "advisory: " << a << "\n";
    }
    return all_bounds_hold ? kExitOk : kExitInvariant;
  } catch (const Error& e) {
    return map_error(e, diag);
  }
}

int run_dimension_scan(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    if (config.grid.empty()) throw_error(ErrorKind::Domain, "scan needs a non-empty s grid");
    if (config.n_max > kMaxEvalN)
      throw_error(ErrorKind::Budget, "scan nmax limited to " + std::to_string(kMaxEvalN));
    if (config.samples == 0) throw_error(ErrorKind::Domain, "scan needs samples >= 1");
    auto cls = build_class(config);

    // The counting gale's fractions do not depend on s: capital factors per
    // bit are 2^s * pi. One fraction-only evaluation per member (s = 0) gives
    // every grid slope exactly as s + slope_0.
    const BettingStrategy fraction_gale = oracles::counting_gale(cls, Rational(0), config.n_max);
    double slope_sum = 0;
    for (unsigned i = 0; i < config.samples; ++i) {
      const LanguagePrefix member =
          sample_language(*cls, config.n_max, config.seed + i, sample_mode(config));
      slope_sum += growth_exponent(evaluate(fraction_gale, member.bits()));
    }
    const double base_slope = slope_sum / config.samples;

    std::vector<Rational> grid = config.grid;
    std::sort(grid.begin(), grid.end());
    std::optional<std::size_t> threshold;
    std::vector<double> slopes;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double slope = to_bigfloat(grid[i]).convert_to<double>() + base_slope;
      slopes.push_back(slope);
      if (!threshold && slope >= 0) threshold = i;
    }

    if (config.format == "json") {
      json j;
      j["class"] = cls->name();
      j["rows"] = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i)
        j["rows"].push_back({{"s", format_rational(grid[i])},
                             {"slope", slopes[i]},
                             {"is_threshold", threshold && *threshold == i}});
      if (threshold) j["threshold"] = format_rational(grid[*threshold]);
      out << j.dump(2) << "\n";
    } else {
      out << "s,slope,is_threshold\n";
      for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_rational(grid[i]) << ',' << format_double(slopes[i]) << ','
            << ((threshold && *threshold == i) ? '1' : '0') << "\n";
    }
    if (!threshold) diag << "advisory: no sign change on the grid; dimension above the top point\n";
    return kExitOk;
  } catch (const Error& e) {
    return map_error(e, diag);
  }
}

int run_diagonalize(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    ExperimentConfig strat_config = config;
    if (strat_config.construction.empty()) strat_config.construction = "padded";
    const BettingStrategy strategy = build_strategy(strat_config);
    const Rational alpha = construction_alpha(config);
    if (config.n_max > kMaxEvalN)
      throw_error(ErrorKind::Budget, "diagonalization nmax limited to " + std::to_string(kMaxEvalN));
    const LanguagePrefix adversary = diagonalize_against(strategy, alpha, config.n_max);
    const CapitalTrace trace = evaluate(strategy, adversary.bits());
    if (config.format == "json") {
      json j;
      j["nmax"] = adversary.n_max();
      j["prefix"] = adversary.bits().to_string();
      j["running_max_log2_capital"] = trace.running_max();
      j["final_log2_capital"] = trace.final_log2_capital();
      out << j.dump(2) << "\n";
    } else {
      out << adversary.serialize();
      diag << "running max log2 capital: " << format_double(trace.running_max()) << "\n";
      diag << "final log2 capital: " << format_double(trace.final_log2_capital()) << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    return map_error(e, diag);
  }
}

int run_census(const ExperimentConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    if (config.n_max > kMaxEvalN)
      throw_error(ErrorKind::Budget, "census nmax limited to " + std::to_string(kMaxEvalN));
    auto cls = build_class(config);
    if (config.format == "json") {
      json j;
      j["class"] = cls->name();
      j["rows"] = json::array();
      for (unsigned n = 0; n <= config.n_max; ++n) {
        const auto c = oracles::census(*cls, n);
        json row{{"n", n}, {"count", c.count.str()}};
        if (c.count <= 256 && !c.members.empty()) {
          json members = json::array();
          for (const auto& m : c.members) members.push_back(m.to_string());
          row["members"] = members;
        }
        j["rows"].push_back(row);
      }
      out << j.dump(2) << "\n";
    } else {
      out << "n,count,member_bits\n";
      for (unsigned n = 0; n <= config.n_max; ++n) {
        const auto c = oracles::census(*cls, n);
        const std::string head = std::to_string(n) + "," + c.count.str() + ",";
        if (c.count <= 256 && !c.members.empty())
          for (const auto& m : c.members) out << head << m.to_string() << "\n";
        else
          out << head << "\n";
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    return map_error(e, diag);
  }
}

}  // namespace galelab::harness
