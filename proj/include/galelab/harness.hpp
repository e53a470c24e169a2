#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "galelab/constructions.hpp"
#include "galelab/gale.hpp"

namespace galelab::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// default budgets: evaluation-only constructions, MQ enumeration, PAC enumeration
inline constexpr unsigned kMaxEvalN = 12;

struct ClassSpec {
  std::string kind;  // density | padded
  Rational alpha;
};

struct BudgetSpec {
  std::string form;                 // table | floor
  std::vector<std::size_t> values;  // per-n table
  Rational alpha;                   // floor(alpha * 2^n)

  BudgetFn to_fn() const;
};

// All rationals arrive as exact p/q strings; no floating-point parameters.
struct ExperimentConfig {
  std::string construction;  // online | pac | mq | padded | counting
  std::optional<ClassSpec> concept_class;
  std::string learner;  // empty selects the construction's default
  std::optional<Rational> s;
  std::optional<Rational> alpha;
  std::optional<Rational> delta;
  std::optional<Rational> epsilon;
  std::optional<BudgetSpec> xi;
  std::optional<BudgetSpec> q;
  unsigned n_max = 8;
  std::uint64_t seed = 1;
  unsigned samples = 3;
  std::vector<Rational> grid;
  std::string mode = "random";  // random | extremal
  std::string format = "csv";   // csv | json
};

ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

// Experiment entry points. Reports go to `out`, human advisories to `diag`.
// Returned codes: 0 ok, 1 invariant failure, 2 usage/config, 3 budget.
int run_growth(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);
int run_dimension_scan(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);
int run_diagonalize(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);
int run_census(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);

// Invariant suites; one PASS/FAIL line per invariant.
// ids: entropy, binomial-tail, classes, learners, martingale-identities,
// freeze-consistency, online-chain, lemma-4.2, pac-structure, mq-structure,
// diagonalization, determinism, all.
int run_verify(const std::string& suite_id, std::ostream& out);
std::vector<std::string> verify_suite_ids();

// shared by run_growth and the C API strategy factory
BettingStrategy build_strategy(const ExperimentConfig& config);

}  // namespace galelab::harness
