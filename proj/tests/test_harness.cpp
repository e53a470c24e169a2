#include <doctest.h>

#include <sstream>

#include "galelab/harness.hpp"

using namespace galelab;
using namespace galelab::harness;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string diag;
};

template <typename Fn>
RunResult capture(Fn&& fn) {
  std::ostringstream out, diag;
  const int code = fn(out, diag);
  return {code, out.str(), diag.str()};
}

const char* kOnlineConfig = R"({
  "construction": "online",
  "class": {"kind": "density", "alpha": "1/4"},
  "s": "1001960893981/1099511627776",
  "delta": "1/16",
  "nmax": 8,
  "seed": 7,
  "mode": "extremal"
})";

}  // namespace

TEST_CASE("config parsing round-trips through JSON") {
  const ExperimentConfig config = parse_config(kOnlineConfig);
  CHECK(config.construction == "online");
  REQUIRE(config.concept_class.has_value());
  CHECK(config.concept_class->kind == "density");
  CHECK(config.concept_class->alpha == Rational(1, 4));
  CHECK(config.delta == Rational(1, 16));
  CHECK(config.n_max == 8);
  CHECK(config.mode == "extremal");

  const ExperimentConfig reparsed = parse_config(config_to_json(config));
  CHECK(config_to_json(reparsed) == config_to_json(config));
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_config("not json"), Error);
  CHECK_THROWS_AS(parse_config(R"({"s": "1/0"})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"s": 0.5})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"mystery": 1})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"mode": "chaotic"})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"xi": {"form": "exp"}})"), Error);
}

TEST_CASE("growth run emits the pinned CSV schema and meets its bounds") {
  const ExperimentConfig config = parse_config(kOnlineConfig);
  const auto result = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(result.code == kExitOk);
  CHECK(result.out.rfind("n,prefix_len,log2_capital,theoretical_bound,slope\n", 0) == 0);
  CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 10);  // header + 9 boundaries
}

TEST_CASE("growth run in JSON mirrors the same fields") {
  ExperimentConfig config = parse_config(kOnlineConfig);
  config.format = "json";
  const auto result = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(result.code == kExitOk);
  CHECK(result.out.find("\"log2_capital\"") != std::string::npos);
  CHECK(result.out.find("\"theoretical_bound\"") != std::string::npos);
  CHECK(result.out.find("\"bounds_hold\": true") != std::string::npos);
}

TEST_CASE("growth run with a padded gale below alpha reports negative slopes but exits 0") {
  const ExperimentConfig config = parse_config(R"({
    "construction": "padded",
    "class": {"kind": "padded", "alpha": "1/2"},
    "s": "2/5",
    "nmax": 8,
    "seed": 3
  })");
  const auto result = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(result.code == kExitOk);  // the telescoped bound holds with equality
  CHECK(result.out.find("-") != std::string::npos);
}

TEST_CASE("growth run maps budget overruns to exit 3") {
  ExperimentConfig config = parse_config(kOnlineConfig);
  config.construction = "pac";
  config.epsilon = Rational(1, 4);
  config.xi = BudgetSpec{"floor", {}, Rational(3, 8)};
  config.n_max = 4;  // beyond the PAC enumeration budget
  const auto result = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(result.code == kExitBudget);
}

TEST_CASE("growth run maps unknown constructions to exit 2") {
  ExperimentConfig config = parse_config(kOnlineConfig);
  config.construction = "quantum";
  const auto result = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(result.code == kExitUsage);
}

TEST_CASE("scan locates the padded-class threshold near alpha") {
  ExperimentConfig config;
  config.concept_class = ClassSpec{"padded", Rational(1, 4)};
  config.n_max = 10;
  config.seed = 5;
  config.samples = 2;
  for (int k = 0; k <= 25; ++k) config.grid.push_back(Rational(k, 50));
  const auto result =
      capture([&](auto& out, auto& diag) { return run_dimension_scan(config, out, diag); });
  CHECK(result.code == kExitOk);
  CHECK(result.out.rfind("s,slope,is_threshold\n", 0) == 0);
  // threshold row: the first grid point with non-negative slope
  const auto pos = result.out.find(",1\n");
  REQUIRE(pos != std::string::npos);
  const auto line_start = result.out.rfind('\n', pos) + 1;
  const std::string threshold = result.out.substr(line_start, result.out.find(',', line_start) - line_start);
  CHECK(parse_rational(threshold) >= Rational(23, 100));
  CHECK(parse_rational(threshold) <= Rational(27, 100));
}

TEST_CASE("scan requires a grid") {
  ExperimentConfig config;
  config.concept_class = ClassSpec{"density", Rational(1, 2)};
  const auto result =
      capture([&](auto& out, auto& diag) { return run_dimension_scan(config, out, diag); });
  CHECK(result.code == kExitUsage);
}

TEST_CASE("diagonalize run writes the language-prefix file format") {
  const ExperimentConfig config = parse_config(R"({
    "construction": "padded",
    "alpha": "1/2",
    "s": "2/5",
    "nmax": 6
  })");
  const auto result =
      capture([&](auto& out, auto& diag) { return run_diagonalize(config, out, diag); });
  CHECK(result.code == kExitOk);
  CHECK(result.out.rfind("nmax=6\n", 0) == 0);
  CHECK(result.out.size() == 7 + 127 + 1);  // header + bits + newline
  CHECK(result.diag.find("running max") != std::string::npos);
}

TEST_CASE("census run emits one row per member for small classes") {
  const ExperimentConfig config = parse_config(R"({
    "class": {"kind": "padded", "alpha": "1/4"},
    "nmax": 3
  })");
  const auto result = capture([&](auto& out, auto& diag) { return run_census(config, out, diag); });
  CHECK(result.code == kExitOk);
  CHECK(result.out.rfind("n,count,member_bits\n", 0) == 0);
  CHECK(result.out.find("3,4,11000000\n") != std::string::npos);
}

TEST_CASE("census run falls back to count-only rows past the enumeration budget") {
  const ExperimentConfig config = parse_config(R"({
    "class": {"kind": "density", "alpha": "1/4"},
    "nmax": 9
  })");
  const auto result = capture([&](auto& out, auto& diag) { return run_census(config, out, diag); });
  CHECK(result.code == kExitOk);
  // count-only rows end with an empty member column
  const auto row = result.out.find("\n9,");
  REQUIRE(row != std::string::npos);
  const auto row_end = result.out.find('\n', row + 1);
  REQUIRE(row_end != std::string::npos);
  CHECK(result.out[row_end - 1] == ',');
}

TEST_CASE("verify dispatches suites and flags unknown ids") {
  std::ostringstream out;
  CHECK(run_verify("binomial-tail", out) == kExitOk);
  CHECK(out.str().find("PASS\tbinomial-tail/tail(8,2) = 37") != std::string::npos);
  std::ostringstream bad;
  CHECK(run_verify("no-such-suite", bad) == kExitUsage);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const ExperimentConfig config = parse_config(kOnlineConfig);
  const auto a = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  const auto b = capture([&](auto& out, auto& diag) { return run_growth(config, out, diag); });
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
}

TEST_CASE("build_strategy rejects incomplete configs with domain errors") {
  ExperimentConfig config;
  config.construction = "padded";
  CHECK_THROWS_AS(build_strategy(config), Error);  // missing s and alpha
  config.s = Rational(1, 2);
  CHECK_THROWS_AS(build_strategy(config), Error);  // still no alpha
  config.alpha = Rational(1, 2);
  CHECK_NOTHROW(build_strategy(config));
}
