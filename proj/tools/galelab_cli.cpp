// Experiment driver for the gale workbench. Subcommands build a JSON config
// from flags and hand it to the shared C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "galelab.h"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string class_kind;
  std::string alpha;
  std::string out;
  std::string format = "csv";
  unsigned nmax = 8;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_class = true) {
  if (with_class)
    cmd->add_option("--class", opts.class_kind, "concept class kind (density|padded)");
  cmd->add_option("--alpha", opts.alpha, "class/construction parameter alpha as p/q");
  cmd->add_option("--nmax", opts.nmax, "largest block index");
  cmd->add_option("--seed", opts.seed, "RNG seed (SplitMix64)");
  cmd->add_option("--out", opts.out, "output path (default stdout)");
  cmd->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void put_common(json& config, const CommonOpts& opts) {
  if (!opts.class_kind.empty()) {
    if (opts.alpha.empty()) throw CLI::ValidationError("--class requires --alpha");
    config["class"] = {{"kind", opts.class_kind}, {"alpha", opts.alpha}};
  }
  config["nmax"] = opts.nmax;
  config["seed"] = opts.seed;
  config["format"] = opts.format;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(csv.substr(start));
      break;
    }
    out.push_back(csv.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

json budget_json(const std::string& table_csv, const std::string& floor_alpha) {
  if (!floor_alpha.empty()) return {{"form", "floor"}, {"alpha", floor_alpha}};
  json values = json::array();
  for (const auto& item : split_list(table_csv)) values.push_back(std::stoul(item));
  return {{"form", "table"}, {"values", values}};
}

const char* path_or_null(const std::string& path) { return path.empty() ? nullptr : path.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gale workbench: learning algorithms compiled into betting strategies"};
  app.require_subcommand(1);

  // growth
  auto* growth = app.add_subcommand("growth", "capital growth of a construction on a sampled member");
  CommonOpts growth_opts;
  std::string construction = "online", learner, s, delta, epsilon, mode = "random";
  std::string xi_table, xi_alpha, q_table, q_alpha;
  growth->add_option("--construction", construction, "online|pac|mq|padded|counting");
  growth->add_option("--learner", learner, "predict_zero|halving|eq_lex|padded_mq (default per construction)");
  growth->add_option("--s", s, "rate s as p/q")->required();
  growth->add_option("--delta", delta, "delta as p/q (online: default choose_delta)");
  growth->add_option("--epsilon", epsilon, "epsilon as p/q (pac)");
  growth->add_option("--xi", xi_table, "PAC example budget table, e.g. 0,0,1,3");
  growth->add_option("--xi-alpha", xi_alpha, "PAC example budget floor(alpha 2^n)");
  growth->add_option("--q", q_table, "MQ query budget table");
  growth->add_option("--q-alpha", q_alpha, "MQ query budget floor(alpha 2^n)");
  growth->add_option("--mode", mode, "member sampling: random|extremal")
      ->check(CLI::IsMember({"random", "extremal"}));
  add_common(growth, growth_opts);

  // scan
  auto* scan = app.add_subcommand("scan", "success-threshold scan of the counting gale over an s grid");
  CommonOpts scan_opts;
  std::string grid;
  unsigned samples = 3;
  scan->add_option("--grid", grid, "comma list of rational s values")->required();
  scan->add_option("--samples", samples, "sampled members per class");
  add_common(scan, scan_opts);

  // verify
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite = "all", verify_out;
  verify->add_option("suite", suite, "suite id (see README; 'all' runs everything)");
  verify->add_option("--out", verify_out, "output path (default stdout)");

  // diagonalize
  auto* diag = app.add_subcommand("diagonalize", "adversary sequence against a construction's gale");
  CommonOpts diag_opts;
  std::string diag_construction = "padded", diag_s;
  diag->add_option("--construction", diag_construction, "gale to diagonalize against");
  diag->add_option("--s", diag_s, "rate s as p/q")->required();
  add_common(diag, diag_opts);

  // census
  auto* census = app.add_subcommand("census", "valid-block census of a concept class");
  CommonOpts census_opts;
  add_common(census, census_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (growth->parsed()) {
      json config;
      put_common(config, growth_opts);
      config["construction"] = construction;
      config["mode"] = mode;
      if (!learner.empty()) config["learner"] = learner;
      config["s"] = s;
      if (!growth_opts.alpha.empty()) config["alpha"] = growth_opts.alpha;
      if (!delta.empty()) config["delta"] = delta;
      if (!epsilon.empty()) config["epsilon"] = epsilon;
      if (!xi_table.empty() || !xi_alpha.empty()) config["xi"] = budget_json(xi_table, xi_alpha);
      if (!q_table.empty() || !q_alpha.empty()) config["q"] = budget_json(q_table, q_alpha);
      return galelab_run_growth(config.dump().c_str(), path_or_null(growth_opts.out));
    }
    if (scan->parsed()) {
      json config;
      put_common(config, scan_opts);
      json grid_json = json::array();
      for (const auto& g : split_list(grid)) grid_json.push_back(g);
      config["grid"] = grid_json;
      config["samples"] = samples;
      return galelab_run_scan(config.dump().c_str(), path_or_null(scan_opts.out));
    }
    if (verify->parsed()) {
      return galelab_run_verify(suite.c_str(), path_or_null(verify_out));
    }
    if (diag->parsed()) {
      json config;
      put_common(config, diag_opts);
      config["construction"] = diag_construction;
      config["s"] = diag_s;
      if (!diag_opts.alpha.empty()) config["alpha"] = diag_opts.alpha;
      return galelab_run_diagonalize(config.dump().c_str(), path_or_null(diag_opts.out));
    }
    if (census->parsed()) {
      json config;
      put_common(config, census_opts);
      return galelab_run_census(config.dump().c_str(), path_or_null(census_opts.out));
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
