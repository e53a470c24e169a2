#include <json.hpp>

#include "galelab/harness.hpp"

namespace galelab::harness {

using nlohmann::json;

BudgetFn BudgetSpec::to_fn() const {
  if (form == "table") return budget_from_table(values);
  if (form == "floor") return budget_floor_alpha(alpha);
  throw_error(ErrorKind::Parse, "budget form must be 'table' or 'floor'");
}

namespace {

const char* kKnownKeys[] = {"construction", "class", "learner", "s",    "alpha",   "delta",
                            "epsilon",      "xi",    "q",       "nmax", "seed",    "samples",
                            "grid",         "mode",  "format"};

Rational rational_field(const json& j, const std::string& key) {
  if (!j.at(key).is_string())
    throw_error(ErrorKind::Parse, "field '" + key + "' must be a rational 'p/q' string");
  return parse_rational(j.at(key).get<std::string>());
}

BudgetSpec budget_field(const json& j) {
  BudgetSpec spec;
  spec.form = j.at("form").get<std::string>();
  if (spec.form == "table") {
    for (const auto& v : j.at("values")) spec.values.push_back(v.get<std::size_t>());
  } else if (spec.form == "floor") {
    spec.alpha = parse_rational(j.at("alpha").get<std::string>());
  } else {
    throw_error(ErrorKind::Parse, "budget form must be 'table' or 'floor'");
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw_error(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw_error(ErrorKind::Parse, "config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (const char* k : kKnownKeys) known = known || key == k;
      if (!known) throw_error(ErrorKind::Parse, "unknown config key '" + key + "'");
    }
    ExperimentConfig config;
    if (j.contains("construction")) config.construction = j.at("construction").get<std::string>();
    if (j.contains("class")) {
      ClassSpec spec;
      spec.kind = j.at("class").at("kind").get<std::string>();
      spec.alpha = rational_field(j.at("class"), "alpha");
      config.concept_class = std::move(spec);
    }
    if (j.contains("learner")) config.learner = j.at("learner").get<std::string>();
    if (j.contains("s")) config.s = rational_field(j, "s");
    if (j.contains("alpha")) config.alpha = rational_field(j, "alpha");
    if (j.contains("delta")) config.delta = rational_field(j, "delta");
    if (j.contains("epsilon")) config.epsilon = rational_field(j, "epsilon");
    if (j.contains("xi")) config.xi = budget_field(j.at("xi"));
    if (j.contains("q")) config.q = budget_field(j.at("q"));
    if (j.contains("nmax")) config.n_max = j.at("nmax").get<unsigned>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) config.samples = j.at("samples").get<unsigned>();
    if (j.contains("grid"))
      for (const auto& g : j.at("grid")) config.grid.push_back(parse_rational(g.get<std::string>()));
    if (j.contains("mode")) config.mode = j.at("mode").get<std::string>();
    if (j.contains("format")) config.format = j.at("format").get<std::string>();
    if (config.mode != "random" && config.mode != "extremal")
      throw_error(ErrorKind::Parse, "mode must be 'random' or 'extremal'");
    if (config.format != "csv" && config.format != "json")
      throw_error(ErrorKind::Parse, "format must be 'csv' or 'json'");
    return config;
  } catch (const json::exception& e) {
    throw_error(ErrorKind::Parse, std::string("bad config field: ") + e.what());
  }
}

namespace {

json budget_to_json(const BudgetSpec& spec) {
  json j;
  j["form"] = spec.form;
  if (spec.form == "table")
    j["values"] = spec.values;
  else
    j["alpha"] = format_rational(spec.alpha);
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  if (!config.construction.empty()) j["construction"] = config.construction;
  if (config.concept_class) {
    j["class"] = {{"kind", config.concept_class->kind},
                  {"alpha", format_rational(config.concept_class->alpha)}};
  }
  if (!config.learner.empty()) j["learner"] = config.learner;
  if (config.s) j["s"] = format_rational(*config.s);
  if (config.alpha) j["alpha"] = format_rational(*config.alpha);
  if (config.delta) j["delta"] = format_rational(*config.delta);
  if (config.epsilon) j["epsilon"] = format_rational(*config.epsilon);
  if (config.xi) j["xi"] = budget_to_json(*config.xi);
  if (config.q) j["q"] = budget_to_json(*config.q);
  j["nmax"] = config.n_max;
  j["seed"] = config.seed;
  j["samples"] = config.samples;
  if (!config.grid.empty()) {
    json grid = json::array();
    for (const auto& g : config.grid) grid.push_back(format_rational(g));
    j["grid"] = grid;
  }
  j["mode"] = config.mode;
  j["format"] = config.format;
  return j.dump();
}

}  // namespace galelab::harness
