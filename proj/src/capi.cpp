#include "galelab.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "galelab/concepts.hpp"
#include "galelab/entropy.hpp"
#include "galelab/gale.hpp"
#include "galelab/harness.hpp"

using namespace galelab;

struct galelab_class {
  std::shared_ptr<ConceptClass> impl;
};

struct galelab_strategy {
  std::unique_ptr<BettingStrategy> impl;
};

struct galelab_trace {
  std::unique_ptr<CapitalTrace> impl;
};

namespace {

thread_local std::string g_last_error;

galelab_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return GALELAB_ERR_DOMAIN;
    case ErrorKind::Parse: return GALELAB_ERR_PARSE;
    case ErrorKind::Budget: return GALELAB_ERR_BUDGET;
    case ErrorKind::Contract: return GALELAB_ERR_CONTRACT;
    case ErrorKind::EmptyClass: return GALELAB_ERR_EMPTY_CLASS;
    case ErrorKind::Incomplete: return GALELAB_ERR_INCOMPLETE;
    case ErrorKind::Unknown: return GALELAB_ERR_UNKNOWN;
  }
  return GALELAB_ERR_UNKNOWN;
}

template <typename Fn>
galelab_status guarded(Fn&& fn) {
  try {
    fn();
    return GALELAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GALELAB_ERR_UNKNOWN;
  }
}

galelab_status copy_out(const std::string& value, char* out, size_t out_cap) {
  if (out == nullptr || out_cap < value.size() + 1) {
    g_last_error = "output buffer too small, need " + std::to_string(value.size() + 1) + " bytes";
    return GALELAB_ERR_DOMAIN;
  }
  std::memcpy(out, value.c_str(), value.size() + 1);
  return GALELAB_OK;
}

galelab_status require(const void* p, const char* what) {
  if (p != nullptr) return GALELAB_OK;
  g_last_error = std::string("null ") + what;
  return GALELAB_ERR_DOMAIN;
}

// runners share the out_path/stdout plumbing
template <typename Fn>
int run_to_path(const char* out_path, Fn&& fn) {
  try {
    if (out_path == nullptr) return fn(std::cout);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return harness::kExitUsage;
    }
    return fn(file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    g_last_error = e.what();
    switch (status_of(e.kind())) {
      case GALELAB_ERR_BUDGET: return harness::kExitBudget;
      case GALELAB_ERR_PARSE:
      case GALELAB_ERR_DOMAIN:
      case GALELAB_ERR_UNKNOWN: return harness::kExitUsage;
      default: return harness::kExitInvariant;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    g_last_error = e.what();
    return harness::kExitInvariant;
  }
}

}  // namespace

extern "C" {

const char* galelab_status_name(galelab_status status) {
  switch (status) {
    case GALELAB_OK: return "ok";
    case GALELAB_ERR_DOMAIN: return "domain";
    case GALELAB_ERR_PARSE: return "parse";
    case GALELAB_ERR_BUDGET: return "budget";
    case GALELAB_ERR_CONTRACT: return "contract";
    case GALELAB_ERR_EMPTY_CLASS: return "empty-class";
    case GALELAB_ERR_INCOMPLETE: return "incomplete";
    case GALELAB_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* galelab_last_error(void) { return g_last_error.c_str(); }

galelab_status galelab_shannon_entropy(const char* alpha_pq, double* out) {
  if (auto rc = require(alpha_pq, "alpha"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] { *out = entropy::shannon(parse_rational(alpha_pq)).convert_to<double>(); });
}

galelab_status galelab_cross_entropy(const char* alpha_pq, const char* x_pq, double* out) {
  if (auto rc = require(alpha_pq, "alpha"); rc != GALELAB_OK) return rc;
  if (auto rc = require(x_pq, "x"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    *out = entropy::cross_h(parse_rational(alpha_pq), parse_rational(x_pq)).convert_to<double>();
  });
}

galelab_status galelab_inverse_entropy(double beta, double* out) {
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] { *out = entropy::inverse(beta); });
}

galelab_status galelab_choose_delta(const char* alpha_pq, const char* eps_pq, char* out,
                                    size_t out_cap) {
  if (auto rc = require(alpha_pq, "alpha"); rc != GALELAB_OK) return rc;
  if (auto rc = require(eps_pq, "epsilon"); rc != GALELAB_OK) return rc;
  std::string value;
  if (auto rc = guarded([&] {
        value = format_rational(
            entropy::choose_delta(parse_rational(alpha_pq), parse_rational(eps_pq)));
      });
      rc != GALELAB_OK)
    return rc;
  return copy_out(value, out, out_cap);
}

galelab_status galelab_binomial_tail(uint64_t n, uint64_t k, char* out, size_t out_cap) {
  std::string value;
  if (auto rc = guarded([&] { value = entropy::binomial_tail(n, k).str(); }); rc != GALELAB_OK)
    return rc;
  return copy_out(value, out, out_cap);
}

galelab_status galelab_class_open(const char* kind, const char* alpha_pq, galelab_class** out) {
  if (auto rc = require(kind, "kind"); rc != GALELAB_OK) return rc;
  if (auto rc = require(alpha_pq, "alpha"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    const Rational alpha = parse_rational(alpha_pq);
    std::shared_ptr<ConceptClass> cls;
    if (std::strcmp(kind, "density") == 0)
      cls = density_class(alpha);
    else if (std::strcmp(kind, "padded") == 0)
      cls = padded_class(alpha);
    else
      throw_error(ErrorKind::Unknown, std::string("unknown class kind '") + kind + "'");
    *out = new galelab_class{std::move(cls)};
  });
}

void galelab_class_close(galelab_class* cls) { delete cls; }

galelab_status galelab_class_count(const galelab_class* cls, unsigned n, char* out,
                                   size_t out_cap) {
  if (auto rc = require(cls, "class"); rc != GALELAB_OK) return rc;
  std::string value;
  if (auto rc = guarded([&] { value = cls->impl->count_blocks(n).str(); }); rc != GALELAB_OK)
    return rc;
  return copy_out(value, out, out_cap);
}

galelab_status galelab_class_contains(const galelab_class* cls, unsigned n,
                                      const char* block_bits, int* out) {
  if (auto rc = require(cls, "class"); rc != GALELAB_OK) return rc;
  if (auto rc = require(block_bits, "block"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    *out = cls->impl->contains_block(n, BitString::from_string(block_bits)) ? 1 : 0;
  });
}

galelab_status galelab_class_sample(const galelab_class* cls, unsigned n_max, uint64_t seed,
                                    int extremal, char* out, size_t out_cap) {
  if (auto rc = require(cls, "class"); rc != GALELAB_OK) return rc;
  std::string value;
  if (auto rc = guarded([&] {
        value = sample_language(*cls->impl, n_max, seed,
                                extremal ? SampleMode::Extremal : SampleMode::Random)
                    .serialize();
      });
      rc != GALELAB_OK)
    return rc;
  return copy_out(value, out, out_cap);
}

galelab_status galelab_strategy_open(const char* config_json, galelab_strategy** out) {
  if (auto rc = require(config_json, "config"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    const harness::ExperimentConfig config = harness::parse_config(config_json);
    *out = new galelab_strategy{
        std::make_unique<BettingStrategy>(harness::build_strategy(config))};
  });
}

void galelab_strategy_close(galelab_strategy* strategy) { delete strategy; }

galelab_status galelab_evaluate(const galelab_strategy* strategy, const char* prefix_bits,
                                galelab_trace** out) {
  if (auto rc = require(strategy, "strategy"); rc != GALELAB_OK) return rc;
  if (auto rc = require(prefix_bits, "prefix"); rc != GALELAB_OK) return rc;
  if (auto rc = require(out, "output"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    *out = new galelab_trace{std::make_unique<CapitalTrace>(
        evaluate(*strategy->impl, BitString::from_string(prefix_bits)))};
  });
}

void galelab_trace_close(galelab_trace* trace) { delete trace; }

size_t galelab_trace_len(const galelab_trace* trace) {
  return trace == nullptr ? 0 : trace->impl->samples().size();
}

galelab_status galelab_trace_at(const galelab_trace* trace, size_t index, unsigned* prefix_len,
                                double* log2_capital, int* is_block_boundary) {
  if (auto rc = require(trace, "trace"); rc != GALELAB_OK) return rc;
  if (index >= trace->impl->samples().size()) {
    g_last_error = "trace index out of range";
    return GALELAB_ERR_DOMAIN;
  }
  const TraceSample& s = trace->impl->samples()[index];
  if (prefix_len != nullptr) *prefix_len = static_cast<unsigned>(s.prefix_len);
  if (log2_capital != nullptr) *log2_capital = s.log2_capital;
  if (is_block_boundary != nullptr) *is_block_boundary = s.is_block_boundary ? 1 : 0;
  return GALELAB_OK;
}

double galelab_trace_running_max(const galelab_trace* trace) {
  return trace == nullptr ? 0.0 : trace->impl->running_max();
}

galelab_status galelab_trace_write_csv(const galelab_trace* trace, const char* path) {
  if (auto rc = require(trace, "trace"); rc != GALELAB_OK) return rc;
  if (auto rc = require(path, "path"); rc != GALELAB_OK) return rc;
  return guarded([&] {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw_error(ErrorKind::Domain, std::string("cannot open '") + path + "'");
    file << trace->impl->to_csv();
  });
}

int galelab_run_growth(const char* config_json, const char* out_path) {
  return run_to_path(out_path, [&](std::ostream& out) {
    return harness::run_growth(harness::parse_config(config_json ? config_json : ""), out,
                               std::cerr);
  });
}

int galelab_run_scan(const char* config_json, const char* out_path) {
  return run_to_path(out_path, [&](std::ostream& out) {
    return harness::run_dimension_scan(harness::parse_config(config_json ? config_json : ""), out,
                                       std::cerr);
  });
}

int galelab_run_diagonalize(const char* config_json, const char* out_path) {
  return run_to_path(out_path, [&](std::ostream& out) {
    return harness::run_diagonalize(harness::parse_config(config_json ? config_json : ""), out,
                                    std::cerr);
  });
}

int galelab_run_census(const char* config_json, const char* out_path) {
  return run_to_path(out_path, [&](std::ostream& out) {
    return harness::run_census(harness::parse_config(config_json ? config_json : ""), out,
                               std::cerr);
  });
}

int galelab_run_verify(const char* suite_id, const char* out_path) {
  return run_to_path(out_path, [&](std::ostream& out) {
    return harness::run_verify(suite_id ? suite_id : "all", out);
  });
}

}  // extern "C"
