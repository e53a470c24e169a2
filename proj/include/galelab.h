#ifndef GALELAB_H
#define GALELAB_H

/* C interface to the gale workbench: opaque handles plus error codes.
 * Rationals cross the boundary as exact "p/q" strings, bit strings as
 * ASCII 0/1, and arbitrary-precision counts as decimal strings. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GALELAB_OK = 0,
  GALELAB_ERR_DOMAIN = 1,
  GALELAB_ERR_PARSE = 2,
  GALELAB_ERR_BUDGET = 3,
  GALELAB_ERR_CONTRACT = 4,
  GALELAB_ERR_EMPTY_CLASS = 5,
  GALELAB_ERR_INCOMPLETE = 6,
  GALELAB_ERR_UNKNOWN = 7
} galelab_status;

const char *galelab_status_name(galelab_status status);
/* thread-local detail message of the last failing call */
const char *galelab_last_error(void);

/* ---- entropy primitives (double views of the high-precision core) ---- */
galelab_status galelab_shannon_entropy(const char *alpha_pq, double *out);
galelab_status galelab_cross_entropy(const char *alpha_pq, const char *x_pq, double *out);
galelab_status galelab_inverse_entropy(double beta, double *out);
/* largest dyadic delta = 2^-k, written as "1/2^k" in p/q form */
galelab_status galelab_choose_delta(const char *alpha_pq, const char *eps_pq,
                                    char *out, size_t out_cap);
/* sum_{j<=k} C(n,j) as a decimal string */
galelab_status galelab_binomial_tail(uint64_t n, uint64_t k, char *out, size_t out_cap);

/* ---- concept classes ---- */
typedef struct galelab_class galelab_class;

/* kind is "density" or "padded" */
galelab_status galelab_class_open(const char *kind, const char *alpha_pq, galelab_class **out);
void galelab_class_close(galelab_class *cls);
galelab_status galelab_class_count(const galelab_class *cls, unsigned n,
                                   char *out, size_t out_cap);
galelab_status galelab_class_contains(const galelab_class *cls, unsigned n,
                                      const char *block_bits, int *out);
/* writes the language-prefix file format: "nmax=<n>\n<bits>\n" */
galelab_status galelab_class_sample(const galelab_class *cls, unsigned n_max, uint64_t seed,
                                    int extremal, char *out, size_t out_cap);

/* ---- betting strategies and capital traces ---- */
typedef struct galelab_strategy galelab_strategy;
typedef struct galelab_trace galelab_trace;

/* config_json carries the experiment description documented in the README
 * (construction, class, learner, s, alpha, delta, epsilon, xi, q, nmax, ...) */
galelab_status galelab_strategy_open(const char *config_json, galelab_strategy **out);
void galelab_strategy_close(galelab_strategy *strategy);

galelab_status galelab_evaluate(const galelab_strategy *strategy, const char *prefix_bits,
                                galelab_trace **out);
void galelab_trace_close(galelab_trace *trace);
size_t galelab_trace_len(const galelab_trace *trace);
galelab_status galelab_trace_at(const galelab_trace *trace, size_t index, unsigned *prefix_len,
                                double *log2_capital, int *is_block_boundary);
double galelab_trace_running_max(const galelab_trace *trace);
/* columns: prefix_len,log2_capital,is_block_boundary */
galelab_status galelab_trace_write_csv(const galelab_trace *trace, const char *path);

/* ---- experiment runners ----
 * Reports are written to out_path (stdout when NULL); advisories and error
 * detail go to stderr. Returned codes match the CLI: 0 success, 1 invariant
 * failure, 2 usage/config error, 3 resource budget. */
int galelab_run_growth(const char *config_json, const char *out_path);
int galelab_run_scan(const char *config_json, const char *out_path);
int galelab_run_diagonalize(const char *config_json, const char *out_path);
int galelab_run_census(const char *config_json, const char *out_path);
int galelab_run_verify(const char *suite_id, const char *out_path);

#ifdef __cplusplus
}
#endif

#endif /* GALELAB_H */
