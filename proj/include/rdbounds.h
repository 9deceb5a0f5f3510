/*
 * rdbounds - finite-blocklength rate-distortion bound calculator.
 *
 * C API over the C++ core: opaque source handles, status-code returns,
 * thread-local error text. All rates cross this boundary in the units the
 * function names state (nats for log code sizes, bits/symbol for rates).
 */
#ifndef RDBOUNDS_H
#define RDBOUNDS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values match the CLI exit codes. */
#define RDB_OK 0
#define RDB_EDOMAIN 2   /* bad argument / outside a bound's validity region */
#define RDB_ERESOURCE 3 /* an exactness budget was exceeded */
#define RDB_ENUMERIC 4  /* an iterative routine failed to converge */
#define RDB_EINTERNAL 5 /* invariant violation */

/* Thread-local text for the last failing call in this thread. */
const char* rdb_last_error(void);

const char* rdb_version(void);

/* ------------------------------------------------------------------ */
/* Source models                                                       */

typedef struct rdb_source rdb_source;

/* Binary memoryless source, bias 0 < p <= 1/2, bit error rate distortion. */
int rdb_source_bms(double p, rdb_source** out);
/* Finite-alphabet source; pmf sorted nonincreasing, strictly positive,
 * summing to 1; symbol error rate distortion. */
int rdb_source_dms(const double* pmf, int m, rdb_source** out);
/* Equiprobable binary source seen through a binary erasure channel with
 * erasure rate 0 <= delta < 1; distortion against the pre-erasure bits. */
int rdb_source_bes(double delta, rdb_source** out);
/* Gaussian memoryless source, variance sigma2 > 0, mean-square error. */
int rdb_source_gms(double sigma2, rdb_source** out);

void rdb_source_free(rdb_source* src);

/* Human-readable description, e.g. "bms(p=0.4)". Buffer is owned by the
 * handle and valid until rdb_source_free. */
const char* rdb_source_describe(const rdb_source* src);

/* ------------------------------------------------------------------ */
/* Rate-distortion quantities (rates in nats unless stated otherwise)  */

int rdb_d_range(const rdb_source* src, double* d_min, double* d_max);
int rdb_rate_distortion(const rdb_source* src, double d, double* rate_nats);
int rdb_lambda_star(const rdb_source* src, double d, double* lambda_nats);
int rdb_dispersion(const rdb_source* src, double d, double* v_nats2);
int rdb_distortion_rate(const rdb_source* src, double rate_nats, double* d);
int rdb_distortion_dispersion(const rdb_source* src, double rate_nats, double* v_out);

/* Per-letter tilted-information atoms (discrete sources). Writes up to cap
 * atoms; *count receives the total. */
int rdb_tilted_info(const rdb_source* src, double d, double* values_nats, double* probs,
                    int cap, int* count);

/* Blocklength needed to hold rate (mode 0, at distortion d) or distortion
 * (mode 1, at rate_nats) within a relative excess eta at probability eps.
 * n = source_factor * spec_factor with source_factor the dispersion over the
 * squared target and spec_factor = (Qinv(eps)/eta)^2; the factor outputs may
 * be NULL. */
int rdb_required_blocklength(const rdb_source* src, int distortion_mode, double d_or_rate_nats,
                             double eta, double eps, double* n_estimate, int* zero_dispersion,
                             double* source_factor, double* spec_factor);

/* ------------------------------------------------------------------ */
/* Bounds                                                              */

#define RDB_KIND_CONVERSE 0
#define RDB_KIND_ACHIEVABILITY 1
#define RDB_KIND_APPROXIMATION 2

/* Remainder-term menu for the Gaussian approximation. */
#define RDB_THETA_ZERO 0
#define RDB_THETA_HALF_LOG_N 1
#define RDB_THETA_LOSSLESS 2
#define RDB_THETA_ENVELOPE 3

typedef struct {
    int theta_mode;   /* RDB_THETA_* */
    int integer_m;    /* round M outward (ceil ach / floor conv) when small */
} rdb_eval_opts;

typedef struct {
    char name[32];
    int kind; /* RDB_KIND_* */
    double log_m_nats;
    double rate_bits;
    double eps_at_log_m; /* NaN when not applicable */
} rdb_bound_value;

/* Bound identifiers available for this source, newline-separated. Returns
 * required buffer size (excluding NUL) and fills buf up to cap. */
int rdb_bound_names(const rdb_source* src, char* buf, size_t cap, size_t* needed);

/* Evaluate a named bound as a rate bound at (n, d, eps). opts may be NULL. */
int rdb_eval_rate_bound(const rdb_source* src, const char* bound, int64_t n, double d, double eps,
                        const rdb_eval_opts* opts, rdb_bound_value* out);

/* Excess probability of an eps-form bound at log M (nats). */
int rdb_eval_excess_probability(const rdb_source* src, const char* bound, int64_t n, double d,
                                double log_m_nats, double* eps_out);

/* Fixed-rate distortion bound D(n, R, eps); rate supplied in bits/symbol. */
int rdb_eval_distortion_bound(const rdb_source* src, const char* bound, int64_t n,
                              double rate_bits, double eps, const rdb_eval_opts* opts,
                              double* d_out);

/* Gaussian approximation rate in bits/symbol. */
int rdb_gaussian_approx(const rdb_source* src, int64_t n, double d, double eps, int theta_mode,
                        double* rate_bits);

/* ------------------------------------------------------------------ */
/* Ground-truth oracles                                                */

/* Exhaustive optimal code size for tiny binary blocks (n <= 4). */
int rdb_brute_force_mstar(const rdb_source* src, int64_t n, double d, double eps,
                          int64_t* m_star);

#define RDB_CODEBOOK_EQUIPROBABLE 0
#define RDB_CODEBOOK_RD_MARGINAL 1

/* Random-coding simulation with a deterministic seeded stream. */
int rdb_mc_random_coding(const rdb_source* src, int codebook_law, int64_t n, int64_t m_codewords,
                         double d, int64_t trials, uint64_t seed, double* eps_hat,
                         double* std_err);

/* Exact lossless minimum code size and the associated optimal-test measure
 * (returned as ln beta). m_star stays within the integer-exact double range. */
int rdb_lossless_mstar(const rdb_source* src, int64_t n, double eps, double* m_star,
                       double* log_beta);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RDBOUNDS_H */
