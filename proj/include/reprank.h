/* reprank: reputation-weighted quality estimation for bipartite rating data.
 *
 * C interface to the shared library. Every function that can fail returns a
 * reprank_status; REPRANK_OK means success and anything else leaves a
 * human-readable message in reprank_last_error() (thread-local). Objects
 * returned through reprank_*_create/load/run calls are owned by the caller
 * and released with the matching *_free; pointers documented as borrowed
 * stay valid only while their owner is alive.
 */
#ifndef REPRANK_H
#define REPRANK_H

#include <stddef.h>
#include <stdint.h>

#ifndef REPRANK_API
#if defined(_WIN32)
#define REPRANK_API
#else
#define REPRANK_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reprank_status {
  REPRANK_OK = 0,
  REPRANK_ERR_INVALID_ARGUMENT = 1,
  REPRANK_ERR_IO = 2,
  REPRANK_ERR_PARSE = 3,
  REPRANK_ERR_VALIDATION = 4,
  REPRANK_ERR_OUT_OF_MEMORY = 5
} reprank_status;

/* Opaque handles. */
typedef struct reprank_table reprank_table;     /* sparse rating store */
typedef struct reprank_truth reprank_truth;     /* synthetic ground truth */
typedef struct reprank_state reprank_state;     /* engine output */
typedef struct reprank_ranking reprank_ranking; /* ordered objects */
typedef struct reprank_dataset reprank_dataset; /* loaded external data */
typedef struct reprank_report reprank_report;   /* sweep results */

REPRANK_API const char* reprank_version(void);

/* Message for the most recent failing call on this thread; empty string if
 * the last call succeeded. The pointer stays valid until the next call on
 * the same thread. */
REPRANK_API const char* reprank_last_error(void);

/* ---- engine configuration ---- */

typedef struct reprank_engine_config {
  double alpha;                 /* user weight = deviation^(-alpha) */
  double convergence_threshold; /* stop when both max deltas drop below */
  double deviation_floor;       /* lower clamp keeping weights finite */
  uint32_t max_iterations;
} reprank_engine_config;

REPRANK_API void reprank_engine_config_init(reprank_engine_config* config);

/* ---- synthetic data generation ---- */

typedef enum reprank_quality_dist {
  REPRANK_QUALITY_UNIFORM = 0,
  REPRANK_QUALITY_POWER_LAW = 1
} reprank_quality_dist;

typedef struct reprank_generator_config {
  uint32_t num_users;
  uint32_t num_objects;
  double density;       /* independent inclusion probability per pair */
  int quality_dist;     /* reprank_quality_dist */
  double power_law_min; /* lower cutoff of the power-law quality draw */
  double rating_lo;
  double rating_hi;
  uint64_t seed;
} reprank_generator_config;

REPRANK_API void reprank_generator_config_init(reprank_generator_config* config);

REPRANK_API reprank_status reprank_draw_truth(
    const reprank_generator_config* config, reprank_truth** out);
REPRANK_API void reprank_truth_free(reprank_truth* truth);

/* Borrowed views into the truth object: intrinsic quality per object and
 * noise level per user. */
REPRANK_API reprank_status reprank_truth_qualities(const reprank_truth* truth,
                                                   const double** values,
                                                   size_t* len);
REPRANK_API reprank_status reprank_truth_noise_levels(const reprank_truth* truth,
                                                      const double** values,
                                                      size_t* len);

REPRANK_API reprank_status reprank_generate(
    const reprank_truth* truth, const reprank_generator_config* config,
    reprank_table** out);

/* ---- rating tables ---- */

/* Builds a table from parallel arrays of length `count`. Requires
 * users[i] < num_users, objects[i] < num_objects, and every value inside
 * [rating_lo, rating_hi]. Duplicate (user, object) pairs keep the last
 * occurrence. */
REPRANK_API reprank_status reprank_table_build(
    const uint32_t* users, const uint32_t* objects, const double* values,
    size_t count, uint32_t num_users, uint32_t num_objects, double rating_lo,
    double rating_hi, reprank_table** out);
REPRANK_API void reprank_table_free(reprank_table* table);

REPRANK_API uint32_t reprank_table_num_users(const reprank_table* table);
REPRANK_API uint32_t reprank_table_num_objects(const reprank_table* table);
REPRANK_API size_t reprank_table_num_ratings(const reprank_table* table);
REPRANK_API size_t reprank_table_duplicates_dropped(const reprank_table* table);
REPRANK_API size_t reprank_table_user_degree(const reprank_table* table,
                                             uint32_t user);
REPRANK_API size_t reprank_table_object_votes(const reprank_table* table,
                                              uint32_t object);
REPRANK_API reprank_status reprank_table_density(const reprank_table* table,
                                                 double* out);

/* Writes ratings.csv (plus truth_objects.csv / truth_users.csv when truth is
 * non-NULL) under dir, creating it if needed. */
REPRANK_API reprank_status reprank_table_export(const reprank_table* table,
                                                const reprank_truth* truth,
                                                const char* dir);

/* ---- reputation engine ---- */

REPRANK_API reprank_status reprank_run(const reprank_table* table,
                                       const reprank_engine_config* config,
                                       reprank_state** out);
REPRANK_API void reprank_state_free(reprank_state* state);

/* Borrowed per-object qualities; objects nobody rated hold a quiet NaN. */
REPRANK_API reprank_status reprank_state_qualities(const reprank_state* state,
                                                   const double** values,
                                                   size_t* len);
/* Borrowed per-user deviations (floored; 1.0 for users with no ratings). */
REPRANK_API reprank_status reprank_state_deviations(const reprank_state* state,
                                                    const double** values,
                                                    size_t* len);
REPRANK_API uint32_t reprank_state_iterations(const reprank_state* state);
REPRANK_API int reprank_state_converged(const reprank_state* state);
REPRANK_API double reprank_state_quality_delta(const reprank_state* state);
REPRANK_API double reprank_state_deviation_delta(const reprank_state* state);

/* ---- evaluation metrics ---- */

REPRANK_API reprank_status reprank_quality_rmse(const double* estimated,
                                                const double* truth, size_t len,
                                                double* out);

/* Rank correlation in [-1, 1]; tied pairs count zero. */
REPRANK_API reprank_status reprank_kendall_tau(const double* y, const double* z,
                                               size_t len, double* out);

/* Sorts objects by quality descending; ties fall in seeded random order and
 * NaN (unrated) entries are excluded. */
REPRANK_API reprank_status reprank_rank_objects(const double* quality,
                                                size_t len, uint64_t tie_seed,
                                                reprank_ranking** out);
REPRANK_API void reprank_ranking_free(reprank_ranking* ranking);

/* Borrowed object ids, best first. */
REPRANK_API reprank_status reprank_ranking_order(const reprank_ranking* ranking,
                                                 const uint32_t** ids,
                                                 size_t* len);
/* 1-based rank of an object, 0 when unranked or out of range. */
REPRANK_API uint32_t reprank_ranking_rank_of(const reprank_ranking* ranking,
                                             uint32_t object);

/* Rank-average statistic over the benchmark ids: mean of
 * (num_ranked - rank)/(num_ranked - S). Pass num_ranked = 0 to use the
 * ranking's own length. num_objects bounds the benchmark ids. */
REPRANK_API reprank_status reprank_auc(const reprank_ranking* ranking,
                                       const uint32_t* benchmark_ids,
                                       size_t num_benchmarks,
                                       uint32_t num_objects,
                                       uint32_t num_ranked, double* out);

/* Fraction of (benchmark, non-benchmark) pairs ordered correctly; always in
 * [0, 1]. */
REPRANK_API reprank_status reprank_auc_pairwise(const reprank_ranking* ranking,
                                                const uint32_t* benchmark_ids,
                                                size_t num_benchmarks,
                                                uint32_t num_objects,
                                                double* out);

/* ---- external datasets ---- */

/* Loads the manifest at manifest_path, then the ratings file it names, and
 * the benchmark list when one is declared. */
REPRANK_API reprank_status reprank_dataset_load(const char* manifest_path,
                                                reprank_dataset** out);
REPRANK_API void reprank_dataset_free(reprank_dataset* dataset);

REPRANK_API const char* reprank_dataset_name(const reprank_dataset* dataset);
/* Borrowed table view; freed with the dataset, never separately. */
REPRANK_API const reprank_table* reprank_dataset_table(
    const reprank_dataset* dataset);
/* External id strings for dense indices; NULL when out of range. */
REPRANK_API const char* reprank_dataset_user_name(const reprank_dataset* dataset,
                                                  uint32_t user);
REPRANK_API const char* reprank_dataset_object_name(
    const reprank_dataset* dataset, uint32_t object);
REPRANK_API int reprank_dataset_has_benchmarks(const reprank_dataset* dataset);
/* Borrowed sorted benchmark object indices plus the count of list entries
 * that matched no known object. */
REPRANK_API reprank_status reprank_dataset_benchmarks(
    const reprank_dataset* dataset, const uint32_t** ids, size_t* len,
    size_t* skipped);

/* ---- sweep experiments ---- */

typedef struct reprank_sweep_params {
  const double* alphas; /* NULL selects the default grid 0.0..2.0 step 0.1 */
  size_t num_alphas;
  uint32_t realizations;
  uint64_t base_seed;
  double convergence_threshold;
  double deviation_floor;
  uint32_t max_iterations;
  unsigned workers; /* 0 = one per hardware thread; never affects results */
} reprank_sweep_params;

REPRANK_API void reprank_sweep_params_init(reprank_sweep_params* params);

typedef enum reprank_metric {
  REPRANK_METRIC_DELTA = 0,        /* rms quality error vs ground truth */
  REPRANK_METRIC_TAU = 1,          /* reputation rank correlation */
  REPRANK_METRIC_AUC = 2,          /* rank-average benchmark statistic */
  REPRANK_METRIC_AUC_PAIRWISE = 3  /* pairwise win fraction */
} reprank_metric;

/* Stable label for a metric ("delta", "tau", ...); NULL if unknown. */
REPRANK_API const char* reprank_metric_name(int metric);

typedef struct reprank_sweep_row {
  double alpha;
  int metric; /* reprank_metric */
  double mean;
  double stddev;
  uint32_t n;
  double mean_iterations;
  double convergence_rate;
} reprank_sweep_row;

/* Draws fresh synthetic data per realization and reports delta and tau
 * versus alpha. */
REPRANK_API reprank_status reprank_sweep_synthetic(
    const reprank_sweep_params* params,
    const reprank_generator_config* generator, reprank_report** out);

/* Loads the manifest (benchmarks required) and reports both AUC variants
 * versus alpha, averaged over seeded tie-break rankings. */
REPRANK_API reprank_status reprank_sweep_dataset(
    const reprank_sweep_params* params, const char* manifest_path,
    reprank_report** out);

REPRANK_API void reprank_report_free(reprank_report* report);
/* Borrowed rows sorted by (metric label, alpha) — the CSV order. */
REPRANK_API reprank_status reprank_report_rows(const reprank_report* report,
                                               const reprank_sweep_row** rows,
                                               size_t* len);
REPRANK_API reprank_status reprank_report_write_csv(const reprank_report* report,
                                                    const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* REPRANK_H */
