// C ABI over the core library. Every entry point traps exceptions and turns
// them into status codes plus a thread-local message; no exception may cross
// the boundary.
#include "reprank.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/engine.hpp"
#include "core/error.hpp"
#include "core/ingest.hpp"
#include "core/metrics.hpp"
#include "core/rating_table.hpp"
#include "core/sweep.hpp"
#include "core/synth.hpp"

struct reprank_table {
  reprank::RatingTable table;
};

struct reprank_truth {
  reprank::GroundTruth truth;
};

struct reprank_state {
  reprank::ReputationState state;
};

struct reprank_ranking {
  reprank::Ranking ranking;
};

struct reprank_dataset {
  std::string name;
  reprank_table table;  // wrapped so callers can borrow it as reprank_table*
  reprank::IdMap users;
  reprank::IdMap objects;
  std::optional<reprank::LoadedBenchmarks> benchmarks;
};

struct reprank_report {
  std::vector<reprank_sweep_row> rows;  // sorted by (metric label, alpha)
  std::vector<reprank::SweepRow> source;
};

namespace {

thread_local std::string t_last_error;

reprank_status map_code(reprank::ErrorCode code) {
  switch (code) {
    case reprank::ErrorCode::invalid_argument:
      return REPRANK_ERR_INVALID_ARGUMENT;
    case reprank::ErrorCode::io:
      return REPRANK_ERR_IO;
    case reprank::ErrorCode::parse:
      return REPRANK_ERR_PARSE;
    case reprank::ErrorCode::validation:
      return REPRANK_ERR_VALIDATION;
  }
  return REPRANK_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
reprank_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return REPRANK_OK;
  } catch (const reprank::Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return REPRANK_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return REPRANK_ERR_INVALID_ARGUMENT;
  }
}

reprank_status fail_argument(const char* message) {
  t_last_error = message;
  return REPRANK_ERR_INVALID_ARGUMENT;
}

reprank::GeneratorConfig to_generator_config(
    const reprank_generator_config& c) {
  reprank::GeneratorConfig config;
  config.num_users = c.num_users;
  config.num_objects = c.num_objects;
  config.density = c.density;
  switch (c.quality_dist) {
    case REPRANK_QUALITY_UNIFORM:
      config.quality_dist = reprank::QualityDist::uniform;
      break;
    case REPRANK_QUALITY_POWER_LAW:
      config.quality_dist = reprank::QualityDist::power_law;
      break;
    default:
      throw reprank::Error(reprank::ErrorCode::invalid_argument,
                           "quality_dist must be 0 (uniform) or 1 (power law)");
  }
  config.power_law_min = c.power_law_min;
  config.bounds = {c.rating_lo, c.rating_hi};
  config.seed = c.seed;
  return config;
}

reprank::EngineConfig to_engine_config(const reprank_engine_config& c) {
  return {c.alpha, c.convergence_threshold, c.deviation_floor,
          c.max_iterations};
}

reprank::SweepParams to_sweep_params(const reprank_sweep_params& p) {
  reprank::SweepParams params;
  if (p.alphas != nullptr) {
    if (p.num_alphas == 0) {
      throw reprank::Error(reprank::ErrorCode::invalid_argument,
                           "alphas given but num_alphas is 0");
    }
    params.alphas.assign(p.alphas, p.alphas + p.num_alphas);
  }
  params.realizations = p.realizations;
  params.base_seed = p.base_seed;
  params.convergence_threshold = p.convergence_threshold;
  params.deviation_floor = p.deviation_floor;
  params.max_iterations = p.max_iterations;
  params.workers = p.workers;
  return params;
}

int metric_code(reprank::SweepMetric metric) {
  switch (metric) {
    case reprank::SweepMetric::delta:
      return REPRANK_METRIC_DELTA;
    case reprank::SweepMetric::tau:
      return REPRANK_METRIC_TAU;
    case reprank::SweepMetric::auc:
      return REPRANK_METRIC_AUC;
    case reprank::SweepMetric::auc_pairwise:
      return REPRANK_METRIC_AUC_PAIRWISE;
  }
  return REPRANK_METRIC_DELTA;
}

reprank_report* build_report(std::vector<reprank::SweepRow> rows) {
  auto* report = new reprank_report;
  std::sort(rows.begin(), rows.end(),
            [](const reprank::SweepRow& a, const reprank::SweepRow& b) {
              const std::string_view la = reprank::to_string(a.metric);
              const std::string_view lb = reprank::to_string(b.metric);
              if (la != lb) return la < lb;
              return a.alpha < b.alpha;
            });
  report->source = std::move(rows);
  report->rows.reserve(report->source.size());
  for (const reprank::SweepRow& row : report->source) {
    reprank_sweep_row out;
    out.alpha = row.alpha;
    out.metric = metric_code(row.metric);
    out.mean = row.mean;
    out.stddev = row.stddev;
    out.n = row.n;
    out.mean_iterations = row.mean_iterations;
    out.convergence_rate = row.convergence_rate;
    report->rows.push_back(out);
  }
  return report;
}

reprank::BenchmarkSet make_bench(const uint32_t* ids, size_t count,
                                 uint32_t num_objects) {
  if (ids == nullptr || count == 0) {
    throw reprank::Error(reprank::ErrorCode::invalid_argument,
                         "benchmark id array is empty");
  }
  return reprank::make_benchmark_set(std::vector<uint32_t>(ids, ids + count),
                                     num_objects);
}

}  // namespace

extern "C" {

const char* reprank_version(void) { return "1.0.0"; }

const char* reprank_last_error(void) { return t_last_error.c_str(); }

void reprank_engine_config_init(reprank_engine_config* config) {
  if (config == nullptr) return;
  const reprank::EngineConfig defaults;
  config->alpha = defaults.alpha;
  config->convergence_threshold = defaults.convergence_threshold;
  config->deviation_floor = defaults.deviation_floor;
  config->max_iterations = defaults.max_iterations;
}

void reprank_generator_config_init(reprank_generator_config* config) {
  if (config == nullptr) return;
  const reprank::GeneratorConfig defaults;
  config->num_users = defaults.num_users;
  config->num_objects = defaults.num_objects;
  config->density = defaults.density;
  config->quality_dist = defaults.quality_dist == reprank::QualityDist::uniform
                             ? REPRANK_QUALITY_UNIFORM
                             : REPRANK_QUALITY_POWER_LAW;
  config->power_law_min = defaults.power_law_min;
  config->rating_lo = defaults.bounds.lo;
  config->rating_hi = defaults.bounds.hi;
  config->seed = defaults.seed;
}

void reprank_sweep_params_init(reprank_sweep_params* params) {
  if (params == nullptr) return;
  const reprank::SweepParams defaults;
  params->alphas = nullptr;
  params->num_alphas = 0;
  params->realizations = defaults.realizations;
  params->base_seed = defaults.base_seed;
  params->convergence_threshold = defaults.convergence_threshold;
  params->deviation_floor = defaults.deviation_floor;
  params->max_iterations = defaults.max_iterations;
  params->workers = defaults.workers;
}

reprank_status reprank_draw_truth(const reprank_generator_config* config,
                                  reprank_truth** out) {
  if (config == nullptr || out == nullptr) {
    return fail_argument("config and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::GeneratorConfig cfg = to_generator_config(*config);
    auto owned = std::make_unique<reprank_truth>();
    owned->truth = reprank::draw_ground_truth(cfg);
    *out = owned.release();
  });
}

void reprank_truth_free(reprank_truth* truth) { delete truth; }

reprank_status reprank_truth_qualities(const reprank_truth* truth,
                                       const double** values, size_t* len) {
  if (truth == nullptr || values == nullptr || len == nullptr) {
    return fail_argument("truth, values, and len must be non-NULL");
  }
  *values = truth->truth.intrinsic_quality.data();
  *len = truth->truth.intrinsic_quality.size();
  t_last_error.clear();
  return REPRANK_OK;
}

reprank_status reprank_truth_noise_levels(const reprank_truth* truth,
                                          const double** values, size_t* len) {
  if (truth == nullptr || values == nullptr || len == nullptr) {
    return fail_argument("truth, values, and len must be non-NULL");
  }
  *values = truth->truth.noise_level.data();
  *len = truth->truth.noise_level.size();
  t_last_error.clear();
  return REPRANK_OK;
}

reprank_status reprank_generate(const reprank_truth* truth,
                                const reprank_generator_config* config,
                                reprank_table** out) {
  if (truth == nullptr || config == nullptr || out == nullptr) {
    return fail_argument("truth, config, and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::GeneratorConfig cfg = to_generator_config(*config);
    auto owned = std::make_unique<reprank_table>();
    owned->table = reprank::generate_ratings(truth->truth, cfg);
    *out = owned.release();
  });
}

reprank_status reprank_table_build(const uint32_t* users,
                                   const uint32_t* objects,
                                   const double* values, size_t count,
                                   uint32_t num_users, uint32_t num_objects,
                                   double rating_lo, double rating_hi,
                                   reprank_table** out) {
  if (out == nullptr) return fail_argument("out must be non-NULL");
  *out = nullptr;
  if (count > 0 && (users == nullptr || objects == nullptr || values == nullptr)) {
    return fail_argument("users, objects, and values must be non-NULL");
  }
  return guarded([&] {
    std::vector<reprank::RatingTriple> triples;
    triples.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      triples.push_back({users[i], objects[i], values[i]});
    }
    auto owned = std::make_unique<reprank_table>();
    owned->table = reprank::RatingTable::build(triples, num_users, num_objects,
                                               {rating_lo, rating_hi});
    *out = owned.release();
  });
}

void reprank_table_free(reprank_table* table) { delete table; }

uint32_t reprank_table_num_users(const reprank_table* table) {
  return table == nullptr ? 0 : table->table.num_users();
}

uint32_t reprank_table_num_objects(const reprank_table* table) {
  return table == nullptr ? 0 : table->table.num_objects();
}

size_t reprank_table_num_ratings(const reprank_table* table) {
  return table == nullptr ? 0 : table->table.num_ratings();
}

size_t reprank_table_duplicates_dropped(const reprank_table* table) {
  return table == nullptr ? 0 : table->table.duplicates_dropped();
}

size_t reprank_table_user_degree(const reprank_table* table, uint32_t user) {
  if (table == nullptr || user >= table->table.num_users()) return 0;
  return table->table.user_degree(user);
}

size_t reprank_table_object_votes(const reprank_table* table, uint32_t object) {
  if (table == nullptr || object >= table->table.num_objects()) return 0;
  return table->table.object_votes(object);
}

reprank_status reprank_table_density(const reprank_table* table, double* out) {
  if (table == nullptr || out == nullptr) {
    return fail_argument("table and out must be non-NULL");
  }
  return guarded([&] { *out = reprank::density(table->table); });
}

reprank_status reprank_table_export(const reprank_table* table,
                                    const reprank_truth* truth,
                                    const char* dir) {
  if (table == nullptr || dir == nullptr) {
    return fail_argument("table and dir must be non-NULL");
  }
  return guarded([&] {
    reprank::export_table(table->table,
                          truth == nullptr ? nullptr : &truth->truth, dir);
  });
}

reprank_status reprank_run(const reprank_table* table,
                           const reprank_engine_config* config,
                           reprank_state** out) {
  if (table == nullptr || config == nullptr || out == nullptr) {
    return fail_argument("table, config, and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::EngineConfig cfg = to_engine_config(*config);
    auto owned = std::make_unique<reprank_state>();
    owned->state = reprank::run_to_fixed_point(table->table, cfg);
    *out = owned.release();
  });
}

void reprank_state_free(reprank_state* state) { delete state; }

reprank_status reprank_state_qualities(const reprank_state* state,
                                       const double** values, size_t* len) {
  if (state == nullptr || values == nullptr || len == nullptr) {
    return fail_argument("state, values, and len must be non-NULL");
  }
  *values = state->state.quality.data();
  *len = state->state.quality.size();
  t_last_error.clear();
  return REPRANK_OK;
}

reprank_status reprank_state_deviations(const reprank_state* state,
                                        const double** values, size_t* len) {
  if (state == nullptr || values == nullptr || len == nullptr) {
    return fail_argument("state, values, and len must be non-NULL");
  }
  *values = state->state.deviation.data();
  *len = state->state.deviation.size();
  t_last_error.clear();
  return REPRANK_OK;
}

uint32_t reprank_state_iterations(const reprank_state* state) {
  return state == nullptr ? 0 : state->state.iterations;
}

int reprank_state_converged(const reprank_state* state) {
  return state != nullptr && state->state.converged ? 1 : 0;
}

double reprank_state_quality_delta(const reprank_state* state) {
  return state == nullptr ? 0.0 : state->state.quality_delta;
}

double reprank_state_deviation_delta(const reprank_state* state) {
  return state == nullptr ? 0.0 : state->state.deviation_delta;
}

reprank_status reprank_quality_rmse(const double* estimated,
                                    const double* truth, size_t len,
                                    double* out) {
  if (estimated == nullptr || truth == nullptr || out == nullptr) {
    return fail_argument("estimated, truth, and out must be non-NULL");
  }
  return guarded([&] {
    *out = reprank::quality_rmse({estimated, len}, {truth, len});
  });
}

reprank_status reprank_kendall_tau(const double* y, const double* z,
                                   size_t len, double* out) {
  if (y == nullptr || z == nullptr || out == nullptr) {
    return fail_argument("y, z, and out must be non-NULL");
  }
  return guarded([&] { *out = reprank::kendall_tau({y, len}, {z, len}); });
}

reprank_status reprank_rank_objects(const double* quality, size_t len,
                                    uint64_t tie_seed, reprank_ranking** out) {
  if (quality == nullptr || out == nullptr) {
    return fail_argument("quality and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    auto owned = std::make_unique<reprank_ranking>();
    owned->ranking = reprank::rank_objects({quality, len}, tie_seed);
    *out = owned.release();
  });
}

void reprank_ranking_free(reprank_ranking* ranking) { delete ranking; }

reprank_status reprank_ranking_order(const reprank_ranking* ranking,
                                     const uint32_t** ids, size_t* len) {
  if (ranking == nullptr || ids == nullptr || len == nullptr) {
    return fail_argument("ranking, ids, and len must be non-NULL");
  }
  *ids = ranking->ranking.order.data();
  *len = ranking->ranking.order.size();
  t_last_error.clear();
  return REPRANK_OK;
}

uint32_t reprank_ranking_rank_of(const reprank_ranking* ranking,
                                 uint32_t object) {
  if (ranking == nullptr || object >= ranking->ranking.rank_of.size()) {
    return 0;
  }
  return ranking->ranking.rank_of[object];
}

reprank_status reprank_auc(const reprank_ranking* ranking,
                           const uint32_t* benchmark_ids,
                           size_t num_benchmarks, uint32_t num_objects,
                           uint32_t num_ranked, double* out) {
  if (ranking == nullptr || out == nullptr) {
    return fail_argument("ranking and out must be non-NULL");
  }
  return guarded([&] {
    const reprank::BenchmarkSet bench =
        make_bench(benchmark_ids, num_benchmarks, num_objects);
    const uint32_t total = num_ranked != 0
                               ? num_ranked
                               : static_cast<uint32_t>(ranking->ranking.size());
    *out = reprank::auc(ranking->ranking, bench, total);
  });
}

reprank_status reprank_auc_pairwise(const reprank_ranking* ranking,
                                    const uint32_t* benchmark_ids,
                                    size_t num_benchmarks, uint32_t num_objects,
                                    double* out) {
  if (ranking == nullptr || out == nullptr) {
    return fail_argument("ranking and out must be non-NULL");
  }
  return guarded([&] {
    const reprank::BenchmarkSet bench =
        make_bench(benchmark_ids, num_benchmarks, num_objects);
    *out = reprank::auc_pairwise(ranking->ranking, bench);
  });
}

reprank_status reprank_dataset_load(const char* manifest_path,
                                    reprank_dataset** out) {
  if (manifest_path == nullptr || out == nullptr) {
    return fail_argument("manifest_path and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::DatasetManifest manifest =
        reprank::read_manifest(manifest_path);
    reprank::Dataset data = reprank::load_ratings(manifest);

    auto owned = std::make_unique<reprank_dataset>();
    owned->name = manifest.name;
    if (manifest.benchmark_path) {
      owned->benchmarks = reprank::load_benchmarks(manifest, data);
    }
    owned->table.table = std::move(data.table);
    owned->users = std::move(data.users);
    owned->objects = std::move(data.objects);
    *out = owned.release();
  });
}

void reprank_dataset_free(reprank_dataset* dataset) { delete dataset; }

const char* reprank_dataset_name(const reprank_dataset* dataset) {
  return dataset == nullptr ? nullptr : dataset->name.c_str();
}

const reprank_table* reprank_dataset_table(const reprank_dataset* dataset) {
  return dataset == nullptr ? nullptr : &dataset->table;
}

const char* reprank_dataset_user_name(const reprank_dataset* dataset,
                                      uint32_t user) {
  if (dataset == nullptr || user >= dataset->users.names.size()) return nullptr;
  return dataset->users.names[user].c_str();
}

const char* reprank_dataset_object_name(const reprank_dataset* dataset,
                                        uint32_t object) {
  if (dataset == nullptr || object >= dataset->objects.names.size()) {
    return nullptr;
  }
  return dataset->objects.names[object].c_str();
}

int reprank_dataset_has_benchmarks(const reprank_dataset* dataset) {
  return dataset != nullptr && dataset->benchmarks.has_value() ? 1 : 0;
}

reprank_status reprank_dataset_benchmarks(const reprank_dataset* dataset,
                                          const uint32_t** ids, size_t* len,
                                          size_t* skipped) {
  if (dataset == nullptr || ids == nullptr || len == nullptr) {
    return fail_argument("dataset, ids, and len must be non-NULL");
  }
  if (!dataset->benchmarks) {
    t_last_error = "dataset has no benchmark list";
    return REPRANK_ERR_INVALID_ARGUMENT;
  }
  *ids = dataset->benchmarks->set.ids.data();
  *len = dataset->benchmarks->set.ids.size();
  if (skipped != nullptr) *skipped = dataset->benchmarks->skipped;
  t_last_error.clear();
  return REPRANK_OK;
}

reprank_status reprank_sweep_synthetic(const reprank_sweep_params* params,
                                       const reprank_generator_config* generator,
                                       reprank_report** out) {
  if (params == nullptr || generator == nullptr || out == nullptr) {
    return fail_argument("params, generator, and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::SweepParams sweep = to_sweep_params(*params);
    const reprank::GeneratorConfig gen = to_generator_config(*generator);
    *out = build_report(reprank::run_synthetic_sweep(sweep, gen));
  });
}

reprank_status reprank_sweep_dataset(const reprank_sweep_params* params,
                                     const char* manifest_path,
                                     reprank_report** out) {
  if (params == nullptr || manifest_path == nullptr || out == nullptr) {
    return fail_argument("params, manifest_path, and out must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    const reprank::SweepParams sweep = to_sweep_params(*params);
    const reprank::DatasetManifest manifest =
        reprank::read_manifest(manifest_path);
    const reprank::Dataset data = reprank::load_ratings(manifest);
    const reprank::LoadedBenchmarks bench =
        reprank::load_benchmarks(manifest, data);
    *out = build_report(reprank::run_dataset_sweep(sweep, data, bench.set));
  });
}

void reprank_report_free(reprank_report* report) { delete report; }

reprank_status reprank_report_rows(const reprank_report* report,
                                   const reprank_sweep_row** rows,
                                   size_t* len) {
  if (report == nullptr || rows == nullptr || len == nullptr) {
    return fail_argument("report, rows, and len must be non-NULL");
  }
  *rows = report->rows.data();
  *len = report->rows.size();
  t_last_error.clear();
  return REPRANK_OK;
}

reprank_status reprank_report_write_csv(const reprank_report* report,
                                        const char* path) {
  if (report == nullptr || path == nullptr) {
    return fail_argument("report and path must be non-NULL");
  }
  return guarded([&] { reprank::write_report(report->source, path); });
}

const char* reprank_metric_name(int metric) {
  switch (metric) {
    case REPRANK_METRIC_DELTA:
      return "delta";
    case REPRANK_METRIC_TAU:
      return "tau";
    case REPRANK_METRIC_AUC:
      return "auc";
    case REPRANK_METRIC_AUC_PAIRWISE:
      return "auc_pairwise";
    default:
      return nullptr;
  }
}

}  // extern "C"
