// Exercises the shared library's C surface: happy paths, status codes, and
// the thread-local error message.
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "reprank.h"

namespace {

const std::filesystem::path kFixtures{REPRANK_FIXTURE_DIR};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and config defaults") {
  CHECK(reprank_version() != nullptr);
  CHECK(std::strlen(reprank_version()) > 0);

  reprank_engine_config engine;
  reprank_engine_config_init(&engine);
  CHECK(engine.alpha == 1.0);
  CHECK(engine.convergence_threshold == 1e-5);
  CHECK(engine.deviation_floor == 1e-5);
  CHECK(engine.max_iterations == 1000);

  reprank_generator_config gen;
  reprank_generator_config_init(&gen);
  CHECK(gen.num_users == 2000);
  CHECK(gen.num_objects == 1000);
  CHECK(gen.density == 0.05);
  CHECK(gen.rating_lo == 0.0);
  CHECK(gen.rating_hi == 5.0);

  reprank_sweep_params sweep;
  reprank_sweep_params_init(&sweep);
  CHECK(sweep.alphas == nullptr);
  CHECK(sweep.realizations == 100);
  CHECK(sweep.workers == 1);
}

TEST_CASE("table construction, accessors, and failure codes") {
  const std::vector<uint32_t> users = {0, 0, 1, 1};
  const std::vector<uint32_t> objects = {0, 1, 0, 0};
  const std::vector<double> values = {4.0, 2.0, 3.0, 5.0};

  reprank_table* table = nullptr;
  REQUIRE(reprank_table_build(users.data(), objects.data(), values.data(), 4,
                              2, 2, 0.0, 5.0, &table) == REPRANK_OK);
  CHECK(reprank_table_num_users(table) == 2);
  CHECK(reprank_table_num_objects(table) == 2);
  CHECK(reprank_table_num_ratings(table) == 3);   // (1,0) deduplicated
  CHECK(reprank_table_duplicates_dropped(table) == 1);
  CHECK(reprank_table_user_degree(table, 0) == 2);
  CHECK(reprank_table_object_votes(table, 0) == 2);
  CHECK(reprank_table_object_votes(table, 99) == 0);  // out of range: 0

  double d = 0.0;
  REQUIRE(reprank_table_density(table, &d) == REPRANK_OK);
  CHECK(d == 0.75);
  reprank_table_free(table);

  SUBCASE("index out of range yields INVALID_ARGUMENT and a message") {
    const uint32_t bad_user = 9;
    const uint32_t object = 0;
    const double value = 3.0;
    reprank_table* t = nullptr;
    CHECK(reprank_table_build(&bad_user, &object, &value, 1, 2, 2, 0.0, 5.0,
                              &t) == REPRANK_ERR_INVALID_ARGUMENT);
    CHECK(t == nullptr);
    CHECK(std::strlen(reprank_last_error()) > 0);
  }

  SUBCASE("null output pointer is rejected, not crashed on") {
    CHECK(reprank_table_build(users.data(), objects.data(), values.data(), 4,
                              2, 2, 0.0, 5.0, nullptr) ==
          REPRANK_ERR_INVALID_ARGUMENT);
  }
}

TEST_CASE("generate, run, rank, and score through the C surface") {
  reprank_generator_config gen;
  reprank_generator_config_init(&gen);
  gen.num_users = 120;
  gen.num_objects = 40;
  gen.density = 0.3;
  gen.seed = 31;

  reprank_truth* truth = nullptr;
  REQUIRE(reprank_draw_truth(&gen, &truth) == REPRANK_OK);

  const double* qualities = nullptr;
  size_t num_q = 0;
  REQUIRE(reprank_truth_qualities(truth, &qualities, &num_q) == REPRANK_OK);
  CHECK(num_q == 40);
  const double* noise = nullptr;
  size_t num_z = 0;
  REQUIRE(reprank_truth_noise_levels(truth, &noise, &num_z) == REPRANK_OK);
  CHECK(num_z == 120);

  reprank_table* table = nullptr;
  REQUIRE(reprank_generate(truth, &gen, &table) == REPRANK_OK);
  CHECK(reprank_table_num_ratings(table) > 0);

  reprank_engine_config engine;
  reprank_engine_config_init(&engine);
  reprank_state* state = nullptr;
  REQUIRE(reprank_run(table, &engine, &state) == REPRANK_OK);
  CHECK(reprank_state_converged(state) == 1);
  CHECK(reprank_state_iterations(state) >= 1);
  CHECK(reprank_state_quality_delta(state) < engine.convergence_threshold);
  CHECK(reprank_state_deviation_delta(state) < engine.convergence_threshold);

  const double* est = nullptr;
  size_t est_len = 0;
  REQUIRE(reprank_state_qualities(state, &est, &est_len) == REPRANK_OK);
  CHECK(est_len == 40);
  const double* dev = nullptr;
  size_t dev_len = 0;
  REQUIRE(reprank_state_deviations(state, &dev, &dev_len) == REPRANK_OK);
  CHECK(dev_len == 120);

  double rmse = -1.0;
  REQUIRE(reprank_quality_rmse(est, qualities, est_len, &rmse) == REPRANK_OK);
  CHECK(rmse >= 0.0);
  CHECK(rmse < 2.5);

  reprank_ranking* ranking = nullptr;
  REQUIRE(reprank_rank_objects(est, est_len, 5, &ranking) == REPRANK_OK);
  const uint32_t* order = nullptr;
  size_t ranked = 0;
  REQUIRE(reprank_ranking_order(ranking, &order, &ranked) == REPRANK_OK);
  CHECK(ranked == 40);
  CHECK(reprank_ranking_rank_of(ranking, order[0]) == 1);

  const uint32_t bench_ids[2] = {order[0], order[1]};
  double rank_avg = 0.0;
  REQUIRE(reprank_auc(ranking, bench_ids, 2, 40, 0, &rank_avg) == REPRANK_OK);
  double pairwise = 0.0;
  REQUIRE(reprank_auc_pairwise(ranking, bench_ids, 2, 40, &pairwise) ==
          REPRANK_OK);
  CHECK(pairwise == 1.0);  // the top two objects beat everything
  CHECK(rank_avg > 1.0);

  reprank_ranking_free(ranking);
  reprank_state_free(state);
  reprank_table_free(table);
  reprank_truth_free(truth);
}

TEST_CASE("kendall through the C surface") {
  const double y[3] = {1.0, 2.0, 3.0};
  const double z[3] = {2.0, 1.0, 3.0};
  double tau = 0.0;
  REQUIRE(reprank_kendall_tau(y, z, 3, &tau) == REPRANK_OK);
  CHECK(tau == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(reprank_kendall_tau(y, z, 1, &tau) == REPRANK_ERR_INVALID_ARGUMENT);
  CHECK(reprank_kendall_tau(nullptr, z, 3, &tau) ==
        REPRANK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dataset loading and benchmarks from the bundled fixture") {
  const std::string manifest = (kFixtures / "mini_manifest.cfg").string();
  reprank_dataset* dataset = nullptr;
  REQUIRE(reprank_dataset_load(manifest.c_str(), &dataset) == REPRANK_OK);

  CHECK(std::string(reprank_dataset_name(dataset)) == "mini");
  const reprank_table* table = reprank_dataset_table(dataset);
  CHECK(reprank_table_num_users(table) == 6);
  CHECK(reprank_table_num_objects(table) == 5);
  CHECK(std::string(reprank_dataset_user_name(dataset, 5)) == "13");
  CHECK(std::string(reprank_dataset_object_name(dataset, 0)) == "10");
  CHECK(reprank_dataset_object_name(dataset, 99) == nullptr);

  REQUIRE(reprank_dataset_has_benchmarks(dataset) == 1);
  const uint32_t* ids = nullptr;
  size_t len = 0;
  size_t skipped = 0;
  REQUIRE(reprank_dataset_benchmarks(dataset, &ids, &len, &skipped) ==
          REPRANK_OK);
  CHECK(len == 2);
  CHECK(skipped == 1);
  reprank_dataset_free(dataset);

  SUBCASE("missing manifest maps to the io status") {
    reprank_dataset* none = nullptr;
    CHECK(reprank_dataset_load("/does/not/exist.cfg", &none) ==
          REPRANK_ERR_IO);
    CHECK(none == nullptr);
  }

  SUBCASE("declared-count mismatch maps to the validation status") {
    const std::string bad =
        (kFixtures / "mini_manifest_badcounts.cfg").string();
    reprank_dataset* none = nullptr;
    CHECK(reprank_dataset_load(bad.c_str(), &none) == REPRANK_ERR_VALIDATION);
    CHECK(std::string(reprank_last_error()).find("6040") !=
          std::string::npos);
  }
}

TEST_CASE("sweeps and reports through the C surface") {
  reprank_sweep_params params;
  reprank_sweep_params_init(&params);
  const double alphas[2] = {0.0, 1.0};
  params.alphas = alphas;
  params.num_alphas = 2;
  params.realizations = 3;
  params.base_seed = 17;

  reprank_generator_config gen;
  reprank_generator_config_init(&gen);
  gen.num_users = 50;
  gen.num_objects = 20;
  gen.density = 0.3;

  reprank_report* report = nullptr;
  REQUIRE(reprank_sweep_synthetic(&params, &gen, &report) == REPRANK_OK);

  const reprank_sweep_row* rows = nullptr;
  size_t len = 0;
  REQUIRE(reprank_report_rows(report, &rows, &len) == REPRANK_OK);
  REQUIRE(len == 4);
  // Rows arrive in CSV order: metric label major, alpha minor.
  CHECK(rows[0].metric == REPRANK_METRIC_DELTA);
  CHECK(rows[0].alpha == 0.0);
  CHECK(rows[1].metric == REPRANK_METRIC_DELTA);
  CHECK(rows[1].alpha == 1.0);
  CHECK(rows[2].metric == REPRANK_METRIC_TAU);
  CHECK(rows[3].metric == REPRANK_METRIC_TAU);
  CHECK(rows[0].n == 3);

  CHECK(std::string(reprank_metric_name(rows[0].metric)) == "delta");
  CHECK(reprank_metric_name(99) == nullptr);

  const auto csv_path =
      std::filesystem::temp_directory_path() / "reprank_capi_report.csv";
  REQUIRE(reprank_report_write_csv(report, csv_path.string().c_str()) ==
          REPRANK_OK);
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "alpha,metric,mean,std,n,mean_iterations,convergence_rate");
  std::filesystem::remove(csv_path);
  reprank_report_free(report);

  SUBCASE("dataset sweep via manifest path") {
    const std::string manifest = (kFixtures / "mini_manifest.cfg").string();
    reprank_report* data_report = nullptr;
    REQUIRE(reprank_sweep_dataset(&params, manifest.c_str(), &data_report) ==
            REPRANK_OK);
    const reprank_sweep_row* data_rows = nullptr;
    size_t data_len = 0;
    REQUIRE(reprank_report_rows(data_report, &data_rows, &data_len) ==
            REPRANK_OK);
    CHECK(data_len == 4);  // two alphas x (auc, auc_pairwise)
    CHECK(data_rows[0].metric == REPRANK_METRIC_AUC);
    CHECK(data_rows[2].metric == REPRANK_METRIC_AUC_PAIRWISE);
    reprank_report_free(data_report);
  }

  SUBCASE("alphas pointer without a count is rejected") {
    params.num_alphas = 0;
    reprank_report* bad = nullptr;
    CHECK(reprank_sweep_synthetic(&params, &gen, &bad) ==
          REPRANK_ERR_INVALID_ARGUMENT);
  }
}

}  // TEST_SUITE
