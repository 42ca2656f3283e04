#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/engine.hpp"
#include "core/ingest.hpp"
#include "core/metrics.hpp"
#include "core/synth.hpp"

namespace reprank {

/// 0.0 to 2.0 in steps of 0.1: brackets the plain-average baseline (0) and
/// inverse-variance weighting (1) with room above.
std::vector<double> default_alpha_grid();

struct SweepParams {
  std::vector<double> alphas = default_alpha_grid();
  std::uint32_t realizations = 100;
  std::uint64_t base_seed = 0;

  // Engine settings shared by every point of the grid.
  double convergence_threshold = 1e-5;
  double deviation_floor = 1e-5;
  std::uint32_t max_iterations = 1000;

  // Worker threads for the realization loop; 0 means one per hardware
  // thread. Results never depend on this.
  unsigned workers = 1;

  void validate() const;
};

enum class SweepMetric { delta, tau, auc, auc_pairwise };

std::string_view to_string(SweepMetric metric);

// One aggregated curve point: mean and sample std of a metric across
// realizations at a single exponent value.
struct SweepRow {
  double alpha = 0.0;
  SweepMetric metric = SweepMetric::delta;
  double mean = 0.0;
  double stddev = 0.0;
  std::uint32_t n = 0;
  double mean_iterations = 0.0;
  double convergence_rate = 0.0;
};

/// Redraws ground truth and a rating table per realization (seeds derived
/// from base_seed), runs the engine at every alpha on that same table, and
/// aggregates quality error (delta) and reputation rank correlation (tau).
std::vector<SweepRow> run_synthetic_sweep(const SweepParams& params,
                                          const GeneratorConfig& gen);

/// Runs the engine once per alpha on fixed data, then averages both AUC
/// variants over `realizations` random tie-break rankings.
std::vector<SweepRow> run_dataset_sweep(const SweepParams& params,
                                        const Dataset& dataset,
                                        const BenchmarkSet& bench);

/// CSV text: header alpha,metric,mean,std,n,mean_iterations,convergence_rate
/// with rows sorted by (metric label, alpha).
std::string format_report(std::vector<SweepRow> rows);

void write_report(const std::vector<SweepRow>& rows,
                  const std::filesystem::path& path);

}  // namespace reprank
