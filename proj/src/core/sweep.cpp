#include "core/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"

namespace reprank {

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(21);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = static_cast<double>(i) / 10.0;
  }
  return grid;
}

void SweepParams::validate() const {
  if (alphas.empty()) {
    throw Error(ErrorCode::invalid_argument, "alpha grid is empty");
  }
  for (double alpha : alphas) {
    EngineConfig probe{alpha, convergence_threshold, deviation_floor,
                       max_iterations};
    probe.validate();
  }
  if (realizations == 0) {
    throw Error(ErrorCode::invalid_argument, "realizations must be >= 1");
  }
}

std::string_view to_string(SweepMetric metric) {
  switch (metric) {
    case SweepMetric::delta:
      return "delta";
    case SweepMetric::tau:
      return "tau";
    case SweepMetric::auc:
      return "auc";
    case SweepMetric::auc_pairwise:
      return "auc_pairwise";
  }
  throw Error(ErrorCode::invalid_argument, "unknown metric");
}

namespace {

unsigned effective_workers(unsigned requested, std::size_t jobs) {
  unsigned workers = requested != 0 ? requested
                                    : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
}

// Runs body(0..count-1) across the given number of threads. Each index is
// claimed exactly once; callers must write results into per-index slots so
// the outcome is independent of scheduling. The first exception wins and is
// rethrown on the caller's thread.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  workers = effective_workers(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Sample {
  double mean = 0.0;
  double stddev = 0.0;
};

Sample summarize(const std::vector<double>& values) {
  Sample s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      sq += d * d;
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

SweepRow make_row(double alpha, SweepMetric metric,
                  const std::vector<double>& values, double mean_iterations,
                  double convergence_rate) {
  const Sample s = summarize(values);
  SweepRow row;
  row.alpha = alpha;
  row.metric = metric;
  row.mean = s.mean;
  row.stddev = s.stddev;
  row.n = static_cast<std::uint32_t>(values.size());
  row.mean_iterations = mean_iterations;
  row.convergence_rate = convergence_rate;
  return row;
}

// Root mean square quality error restricted to objects that received votes;
// the unrated sentinel has no meaningful error.
double rated_quality_rmse(const ReputationState& state,
                          const GroundTruth& truth) {
  std::vector<double> estimated;
  std::vector<double> target;
  estimated.reserve(state.quality.size());
  target.reserve(state.quality.size());
  for (std::size_t k = 0; k < state.quality.size(); ++k) {
    if (is_unrated(state.quality[k])) continue;
    estimated.push_back(state.quality[k]);
    target.push_back(truth.intrinsic_quality[k]);
  }
  return quality_rmse(estimated, target);
}

}  // namespace

std::vector<SweepRow> run_synthetic_sweep(const SweepParams& params,
                                          const GeneratorConfig& gen) {
  params.validate();
  gen.validate();

  struct PerAlpha {
    double delta = 0.0;
    double tau = 0.0;
    std::uint32_t iterations = 0;
    bool converged = false;
  };
  std::vector<std::vector<PerAlpha>> results(
      params.realizations, std::vector<PerAlpha>(params.alphas.size()));

  parallel_for(params.realizations, params.workers, [&](std::size_t r) {
    GeneratorConfig draw = gen;
    draw.seed = derive_seed(params.base_seed,
                            {kStreamRealization, static_cast<std::uint64_t>(r)});
    const GroundTruth truth = draw_ground_truth(draw);
    const RatingTable table = generate_ratings(truth, draw);

    for (std::size_t ai = 0; ai < params.alphas.size(); ++ai) {
      EngineConfig cfg{params.alphas[ai], params.convergence_threshold,
                       params.deviation_floor, params.max_iterations};
      const ReputationState state = run_to_fixed_point(table, cfg);
      PerAlpha& out = results[r][ai];
      out.delta = rated_quality_rmse(state, truth);
      out.tau = reputation_tau(state, truth, table);
      out.iterations = state.iterations;
      out.converged = state.converged;
    }
  });

  std::vector<SweepRow> rows;
  rows.reserve(params.alphas.size() * 2);
  std::vector<double> deltas(params.realizations);
  std::vector<double> taus(params.realizations);
  for (std::size_t ai = 0; ai < params.alphas.size(); ++ai) {
    double iteration_sum = 0.0;
    std::uint32_t converged_count = 0;
    for (std::uint32_t r = 0; r < params.realizations; ++r) {
      const PerAlpha& cell = results[r][ai];
      deltas[r] = cell.delta;
      taus[r] = cell.tau;
      iteration_sum += cell.iterations;
      converged_count += cell.converged ? 1 : 0;
    }
    const double mean_iterations =
        iteration_sum / static_cast<double>(params.realizations);
    const double convergence_rate = static_cast<double>(converged_count) /
                                    static_cast<double>(params.realizations);
    rows.push_back(make_row(params.alphas[ai], SweepMetric::delta, deltas,
                            mean_iterations, convergence_rate));
    rows.push_back(make_row(params.alphas[ai], SweepMetric::tau, taus,
                            mean_iterations, convergence_rate));
  }
  return rows;
}

std::vector<SweepRow> run_dataset_sweep(const SweepParams& params,
                                        const Dataset& dataset,
                                        const BenchmarkSet& bench) {
  params.validate();
  if (bench.ids.empty()) {
    throw Error(ErrorCode::invalid_argument, "benchmark set is empty");
  }

  std::vector<SweepRow> rows;
  rows.reserve(params.alphas.size() * 2);
  for (std::size_t ai = 0; ai < params.alphas.size(); ++ai) {
    EngineConfig cfg{params.alphas[ai], params.convergence_threshold,
                     params.deviation_floor, params.max_iterations};
    const ReputationState state = run_to_fixed_point(dataset.table, cfg);

    std::vector<double> rank_avg(params.realizations);
    std::vector<double> pairwise(params.realizations);
    parallel_for(params.realizations, params.workers, [&](std::size_t t) {
      const std::uint64_t tie_seed = derive_seed(
          params.base_seed, {kStreamTieBreak, static_cast<std::uint64_t>(ai),
                             static_cast<std::uint64_t>(t)});
      const Ranking ranking = rank_objects(state.quality, tie_seed);
      rank_avg[t] =
          auc(ranking, bench, static_cast<std::uint32_t>(ranking.size()));
      pairwise[t] = auc_pairwise(ranking, bench);
    });

    const double mean_iterations = state.iterations;
    const double convergence_rate = state.converged ? 1.0 : 0.0;
    rows.push_back(make_row(params.alphas[ai], SweepMetric::auc, rank_avg,
                            mean_iterations, convergence_rate));
    rows.push_back(make_row(params.alphas[ai], SweepMetric::auc_pairwise,
                            pairwise, mean_iterations, convergence_rate));
  }
  return rows;
}

std::string format_report(std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) {
              const std::string_view la = to_string(a.metric);
              const std::string_view lb = to_string(b.metric);
              if (la != lb) return la < lb;
              return a.alpha < b.alpha;
            });

  std::string out = "alpha,metric,mean,std,n,mean_iterations,convergence_rate\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.alpha);
    out += ',';
    out += to_string(row.metric);
    out += ',';
    out += format_double(row.mean);
    out += ',';
    out += format_double(row.stddev);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.mean_iterations);
    out += ',';
    out += format_double(row.convergence_rate);
    out += '\n';
  }
  return out;
}

void write_report(const std::vector<SweepRow>& rows,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path.string());
  }
  out << format_report(rows);
  if (!out.flush()) {
    throw Error(ErrorCode::io, "write failed for " + path.string());
  }
}

}  // namespace reprank
