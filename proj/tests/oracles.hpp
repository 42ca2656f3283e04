// Reference implementations the test suite trusts instead of the library
// under test. Deliberately naive (quadratic loops, closed forms, std::mt19937
// instead of the library's generator) so a shared bug is implausible.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "core/metrics.hpp"
#include "core/rating_table.hpp"

namespace testutil {

// Quadratic pair sum with an integer numerator. The fast implementation is
// required to agree with this bit for bit, so the final expression mirrors
// it exactly.
inline double brute_kendall(std::span<const double> y,
                            std::span<const double> z) {
  const std::size_t n = y.size();
  std::int64_t num = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dy = y[i] - y[j];
      const double dz = z[i] - z[j];
      const double product = dy * dz;
      if (product > 0) ++num;
      if (product < 0) --num;
    }
  }
  return 2.0 * static_cast<double>(num) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

// Win fraction by direct enumeration of every (benchmark, non-benchmark)
// pair of ranked objects.
inline double brute_auc_pairwise(const reprank::Ranking& ranking,
                                 const std::vector<std::uint32_t>& bench_ids) {
  std::vector<std::uint32_t> bench_ranks;
  std::vector<std::uint32_t> other_ranks;
  for (std::uint32_t id : ranking.order) {
    const bool is_bench =
        std::find(bench_ids.begin(), bench_ids.end(), id) != bench_ids.end();
    (is_bench ? bench_ranks : other_ranks).push_back(ranking.rank_of[id]);
  }
  std::size_t wins = 0;
  for (std::uint32_t b : bench_ranks) {
    for (std::uint32_t o : other_ranks) {
      if (b < o) ++wins;
    }
  }
  return static_cast<double>(wins) /
         (static_cast<double>(bench_ranks.size()) *
          static_cast<double>(other_ranks.size()));
}

// Closed-form CDF of the density proportional to q^(-1.5) on [qmin, qmax].
inline double power_law_cdf(double q, double qmin, double qmax) {
  const double a = 1.0 / std::sqrt(qmin);
  const double b = 1.0 / std::sqrt(qmax);
  return (a - 1.0 / std::sqrt(q)) / (a - b);
}

// Per-object arithmetic mean of ratings; NaN for objects nobody rated.
inline std::vector<double> simple_means(const reprank::RatingTable& table) {
  std::vector<double> sum(table.num_objects(), 0.0);
  std::vector<std::size_t> count(table.num_objects(), 0);
  for (const reprank::RatingTriple& t : table.triples()) {
    sum[t.object] += t.value;
    count[t.object] += 1;
  }
  std::vector<double> mean(table.num_objects());
  for (std::size_t k = 0; k < mean.size(); ++k) {
    mean[k] = count[k] == 0 ? std::numeric_limits<double>::quiet_NaN()
                            : sum[k] / static_cast<double>(count[k]);
  }
  return mean;
}

// Random but valid table: dimensions and pair count drawn from the engine's
// mt19937_64, duplicates allowed (the builder's keep-last rule handles them).
inline reprank::RatingTable random_table(std::uint64_t seed,
                                         std::uint32_t max_users,
                                         std::uint32_t max_objects) {
  std::mt19937_64 rng(seed);
  const std::uint32_t num_users =
      2 + static_cast<std::uint32_t>(rng() % (max_users - 1));
  const std::uint32_t num_objects =
      1 + static_cast<std::uint32_t>(rng() % max_objects);
  const std::size_t pairs =
      1 + rng() % (static_cast<std::size_t>(num_users) * num_objects);

  std::uniform_real_distribution<double> value(0.0, 5.0);
  std::vector<reprank::RatingTriple> triples;
  triples.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    triples.push_back({static_cast<std::uint32_t>(rng() % num_users),
                       static_cast<std::uint32_t>(rng() % num_objects),
                       value(rng)});
  }
  return reprank::RatingTable::build(triples, num_users, num_objects);
}

}  // namespace testutil
