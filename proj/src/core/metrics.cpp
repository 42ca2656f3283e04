#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/rng.hpp"

namespace reprank {

BenchmarkSet make_benchmark_set(std::vector<std::uint32_t> ids,
                                std::uint32_t num_objects) {
  if (ids.empty()) {
    throw Error(ErrorCode::invalid_argument, "benchmark set must be non-empty");
  }
  for (std::uint32_t id : ids) {
    if (id >= num_objects) {
      throw Error(ErrorCode::invalid_argument,
                  "benchmark object id " + std::to_string(id) +
                      " out of range: expected < " +
                      std::to_string(num_objects));
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() >= num_objects) {
    throw Error(ErrorCode::invalid_argument,
                "benchmark set must leave at least one non-benchmark object");
  }
  return BenchmarkSet{std::move(ids)};
}

double quality_rmse(std::span<const double> estimated,
                    std::span<const double> truth) {
  if (estimated.size() != truth.size()) {
    throw Error(ErrorCode::invalid_argument,
                "vector length mismatch: " + std::to_string(estimated.size()) +
                    " vs " + std::to_string(truth.size()));
  }
  if (estimated.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "rmse undefined for empty vectors");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < estimated.size(); ++k) {
    if (std::isnan(estimated[k]) || std::isnan(truth[k])) {
      throw Error(ErrorCode::invalid_argument,
                  "undefined entry at index " + std::to_string(k));
    }
    const double d = estimated[k] - truth[k];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(estimated.size()));
}

namespace {

// Strict inversions of `values` counted by merge sort.
std::int64_t count_inversions(std::vector<double>& values,
                              std::vector<double>& buffer) {
  const std::size_t n = values.size();
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        if (values[j] < values[i]) {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[out++] = values[j++];
        } else {
          buffer[out++] = values[i++];  // equal values: left first, no count
        }
      }
      while (i < mid) buffer[out++] = values[i++];
      while (j < hi) buffer[out++] = values[j++];
      std::copy(buffer.begin() + lo, buffer.begin() + hi, values.begin() + lo);
    }
  }
  return inversions;
}

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

}  // namespace

double kendall_tau(std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) {
    throw Error(ErrorCode::invalid_argument,
                "list length mismatch: " + std::to_string(y.size()) + " vs " +
                    std::to_string(z.size()));
  }
  const std::size_t n = y.size();
  if (n < 2) {
    throw Error(ErrorCode::invalid_argument,
                "kendall_tau needs at least two entries");
  }

  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return y[a] != y[b] ? y[a] < y[b] : z[a] < z[b];
  });

  // Pair accounting: with total = C(n,2), ties_y / ties_z / ties_both the
  // tied-pair counts and inv the strict inversions of z once sorted by
  // (y, z), the signed pair sum equals
  //   total - ties_y - ties_z + ties_both - 2 * inv.
  std::int64_t ties_y = 0;
  std::int64_t ties_both = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && y[idx[j]] == y[idx[i]]) ++j;
    ties_y += tied_pairs(static_cast<std::int64_t>(j - i));
    for (std::size_t a = i; a < j;) {
      std::size_t b = a;
      while (b < j && z[idx[b]] == z[idx[a]]) ++b;
      ties_both += tied_pairs(static_cast<std::int64_t>(b - a));
      a = b;
    }
    i = j;
  }

  std::vector<double> z_sorted(n);
  for (std::size_t i = 0; i < n; ++i) z_sorted[i] = z[idx[i]];
  std::vector<double> merge_src = z_sorted;
  std::vector<double> buffer(n);
  const std::int64_t inversions = count_inversions(merge_src, buffer);

  std::sort(z_sorted.begin(), z_sorted.end());
  std::int64_t ties_z = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && z_sorted[j] == z_sorted[i]) ++j;
    ties_z += tied_pairs(static_cast<std::int64_t>(j - i));
    i = j;
  }

  const std::int64_t total =
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t numerator =
      total - ties_y - ties_z + ties_both - 2 * inversions;
  return 2.0 * static_cast<double>(numerator) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<double> realized_user_error(const RatingTable& table,
                                        const GroundTruth& truth) {
  if (truth.intrinsic_quality.size() != table.num_objects()) {
    throw Error(ErrorCode::invalid_argument,
                "ground truth does not match the table's object count");
  }
  std::vector<double> error(table.num_users(), 0.0);
  for (std::uint32_t i = 0; i < table.num_users(); ++i) {
    const auto rated = table.ratings_by_user(i);
    if (rated.empty()) continue;
    double sum = 0.0;
    for (const auto& r : rated) {
      const double d = r.value - truth.intrinsic_quality[r.id];
      sum += d * d;
    }
    error[i] = sum / static_cast<double>(rated.size());
  }
  return error;
}

double reputation_tau(const ReputationState& state, const GroundTruth& truth,
                      const RatingTable& table, ReputationTruth mode) {
  if (state.deviation.size() != table.num_users() ||
      truth.noise_level.size() != table.num_users()) {
    throw Error(ErrorCode::invalid_argument,
                "state or ground truth does not match the table's user count");
  }
  const std::vector<double> target = mode == ReputationTruth::noise_squared
                                         ? truth.error_proxy()
                                         : realized_user_error(table, truth);
  std::vector<double> estimated;
  std::vector<double> reference;
  estimated.reserve(table.num_users());
  reference.reserve(table.num_users());
  for (std::uint32_t i = 0; i < table.num_users(); ++i) {
    if (table.user_degree(i) == 0) continue;
    estimated.push_back(state.deviation[i]);
    reference.push_back(target[i]);
  }
  if (estimated.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "reputation correlation needs at least two rated users");
  }
  return kendall_tau(estimated, reference);
}

Ranking rank_objects(std::span<const double> quality, std::uint64_t tie_seed) {
  std::vector<std::uint32_t> ids;
  ids.reserve(quality.size());
  for (std::uint32_t k = 0; k < quality.size(); ++k) {
    if (!std::isnan(quality[k])) ids.push_back(k);
  }

  // Shuffle first, then stable-sort by quality: inside every tie group the
  // order is the restriction of a uniform random permutation.
  SplitMix64 rng(tie_seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(ids[i - 1], ids[j]);
  }
  std::stable_sort(ids.begin(), ids.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return quality[a] > quality[b];
                   });

  Ranking ranking;
  ranking.rank_of.assign(quality.size(), 0);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    ranking.rank_of[ids[r]] = static_cast<std::uint32_t>(r + 1);
  }
  ranking.order = std::move(ids);
  return ranking;
}

namespace {

std::vector<std::uint32_t> benchmark_ranks(const Ranking& ranking,
                                           const BenchmarkSet& bench) {
  std::vector<std::uint32_t> ranks;
  ranks.reserve(bench.size());
  for (std::uint32_t id : bench.ids) {
    if (id >= ranking.rank_of.size() || ranking.rank_of[id] == 0) {
      throw Error(ErrorCode::invalid_argument,
                  "benchmark object " + std::to_string(id) +
                      " missing from the ranking");
    }
    ranks.push_back(ranking.rank_of[id]);
  }
  return ranks;
}

}  // namespace

double auc(const Ranking& ranking, const BenchmarkSet& bench,
           std::uint32_t num_ranked) {
  const auto ranks = benchmark_ranks(ranking, bench);
  const std::int64_t s = static_cast<std::int64_t>(ranks.size());
  const std::int64_t m = num_ranked;
  if (s >= m) {
    throw Error(ErrorCode::invalid_argument,
                "need more ranked objects than benchmarks");
  }
  std::int64_t sum = 0;
  for (std::uint32_t r : ranks) sum += m - static_cast<std::int64_t>(r);
  return static_cast<double>(sum) /
         (static_cast<double>(s) * static_cast<double>(m - s));
}

double auc_pairwise(const Ranking& ranking, const BenchmarkSet& bench) {
  auto ranks = benchmark_ranks(ranking, bench);
  std::sort(ranks.begin(), ranks.end());
  const std::int64_t s = static_cast<std::int64_t>(ranks.size());
  const std::int64_t m = static_cast<std::int64_t>(ranking.size());
  if (s >= m) {
    throw Error(ErrorCode::invalid_argument,
                "need more ranked objects than benchmarks");
  }
  // Ranks are distinct, so the benchmark at sorted position j outranks
  // (m - rank) objects, of which (s - 1 - j) are other benchmarks.
  std::int64_t wins = 0;
  for (std::int64_t j = 0; j < s; ++j) {
    wins += (m - static_cast<std::int64_t>(ranks[j])) - (s - 1 - j);
  }
  return static_cast<double>(wins) /
         (static_cast<double>(s) * static_cast<double>(m - s));
}

}  // namespace reprank
