#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/engine.hpp"
#include "core/ground_truth.hpp"
#include "core/rating_table.hpp"

namespace reprank {

// Object ids certified as high quality by an external source; the positives
// for rank-based evaluation.
struct BenchmarkSet {
  std::vector<std::uint32_t> ids;  // sorted, unique
  std::size_t size() const { return ids.size(); }
};

/// Validates ids against the object count, dedupes, and requires
/// 1 <= size < num_objects.
BenchmarkSet make_benchmark_set(std::vector<std::uint32_t> ids,
                                std::uint32_t num_objects);

struct Ranking {
  std::vector<std::uint32_t> order;    // object ids, best first
  std::vector<std::uint32_t> rank_of;  // 1-based rank per object, 0 = unranked
  std::size_t size() const { return order.size(); }
};

/// Root mean square difference between two equal-length vectors; every entry
/// must be defined (no unrated sentinels).
double quality_rmse(std::span<const double> estimated,
                    std::span<const double> truth);

/// Pairwise-concordance rank correlation in [-1, 1]: the signed fraction
/// 2/(L(L-1)) * sum over pairs of sgn((Y_i-Y_j)(Z_i-Z_j)), with tied pairs
/// contributing zero. Computed in O(L log L) via inversion counting; agrees
/// exactly with the quadratic pair sum because both reduce to the same
/// integer numerator.
double kendall_tau(std::span<const double> y, std::span<const double> z);

enum class ReputationTruth {
  noise_squared,   // squared drawn noise levels (the statistical target)
  realized_error,  // per-user empirical mean square error vs intrinsic quality
};

/// Kendall correlation between estimated user deviations and the chosen
/// ground-truth severity, over users holding at least one rating. +1 means
/// the reputation ordering was recovered perfectly.
double reputation_tau(const ReputationState& state, const GroundTruth& truth,
                      const RatingTable& table,
                      ReputationTruth mode = ReputationTruth::noise_squared);

/// Per-user mean square rating error against the intrinsic qualities;
/// users with no ratings get 0.
std::vector<double> realized_user_error(const RatingTable& table,
                                        const GroundTruth& truth);

/// Sorts objects by quality descending. Ties are broken by a seeded random
/// permutation within each tie group; unrated objects are excluded.
Ranking rank_objects(std::span<const double> quality, std::uint64_t tie_seed);

/// Rank-average statistic: mean over benchmarks of (M - R)/(M - S) with
/// M = num_ranked. Exceeds 1 when several benchmarks crowd the very top.
double auc(const Ranking& ranking, const BenchmarkSet& bench,
           std::uint32_t num_ranked);

/// Fraction of (benchmark, non-benchmark) pairs ranked in the right order;
/// always in [0, 1] and equal to auc() whenever there is a single benchmark.
double auc_pairwise(const Ranking& ranking, const BenchmarkSet& bench);

}  // namespace reprank
