#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/rating_table.hpp"

namespace reprank {

struct EngineConfig {
  // Reputation exponent: users are weighted by deviation^(-alpha), so 0
  // recovers plain averaging and larger values concentrate weight on users
  // whose ratings track the current quality estimates.
  double alpha = 1.0;
  double convergence_threshold = 1e-5;
  double deviation_floor = 1e-5;
  std::uint32_t max_iterations = 1000;

  // Hard cap keeping deviation_floor^(-alpha) finite with margin.
  static constexpr double kMaxAlpha = 8.0;

  void validate() const;
};

struct ReputationState {
  std::vector<double> quality;    // per object; NaN marks objects nobody rated
  std::vector<double> deviation;  // per user; floored, 1.0 for users with no ratings
  std::uint32_t iterations = 0;
  double quality_delta = 0.0;
  double deviation_delta = 0.0;
  bool converged = false;
};

/// True for the sentinel carried by objects with no ratings.
bool is_unrated(double quality);

/// Weighted average rating per object, weights deviation^(-alpha) over each
/// object's voters. Objects without votes get the unrated sentinel.
std::vector<double> update_qualities(const RatingTable& table,
                                     std::span<const double> deviations,
                                     double alpha);

/// Mean square deviation of each user's ratings from the current qualities,
/// floored at deviation_floor. Users without ratings get the neutral 1.0.
std::vector<double> update_deviations(const RatingTable& table,
                                      std::span<const double> qualities,
                                      double deviation_floor);

/// Alternates update_qualities / update_deviations from the all-ones
/// deviation start until the max elementwise change of both vectors drops
/// below the threshold, or max_iterations is hit (converged=false then;
/// never throws for non-convergence).
ReputationState run_to_fixed_point(const RatingTable& table,
                                   const EngineConfig& config);

}  // namespace reprank
