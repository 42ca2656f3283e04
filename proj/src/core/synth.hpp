#pragma once

#include <cstdint>

#include "core/ground_truth.hpp"
#include "core/rating_table.hpp"

namespace reprank {

enum class QualityDist {
  uniform,    // intrinsic qualities uniform over the rating bounds
  power_law,  // density ~ q^(-1.5) on [power_law_min, hi], inverse-CDF sampled
};

struct GeneratorConfig {
  std::uint32_t num_users = 2000;
  std::uint32_t num_objects = 1000;
  double density = 0.05;  // independent inclusion probability per pair
  QualityDist quality_dist = QualityDist::uniform;
  // Lower cutoff for the power-law quality distribution; q^(-1.5) is not
  // normalizable down to zero, so a positive cutoff is mandatory.
  double power_law_min = 0.1;
  RatingBounds bounds{0.0, 5.0};
  std::uint64_t seed = 0;

  static constexpr double kPowerLawExponent = -1.5;

  void validate() const;
};

/// Draws intrinsic qualities and user noise levels. Deterministic per seed.
GroundTruth draw_ground_truth(const GeneratorConfig& config);

/// Emits one rating table: each (user, object) pair is included with
/// probability `density`; an included rating is the object's intrinsic
/// quality plus uniform noise in [-zeta, +zeta], clipped to the bounds.
/// Per-user streams derive from (seed, user), so the table is deterministic
/// per seed whatever order users are generated in.
RatingTable generate_ratings(const GroundTruth& truth,
                             const GeneratorConfig& config);

}  // namespace reprank
