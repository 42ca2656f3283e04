#pragma once

#include <vector>

namespace reprank {

// Synthetic-workload ground truth: the latent object qualities and per-user
// noise magnitudes the generator drew. Real datasets have no such thing.
struct GroundTruth {
  std::vector<double> intrinsic_quality;  // per object, within rating bounds
  std::vector<double> noise_level;        // per user, >= 0

  /// Statistical stand-in for each user's true mean square rating error:
  /// the squared noise level. Ranking by it equals ranking by noise_level.
  std::vector<double> error_proxy() const;
};

}  // namespace reprank
