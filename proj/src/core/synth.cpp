#include "core/synth.hpp"

#include <algorithm>
#include <cmath>

#include "core/rng.hpp"

namespace reprank {

void GeneratorConfig::validate() const {
  if (num_users < 1 || num_objects < 1) {
    throw Error(ErrorCode::invalid_argument,
                "generator needs at least one user and one object");
  }
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "density must be in (0, 1]");
  }
  if (!(bounds.lo < bounds.hi)) {
    throw Error(ErrorCode::invalid_argument,
                "rating bounds must satisfy lo < hi");
  }
  if (quality_dist == QualityDist::power_law) {
    if (!(power_law_min > 0.0 && power_law_min < bounds.hi)) {
      throw Error(ErrorCode::invalid_argument,
                  "power_law_min must lie in (0, hi)");
    }
  }
}

namespace {

// Inverse CDF of p(q) ~ q^(-1.5) truncated to [qmin, qmax]:
//   F(q) = (qmin^-0.5 - q^-0.5) / (qmin^-0.5 - qmax^-0.5)
double power_law_quantile(double u, double qmin, double qmax) {
  const double a = 1.0 / std::sqrt(qmin);
  const double b = 1.0 / std::sqrt(qmax);
  const double inv_sqrt = a - u * (a - b);
  return 1.0 / (inv_sqrt * inv_sqrt);
}

}  // namespace

GroundTruth draw_ground_truth(const GeneratorConfig& config) {
  config.validate();

  GroundTruth truth;
  truth.intrinsic_quality.resize(config.num_objects);
  truth.noise_level.resize(config.num_users);

  SplitMix64 quality_rng(derive_seed(config.seed, {kStreamQuality}));
  for (double& q : truth.intrinsic_quality) {
    switch (config.quality_dist) {
      case QualityDist::uniform:
        q = quality_rng.next_in(config.bounds.lo, config.bounds.hi);
        break;
      case QualityDist::power_law:
        q = power_law_quantile(quality_rng.next_unit(), config.power_law_min,
                               config.bounds.hi);
        break;
    }
  }

  SplitMix64 noise_rng(derive_seed(config.seed, {kStreamNoise}));
  const double span = config.bounds.hi - config.bounds.lo;
  for (double& z : truth.noise_level) {
    z = noise_rng.next_in(0.0, span);
  }
  return truth;
}

RatingTable generate_ratings(const GroundTruth& truth,
                             const GeneratorConfig& config) {
  config.validate();
  if (truth.intrinsic_quality.size() != config.num_objects ||
      truth.noise_level.size() != config.num_users) {
    throw Error(ErrorCode::invalid_argument,
                "ground truth dimensions do not match the generator config");
  }

  std::vector<RatingTriple> triples;
  const double expected =
      config.density * config.num_users * config.num_objects;
  triples.reserve(static_cast<std::size_t>(expected * 1.05) + 64);

  for (std::uint32_t i = 0; i < config.num_users; ++i) {
    SplitMix64 rng(derive_seed(config.seed, {kStreamRatings, i}));
    const double zeta = truth.noise_level[i];
    for (std::uint32_t k = 0; k < config.num_objects; ++k) {
      if (rng.next_unit() >= config.density) continue;
      const double swing = rng.next_in(-1.0, 1.0);
      const double raw = truth.intrinsic_quality[k] + swing * zeta;
      triples.push_back(
          {i, k, std::clamp(raw, config.bounds.lo, config.bounds.hi)});
    }
  }

  return RatingTable::build(triples, config.num_users, config.num_objects,
                            config.bounds);
}

}  // namespace reprank
