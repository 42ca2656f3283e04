#include "core/engine.hpp"

#include <cmath>
#include <limits>

namespace reprank {

namespace {
constexpr double kUnrated = std::numeric_limits<double>::quiet_NaN();
}

void EngineConfig::validate() const {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must be >= 0");
  }
  if (alpha > kMaxAlpha) {
    throw Error(ErrorCode::invalid_argument,
                "alpha must be <= " + std::to_string(kMaxAlpha));
  }
  if (!(convergence_threshold > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "convergence_threshold must be > 0");
  }
  if (!(deviation_floor > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "deviation_floor must be > 0");
  }
  if (!std::isfinite(std::pow(deviation_floor, -alpha))) {
    throw Error(ErrorCode::invalid_argument,
                "deviation_floor too small for alpha: floor^(-alpha) overflows");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::invalid_argument, "max_iterations must be >= 1");
  }
}

bool is_unrated(double quality) { return std::isnan(quality); }

std::vector<double> update_qualities(const RatingTable& table,
                                     std::span<const double> deviations,
                                     double alpha) {
  if (deviations.size() != table.num_users()) {
    throw Error(ErrorCode::invalid_argument,
                "deviation vector length " + std::to_string(deviations.size()) +
                    " does not match user count " +
                    std::to_string(table.num_users()));
  }
  if (!(alpha >= 0.0 && alpha <= EngineConfig::kMaxAlpha)) {
    throw Error(ErrorCode::invalid_argument,
                "alpha must be in [0, " +
                    std::to_string(EngineConfig::kMaxAlpha) + "]");
  }

  std::vector<double> weight(deviations.size());
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    const double d = deviations[i];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::invalid_argument,
                  "deviation of user " + std::to_string(i) +
                      " must be positive and finite");
    }
    weight[i] = std::pow(d, -alpha);
  }

  std::vector<double> quality(table.num_objects(), kUnrated);
  for (std::uint32_t k = 0; k < table.num_objects(); ++k) {
    const auto votes = table.ratings_of_object(k);
    if (votes.empty()) continue;

    // Only weight ratios matter, so scale by the largest voter weight; the
    // summands then stay in [0, 1] even when raw weights reach floor^(-alpha).
    double wmax = 0.0;
    for (const auto& v : votes) wmax = std::max(wmax, weight[v.id]);

    double num = 0.0;
    double den = 0.0;
    for (const auto& v : votes) {
      const double w = weight[v.id] / wmax;
      num += v.value * w;
      den += w;
    }
    quality[k] = num / den;
  }
  return quality;
}

std::vector<double> update_deviations(const RatingTable& table,
                                      std::span<const double> qualities,
                                      double deviation_floor) {
  if (qualities.size() != table.num_objects()) {
    throw Error(ErrorCode::invalid_argument,
                "quality vector length " + std::to_string(qualities.size()) +
                    " does not match object count " +
                    std::to_string(table.num_objects()));
  }
  if (!(deviation_floor > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "deviation_floor must be > 0");
  }

  std::vector<double> deviation(table.num_users());
  for (std::uint32_t i = 0; i < table.num_users(); ++i) {
    const auto rated = table.ratings_by_user(i);
    if (rated.empty()) {
      deviation[i] = 1.0;  // neutral: matches the iteration's starting value
      continue;
    }
    double sum = 0.0;
    for (const auto& r : rated) {
      const double q = qualities[r.id];
      if (is_unrated(q)) {
        throw Error(ErrorCode::invalid_argument,
                    "quality undefined for object " + std::to_string(r.id) +
                        " rated by user " + std::to_string(i));
      }
      const double diff = r.value - q;
      sum += diff * diff;
    }
    deviation[i] =
        std::max(deviation_floor, sum / static_cast<double>(rated.size()));
  }
  return deviation;
}

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) continue;  // unrated objects
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

ReputationState run_to_fixed_point(const RatingTable& table,
                                   const EngineConfig& config) {
  config.validate();
  if (table.num_ratings() == 0) {
    throw Error(ErrorCode::invalid_argument,
                "cannot run on a table with no ratings");
  }

  ReputationState state;
  state.deviation.assign(table.num_users(), 1.0);
  // The step-0 quality baseline: with all deviations at 1 every weight is 1,
  // so this is the plain per-object mean for any alpha. Step 1 reproduces it
  // bit for bit, which makes the first quality delta exactly zero.
  state.quality = update_qualities(table, state.deviation, config.alpha);

  for (std::uint32_t n = 1; n <= config.max_iterations; ++n) {
    std::vector<double> quality =
        n == 1 ? state.quality
               : update_qualities(table, state.deviation, config.alpha);
    std::vector<double> deviation =
        update_deviations(table, quality, config.deviation_floor);

    state.quality_delta = max_abs_diff(quality, state.quality);
    state.deviation_delta = max_abs_diff(deviation, state.deviation);
    state.quality = std::move(quality);
    state.deviation = std::move(deviation);
    state.iterations = n;

    if (state.quality_delta < config.convergence_threshold &&
        state.deviation_delta < config.convergence_threshold) {
      state.converged = true;
      break;
    }
  }
  return state;
}

}  // namespace reprank
