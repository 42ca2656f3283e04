#include "core/ground_truth.hpp"

namespace reprank {

std::vector<double> GroundTruth::error_proxy() const {
  std::vector<double> proxy(noise_level.size());
  for (std::size_t i = 0; i < noise_level.size(); ++i) {
    proxy[i] = noise_level[i] * noise_level[i];
  }
  return proxy;
}

}  // namespace reprank
