#pragma once

#include "prefmodel/learners.hpp"

namespace prefmodel {

struct AdaBoostDiagnostics {
  // Instance-weight sum after each round's renormalization (should be 1).
  std::vector<double> weight_sums;
};

// Adaptive boosting of depth-1 decision stumps. Stops early on a perfect
// stump or when no stump beats chance; the latter on round one is an error.
TrainedModel train_adaboost(const std::vector<Instance>& instances,
                            int rounds = 30,
                            std::uint64_t registry_fingerprint = 0,
                            AdaBoostDiagnostics* diagnostics = nullptr);

}  // namespace prefmodel
