#pragma once

#include <utility>

#include "prefmodel/learners.hpp"

namespace prefmodel {

inline constexpr double kNBVarianceFloor = 1e-9;

TrainedModel train_naive_bayes(const std::vector<Instance>& instances,
                               std::uint64_t registry_fingerprint = 0);

// (log score for +1, log score for -1): log prior plus summed log densities.
std::pair<double, double> nb_log_scores(const NBModel& model,
                                        std::span<const double> features);

// Normalized posterior (P(+1), P(-1)); sums to 1.
std::pair<double, double> nb_posterior(const NBModel& model,
                                       std::span<const double> features);

}  // namespace prefmodel
