#pragma once

#include "prefmodel/learners.hpp"

namespace prefmodel {

inline constexpr double kSmoTolerance = 1e-3;
inline constexpr int kSmoMaxPasses = 100;

// RBF-kernel SVM trained by sequential pairwise optimization of the dual.
// Features are rescaled to [-1,1] with training min/max (stored in the
// model and re-applied at predict time). Throws ConvergenceError with the
// residual if the KKT conditions are still violated after max_passes sweeps.
TrainedModel train_svm_smo(const std::vector<Instance>& instances, double cost,
                           double gamma, std::uint64_t registry_fingerprint = 0,
                           int max_passes = kSmoMaxPasses,
                           double tolerance = kSmoTolerance);

// Decision value sum(alpha_i y_i K(sv_i, x)) + bias on an unscaled input.
double svm_decision(const SVMModel& model, std::span<const double> features);

}  // namespace prefmodel
