#include "prefmodel/adaboost.hpp"

#include <algorithm>
#include <cmath>

namespace prefmodel {

namespace {

constexpr double kEpsilonClamp = 1e-12;

struct BestStump {
  bool found = false;
  Stump stump;
  double error = 1.0;
};

// Weighted-error minimizing stump via one pass over each feature's presorted
// order, accumulating class weight prefixes at every distinct-value split.
BestStump best_stump(const std::vector<Instance>& data,
                     const std::vector<std::vector<int>>& order,
                     const std::vector<double>& weights) {
  BestStump best;
  const std::size_t n = data.size();
  double w_pos_total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (data[i].label > 0) w_pos_total += weights[i];
  const double w_neg_total = 1.0 - w_pos_total;
  for (std::size_t f = 0; f < order.size(); ++f) {
    const std::vector<int>& idx = order[f];
    double w_pos_below = 0.0, w_neg_below = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const int i = idx[j];
      if (data[static_cast<std::size_t>(i)].label > 0)
        w_pos_below += weights[static_cast<std::size_t>(i)];
      else
        w_neg_below += weights[static_cast<std::size_t>(i)];
      const double lo = data[static_cast<std::size_t>(idx[j])].features[f];
      const double hi = data[static_cast<std::size_t>(idx[j + 1])].features[f];
      if (lo == hi) continue;
      // Predict +1 above the threshold.
      const double err_pos = w_pos_below + (w_neg_total - w_neg_below);
      const double err_neg = 1.0 - err_pos;
      if (err_pos < best.error) {
        best = {true, {static_cast<int>(f), (lo + hi) / 2.0, +1}, err_pos};
      }
      if (err_neg < best.error) {
        best = {true, {static_cast<int>(f), (lo + hi) / 2.0, -1}, err_neg};
      }
    }
  }
  return best;
}

}  // namespace

TrainedModel train_adaboost(const std::vector<Instance>& instances, int rounds,
                            std::uint64_t registry_fingerprint,
                            AdaBoostDiagnostics* diagnostics) {
  if (rounds < 1) throw DomainError("round count must be >= 1");
  if (instances.empty()) throw DomainError("no training instances");
  const std::size_t n = instances.size();
  const std::size_t dim = instances.front().features.size();
  bool has_pos = false, has_neg = false;
  for (const Instance& inst : instances) {
    if (inst.features.size() != dim)
      throw ContractError("inconsistent feature dimensions in training data");
    (inst.label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw DomainError("training data has a degenerate class");

  std::vector<std::vector<int>> order(dim, std::vector<int>(n));
  for (std::size_t f = 0; f < dim; ++f) {
    std::vector<int>& idx = order[f];
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return instances[static_cast<std::size_t>(a)].features[f] <
             instances[static_cast<std::size_t>(b)].features[f];
    });
  }

  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  EnsembleModel m;
  for (int t = 0; t < rounds; ++t) {
    const BestStump best = best_stump(instances, order, weights);
    if (!best.found || best.error >= 0.5) {
      if (t == 0)
        throw WeakLearnerError(
            "no stump beats chance on round 1 (best weighted error " +
            format_double(best.found ? best.error : 1.0) + ")");
      break;
    }
    const double eps = std::max(best.error, kEpsilonClamp);
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    // Prefix-sum cancellation can leave a perfect stump's error at -1e-17;
    // report it as exactly zero.
    m.rounds.push_back({best.stump, alpha, std::max(best.error, 0.0)});

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Instance& inst = instances[i];
      const int h =
          inst.features[static_cast<std::size_t>(best.stump.feature)] >
                  best.stump.threshold
              ? best.stump.polarity
              : -best.stump.polarity;
      weights[i] *= std::exp(-alpha * inst.label * h);
      sum += weights[i];
    }
    for (double& w : weights) w /= sum;
    if (diagnostics) {
      double check = 0.0;
      for (double w : weights) check += w;
      diagnostics->weight_sums.push_back(check);
    }
    if (best.error <= kEpsilonClamp) break;  // perfect stump
  }

  TrainedModel model;
  model.kind = LearnerKind::adaboost;
  model.registry_fingerprint = registry_fingerprint;
  model.dim = dim;
  model.params = std::move(m);
  return model;
}

}  // namespace prefmodel
