#include "prefmodel/naive_bayes.hpp"

#include <cmath>
#include <numbers>

namespace prefmodel {

namespace {

void accumulate(const std::vector<const Instance*>& members, std::size_t dim,
                std::vector<double>& mean, std::vector<double>& var) {
  mean.assign(dim, 0.0);
  var.assign(dim, 0.0);
  const double n = static_cast<double>(members.size());
  for (const Instance* inst : members)
    for (std::size_t j = 0; j < dim; ++j) mean[j] += inst->features[j];
  for (std::size_t j = 0; j < dim; ++j) mean[j] /= n;
  for (const Instance* inst : members)
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = inst->features[j] - mean[j];
      var[j] += d * d;
    }
  for (std::size_t j = 0; j < dim; ++j)
    var[j] = std::max(var[j] / n, kNBVarianceFloor);
}

}  // namespace

TrainedModel train_naive_bayes(const std::vector<Instance>& instances,
                               std::uint64_t registry_fingerprint) {
  if (instances.empty()) throw DomainError("no training instances");
  const std::size_t dim = instances.front().features.size();
  std::vector<const Instance*> pos, neg;
  for (const Instance& inst : instances) {
    if (inst.features.size() != dim)
      throw ContractError("inconsistent feature dimensions in training data");
    (inst.label > 0 ? pos : neg).push_back(&inst);
  }
  if (pos.empty() || neg.empty())
    throw DomainError("training data has a degenerate class: " +
                      std::to_string(pos.size()) + " positive, " +
                      std::to_string(neg.size()) + " negative");

  NBModel m;
  const double n = static_cast<double>(instances.size());
  m.log_prior_pos = std::log(static_cast<double>(pos.size()) / n);
  m.log_prior_neg = std::log(static_cast<double>(neg.size()) / n);
  accumulate(pos, dim, m.mean_pos, m.var_pos);
  accumulate(neg, dim, m.mean_neg, m.var_neg);

  TrainedModel model;
  model.kind = LearnerKind::naive_bayes;
  model.registry_fingerprint = registry_fingerprint;
  model.dim = dim;
  model.params = std::move(m);
  return model;
}

std::pair<double, double> nb_log_scores(const NBModel& model,
                                        std::span<const double> features) {
  constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5*ln(2*pi)
  double lp = model.log_prior_pos;
  double ln = model.log_prior_neg;
  for (std::size_t j = 0; j < features.size(); ++j) {
    const double x = features[j];
    const double dp = x - model.mean_pos[j];
    const double dn = x - model.mean_neg[j];
    lp += -kHalfLog2Pi - 0.5 * std::log(model.var_pos[j]) -
          dp * dp / (2.0 * model.var_pos[j]);
    ln += -kHalfLog2Pi - 0.5 * std::log(model.var_neg[j]) -
          dn * dn / (2.0 * model.var_neg[j]);
  }
  return {lp, ln};
}

std::pair<double, double> nb_posterior(const NBModel& model,
                                       std::span<const double> features) {
  const auto [lp, ln] = nb_log_scores(model, features);
  const double m = std::max(lp, ln);
  const double ep = std::exp(lp - m);
  const double en = std::exp(ln - m);
  return {ep / (ep + en), en / (ep + en)};
}

}  // namespace prefmodel
