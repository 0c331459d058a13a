#include "prefmodel/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prefmodel {

namespace {

constexpr std::size_t kFullKernelLimit = 2048;
constexpr double kAlphaEps = 1e-12;

struct Scaler {
  std::vector<double> lo, hi;

  void fit(const std::vector<Instance>& data, std::size_t dim) {
    lo.assign(dim, std::numeric_limits<double>::infinity());
    hi.assign(dim, -std::numeric_limits<double>::infinity());
    for (const Instance& inst : data)
      for (std::size_t j = 0; j < dim; ++j) {
        lo[j] = std::min(lo[j], inst.features[j]);
        hi[j] = std::max(hi[j], inst.features[j]);
      }
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      out[j] = hi[j] > lo[j] ? -1.0 + 2.0 * (x[j] - lo[j]) / (hi[j] - lo[j])
                             : 0.0;
    return out;
  }
};

double rbf(const std::vector<double>& a, const std::vector<double>& b,
           double gamma) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

// Dual solver state over the scaled training set.
class Smo {
 public:
  Smo(std::vector<std::vector<double>> x, std::vector<int> y, double cost,
      double gamma, double tol)
      : x_(std::move(x)),
        y_(std::move(y)),
        n_(x_.size()),
        cost_(cost),
        gamma_(gamma),
        tol_(tol),
        alpha_(n_, 0.0) {
    if (n_ <= kFullKernelLimit) {
      kernel_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        kernel_[i].resize(n_);
        for (std::size_t j = 0; j <= i; ++j)
          kernel_[i][j] = rbf(x_[i], x_[j], gamma_);
      }
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          kernel_[i][j] = kernel_[j][i];
      errors_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i)
        errors_[i] = -static_cast<double>(y_[i]);
    }
  }

  void solve(int max_passes) {
    int num_changed = 0;
    bool examine_all = true;
    int sweeps = 0;
    while (num_changed > 0 || examine_all) {
      if (++sweeps > max_passes)
        throw ConvergenceError(
            "dual optimizer still violating KKT conditions after " +
                std::to_string(max_passes) + " sweeps",
            max_kkt_violation());
      num_changed = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!examine_all && !is_unbound(alpha_[i])) continue;
        num_changed += examine(i);
      }
      if (examine_all)
        examine_all = false;
      else if (num_changed == 0)
        examine_all = true;
    }
  }

  double decision(std::size_t i) const {
    double f = bias_;
    for (std::size_t j = 0; j < n_; ++j)
      if (alpha_[j] > 0.0)
        f += alpha_[j] * y_[j] * kernel(j, i);
    return f;
  }

  double max_kkt_violation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double margin = y_[i] * decision(i);
      double viol = 0.0;
      if (alpha_[i] <= kAlphaEps)
        viol = std::max(0.0, 1.0 - margin);
      else if (alpha_[i] >= cost_ - kAlphaEps)
        viol = std::max(0.0, margin - 1.0);
      else
        viol = std::abs(margin - 1.0);
      worst = std::max(worst, viol);
    }
    return worst;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double bias() const { return bias_; }
  const std::vector<std::vector<double>>& points() const { return x_; }
  const std::vector<int>& labels() const { return y_; }

 private:
  bool is_unbound(double a) const {
    return a > kAlphaEps && a < cost_ - kAlphaEps;
  }

  double kernel(std::size_t i, std::size_t j) const {
    if (!kernel_.empty()) return kernel_[i][j];
    return rbf(x_[i], x_[j], gamma_);
  }

  double error(std::size_t i) const {
    if (!errors_.empty()) return errors_[i];
    return decision(i) - y_[i];
  }

  int examine(std::size_t i2) {
    const double e2 = error(i2);
    const double r2 = e2 * y_[i2];
    const bool violates = (r2 < -tol_ && alpha_[i2] < cost_ - kAlphaEps) ||
                          (r2 > tol_ && alpha_[i2] > kAlphaEps);
    if (!violates) return 0;

    // Second-choice heuristic: largest |E1 - E2| over unbound points,
    // smallest index on ties, then ascending scans. No randomness.
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_unbound(alpha_[i])) continue;
      const double gap = std::abs(error(i) - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && take_step(best, i2)) return 1;
    for (std::size_t i = 0; i < n_; ++i)
      if (is_unbound(alpha_[i]) && i != best && take_step(i, i2)) return 1;
    for (std::size_t i = 0; i < n_; ++i)
      if (!is_unbound(alpha_[i]) && take_step(i, i2)) return 1;
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1], a2 = alpha_[i2];
    const int y1 = y_[i1], y2 = y_[i2];
    const double e1 = error(i1), e2 = error(i2);
    const double s = y1 * y2;
    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(cost_, cost_ + a2 - a1);
    } else {
      lo = std::max(0.0, a2 + a1 - cost_);
      hi = std::min(cost_, a2 + a1);
    }
    if (lo >= hi) return false;

    const double k11 = kernel(i1, i1), k12 = kernel(i1, i2),
                 k22 = kernel(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 0.0) {
      a2_new = a2 + y2 * (e1 - e2) / eta;
      a2_new = std::clamp(a2_new, lo, hi);
    } else {
      // Flat direction: pick the better endpoint of the dual objective.
      const double f1 = y1 * (e1 + bias_) - a1 * k11 - s * a2 * k12;
      const double f2 = y2 * (e2 + bias_) - s * a1 * k12 - a2 * k22;
      const double l1 = a1 + s * (a2 - lo);
      const double h1 = a1 + s * (a2 - hi);
      const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                            0.5 * lo * lo * k22 + s * lo * l1 * k12;
      const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                            0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (obj_lo < obj_hi - 1e-12)
        a2_new = lo;
      else if (obj_hi < obj_lo - 1e-12)
        a2_new = hi;
      else
        return false;
    }
    if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
    const double a1_new = a1 + s * (a2 - a2_new);

    const double b1 = bias_ - e1 - y1 * (a1_new - a1) * k11 -
                      y2 * (a2_new - a2) * k12;
    const double b2 = bias_ - e2 - y1 * (a1_new - a1) * k12 -
                      y2 * (a2_new - a2) * k22;
    double b_new;
    if (a1_new > kAlphaEps && a1_new < cost_ - kAlphaEps)
      b_new = b1;
    else if (a2_new > kAlphaEps && a2_new < cost_ - kAlphaEps)
      b_new = b2;
    else
      b_new = (b1 + b2) / 2.0;

    if (!errors_.empty()) {
      const double d1 = y1 * (a1_new - a1), d2 = y2 * (a2_new - a2),
                   db = b_new - bias_;
      for (std::size_t k = 0; k < n_; ++k)
        errors_[k] += d1 * kernel_[i1][k] + d2 * kernel_[i2][k] + db;
    }
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    bias_ = b_new;
    return true;
  }

  std::vector<std::vector<double>> x_;
  std::vector<int> y_;
  std::size_t n_;
  double cost_, gamma_, tol_;
  std::vector<double> alpha_;
  double bias_ = 0.0;
  std::vector<std::vector<double>> kernel_;
  std::vector<double> errors_;
};

}  // namespace

TrainedModel train_svm_smo(const std::vector<Instance>& instances, double cost,
                           double gamma, std::uint64_t registry_fingerprint,
                           int max_passes, double tolerance) {
  if (cost <= 0.0) throw DomainError("cost must be positive");
  if (gamma <= 0.0) throw DomainError("gamma must be positive");
  if (instances.empty()) throw DomainError("no training instances");
  const std::size_t dim = instances.front().features.size();
  bool has_pos = false, has_neg = false;
  for (const Instance& inst : instances) {
    if (inst.features.size() != dim)
      throw ContractError("inconsistent feature dimensions in training data");
    (inst.label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw DomainError("training data has a degenerate class");

  Scaler scaler;
  scaler.fit(instances, dim);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  x.reserve(instances.size());
  y.reserve(instances.size());
  for (const Instance& inst : instances) {
    x.push_back(scaler.apply(inst.features));
    y.push_back(inst.label);
  }

  Smo smo(std::move(x), std::move(y), cost, gamma, tolerance);
  smo.solve(max_passes);

  SVMModel m;
  m.cost = cost;
  m.gamma = gamma;
  m.bias = smo.bias();
  m.scale_min = scaler.lo;
  m.scale_max = scaler.hi;
  m.max_kkt_violation = smo.max_kkt_violation();
  for (std::size_t i = 0; i < smo.alpha().size(); ++i) {
    if (smo.alpha()[i] <= kAlphaEps) continue;
    m.support_vectors.push_back(smo.points()[i]);
    m.alpha.push_back(smo.alpha()[i]);
    m.sv_labels.push_back(smo.labels()[i]);
  }

  TrainedModel model;
  model.kind = LearnerKind::svm;
  model.registry_fingerprint = registry_fingerprint;
  model.dim = dim;
  model.params = std::move(m);
  return model;
}

double svm_decision(const SVMModel& model, std::span<const double> features) {
  std::vector<double> scaled(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    const double lo = model.scale_min[j], hi = model.scale_max[j];
    scaled[j] = hi > lo ? -1.0 + 2.0 * (features[j] - lo) / (hi - lo) : 0.0;
  }
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
    f += model.alpha[i] * model.sv_labels[i] *
         rbf(model.support_vectors[i], scaled, model.gamma);
  return f;
}

}  // namespace prefmodel
