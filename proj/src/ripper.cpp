#include "prefmodel/ripper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace prefmodel {

namespace {

// Candidate tests for one feature: either equality against each distinct
// value, or threshold tests against cuts placed strictly between data
// values so <= and >= never sit on a sample point.
struct FeatureCandidates {
  bool categorical = false;
  std::vector<double> values;  // distinct values (categorical) or cuts
};

FeatureCandidates make_candidates(const std::vector<Instance>& data,
                                  std::size_t f,
                                  const RipperOptions& options) {
  std::vector<double> sorted;
  sorted.reserve(data.size());
  for (const Instance& inst : data) sorted.push_back(inst.features[f]);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  FeatureCandidates out;
  if (distinct.size() <=
      static_cast<std::size_t>(options.max_equality_distinct)) {
    out.categorical = true;
    out.values = std::move(distinct);
    return out;
  }
  if (distinct.size() - 1 <=
      static_cast<std::size_t>(options.numeric_cut_count)) {
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
      out.values.push_back((distinct[i] + distinct[i + 1]) / 2.0);
    return out;
  }
  // Quantile positions over the full multiset, snapped to the boundary
  // between the quantile value and its lower distinct neighbor.
  const std::size_t n = sorted.size();
  for (int j = 1; j <= options.numeric_cut_count; ++j) {
    const std::size_t pos =
        n * static_cast<std::size_t>(j) /
        static_cast<std::size_t>(options.numeric_cut_count + 1);
    const double x = sorted[std::min(pos, n - 1)];
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), x);
    if (it == distinct.begin()) continue;
    out.values.push_back((*(it - 1) + *it) / 2.0);
  }
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()),
                   out.values.end());
  return out;
}

double log2_ratio(double p, double n) { return std::log2(p / (p + n)); }

struct GrowSearch {
  const std::vector<Instance>& data;
  const std::vector<FeatureCandidates>& candidates;
  const std::vector<std::vector<std::uint8_t>>& bins;

  // Best-gain condition over the active grow subset, or nullopt.
  std::optional<RuleCondition> best_condition(
      const std::vector<int>& active, double p0, double n0) const {
    double best_gain = 1e-12;
    std::optional<RuleCondition> best;
    const double base = log2_ratio(p0, n0);
    std::vector<long> hist_pos, hist_neg;
    for (std::size_t f = 0; f < candidates.size(); ++f) {
      const FeatureCandidates& cand = candidates[f];
      if (cand.values.empty()) continue;
      hist_pos.assign(cand.values.size() + 1, 0);
      hist_neg.assign(cand.values.size() + 1, 0);
      for (int i : active) {
        const std::uint8_t b = bins[f][static_cast<std::size_t>(i)];
        if (data[static_cast<std::size_t>(i)].label > 0)
          ++hist_pos[b];
        else
          ++hist_neg[b];
      }
      auto consider = [&](double p1, double n1, CondOp op, double value) {
        if (p1 <= 0.0) return;
        const double gain = p1 * (log2_ratio(p1, n1) - base);
        if (gain > best_gain) {
          best_gain = gain;
          best = RuleCondition{static_cast<int>(f), op, value};
        }
      };
      if (cand.categorical) {
        for (std::size_t v = 0; v < cand.values.size(); ++v)
          consider(static_cast<double>(hist_pos[v]),
                   static_cast<double>(hist_neg[v]), CondOp::eq,
                   cand.values[v]);
      } else {
        double below_pos = 0.0, below_neg = 0.0;
        double total_pos = 0.0, total_neg = 0.0;
        for (std::size_t b = 0; b < hist_pos.size(); ++b) {
          total_pos += static_cast<double>(hist_pos[b]);
          total_neg += static_cast<double>(hist_neg[b]);
        }
        for (std::size_t j = 0; j < cand.values.size(); ++j) {
          below_pos += static_cast<double>(hist_pos[j]);
          below_neg += static_cast<double>(hist_neg[j]);
          consider(below_pos, below_neg, CondOp::le, cand.values[j]);
          consider(total_pos - below_pos, total_neg - below_neg, CondOp::ge,
                   cand.values[j]);
        }
      }
    }
    return best;
  }
};

struct Coverage {
  long pos = 0;
  long neg = 0;
};

}  // namespace

TrainedModel train_ripper(const std::vector<Instance>& instances,
                          std::uint64_t seed,
                          std::uint64_t registry_fingerprint,
                          std::vector<std::string> feature_names,
                          const RipperOptions& options) {
  if (instances.empty()) throw DomainError("no training instances");
  const std::size_t dim = instances.front().features.size();
  bool has_pos = false, has_neg = false;
  for (const Instance& inst : instances) {
    if (inst.features.size() != dim)
      throw ContractError("inconsistent feature dimensions in training data");
    (inst.label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos) {
    // Nothing to explain: the empty list falls through to the default class.
    TrainedModel model;
    model.kind = LearnerKind::ripper;
    model.registry_fingerprint = registry_fingerprint;
    model.dim = dim;
    RuleSet empty;
    empty.feature_names = std::move(feature_names);
    model.params = std::move(empty);
    return model;
  }
  if (!has_neg)
    throw DomainError("training data has a degenerate class");

  std::vector<FeatureCandidates> candidates;
  candidates.reserve(dim);
  for (std::size_t f = 0; f < dim; ++f)
    candidates.push_back(make_candidates(instances, f, options));

  // bins[f][i]: categorical -> index of the instance's distinct value;
  // numeric -> number of cuts below the instance's value.
  std::vector<std::vector<std::uint8_t>> bins(dim);
  for (std::size_t f = 0; f < dim; ++f) {
    bins[f].resize(instances.size());
    const FeatureCandidates& cand = candidates[f];
    for (std::size_t i = 0; i < instances.size(); ++i) {
      // Categorical: index of the exact value. Numeric: number of cuts below
      // the value (cuts never coincide with data, so < and <= agree).
      const double x = instances[i].features[f];
      bins[f][i] = static_cast<std::uint8_t>(
          std::lower_bound(cand.values.begin(), cand.values.end(), x) -
          cand.values.begin());
    }
  }

  const GrowSearch search{instances, candidates, bins};

  std::vector<int> remaining_pos, remaining_neg;
  for (std::size_t i = 0; i < instances.size(); ++i)
    (instances[i].label > 0 ? remaining_pos : remaining_neg)
        .push_back(static_cast<int>(i));

  RuleSet ruleset;
  ruleset.feature_names = std::move(feature_names);
  std::uint64_t iteration = 0;

  while (!remaining_pos.empty() &&
         static_cast<int>(ruleset.rules.size()) < options.max_rules) {
    Rng rng(derive_seed(seed, iteration++));
    auto split_class = [&](std::vector<int> pool, std::vector<int>& grow,
                           std::vector<int>& prune) {
      rng.shuffle(pool);
      const std::size_t grow_count = (2 * pool.size() + 2) / 3;
      grow.insert(grow.end(), pool.begin(),
                  pool.begin() + static_cast<std::ptrdiff_t>(grow_count));
      prune.insert(prune.end(),
                   pool.begin() + static_cast<std::ptrdiff_t>(grow_count),
                   pool.end());
    };
    std::vector<int> grow_set, prune_set;
    split_class(remaining_pos, grow_set, prune_set);
    split_class(remaining_neg, grow_set, prune_set);

    // Grow.
    Rule rule;
    std::vector<int> active = grow_set;
    Coverage cov = {0, 0};
    for (int i : active)
      (instances[static_cast<std::size_t>(i)].label > 0 ? cov.pos : cov.neg)++;
    while (cov.neg > 0 && cov.pos > 0 &&
           static_cast<int>(rule.conditions.size()) < options.max_conditions) {
      const auto cond = search.best_condition(
          active, static_cast<double>(cov.pos), static_cast<double>(cov.neg));
      if (!cond) break;
      rule.conditions.push_back(*cond);
      std::vector<int> next;
      next.reserve(active.size());
      Coverage next_cov;
      for (int i : active) {
        const Instance& inst = instances[static_cast<std::size_t>(i)];
        if (!condition_matches(*cond, inst.features)) continue;
        next.push_back(i);
        (inst.label > 0 ? next_cov.pos : next_cov.neg)++;
      }
      active = std::move(next);
      cov = next_cov;
    }
    if (rule.conditions.empty()) break;  // nothing informative to grow on

    // Prune: keep the prefix maximizing (p-n)/(p+n) on the prune set,
    // preferring shorter prefixes on ties.
    const std::size_t len = rule.conditions.size();
    std::vector<long> prefix_pos(len + 1, 0), prefix_neg(len + 1, 0);
    for (int i : prune_set) {
      const Instance& inst = instances[static_cast<std::size_t>(i)];
      std::size_t satisfied = 0;
      while (satisfied < len &&
             condition_matches(rule.conditions[satisfied], inst.features))
        ++satisfied;
      if (inst.label > 0)
        ++prefix_pos[satisfied];
      else
        ++prefix_neg[satisfied];
    }
    // coverage of prefix length l = count of instances with satisfied >= l
    std::vector<long> cum_pos(len + 2, 0), cum_neg(len + 2, 0);
    for (std::size_t l = len + 1; l-- > 0;) {
      cum_pos[l] = prefix_pos[l] + cum_pos[l + 1];
      cum_neg[l] = prefix_neg[l] + cum_neg[l + 1];
    }
    std::size_t best_len = len;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l <= len; ++l) {
      const long p = cum_pos[l], n = cum_neg[l];
      const double value =
          (p + n) > 0
              ? static_cast<double>(p - n) / static_cast<double>(p + n)
              : -std::numeric_limits<double>::infinity();
      if (value > best_value || (value == best_value && l < best_len)) {
        best_value = value;
        best_len = l;
      }
    }
    rule.conditions.resize(best_len);
    const long prune_p = cum_pos[best_len], prune_n = cum_neg[best_len];
    if (prune_p + prune_n == 0) break;  // rule says nothing about held-out data
    if (prune_n >= prune_p) break;      // error rate >= 1/2: stop adding rules

    // Accept and retire what it covers.
    auto remove_covered = [&](std::vector<int>& pool) {
      std::erase_if(pool, [&](int i) {
        return rule_matches(rule,
                            instances[static_cast<std::size_t>(i)].features);
      });
    };
    const std::size_t before = remaining_pos.size() + remaining_neg.size();
    remove_covered(remaining_pos);
    remove_covered(remaining_neg);
    if (remaining_pos.size() + remaining_neg.size() == before) {
      // Covers nothing that is left; adding it again would loop forever.
      break;
    }
    ruleset.rules.push_back(std::move(rule));
  }

  // Covered/errors in first-match evaluation order over the training set.
  for (const Instance& inst : instances) {
    for (Rule& rule : ruleset.rules) {
      if (!rule_matches(rule, inst.features)) continue;
      ++rule.covered;
      if (inst.label < 0) ++rule.errors;
      break;
    }
  }

  TrainedModel model;
  model.kind = LearnerKind::ripper;
  model.registry_fingerprint = registry_fingerprint;
  model.dim = dim;
  model.params = std::move(ruleset);
  return model;
}

}  // namespace prefmodel
