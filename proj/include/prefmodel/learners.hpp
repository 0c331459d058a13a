#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prefmodel/featurize.hpp"

namespace prefmodel {

enum class LearnerKind { naive_bayes, adaboost, ripper, svm };

const char* to_string(LearnerKind kind);
LearnerKind learner_from_string(std::string_view name);

// Per-class Gaussians over each feature plus class priors, in log space.
struct NBModel {
  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  std::vector<double> mean_pos, var_pos;
  std::vector<double> mean_neg, var_neg;
};

// Depth-1 threshold test: predicts polarity when x[feature] > threshold,
// -polarity otherwise.
struct Stump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;
};

struct BoostRound {
  Stump stump;
  double alpha = 0.0;    // vote weight
  double epsilon = 0.0;  // weighted training error of this stump
};

struct EnsembleModel {
  std::vector<BoostRound> rounds;
};

enum class CondOp { le, ge, eq };

struct RuleCondition {
  int feature = 0;
  CondOp op = CondOp::le;
  double value = 0.0;
};

// Conjunction of conditions concluding the positive class; covered/errors
// count instances reaching this rule in list order on the training set.
struct Rule {
  std::vector<RuleCondition> conditions;
  long covered = 0;
  long errors = 0;
};

// Ordered rule list; first match fires, unmatched instances get the default
// negative class.
struct RuleSet {
  std::vector<Rule> rules;
  std::vector<std::string> feature_names;  // for rendering; may be empty
};

// RBF-kernel support vector machine in the scaled feature space. Inputs are
// mapped per feature to [-1,1] with the stored training min/max.
struct SVMModel {
  double cost = 1.0;
  double gamma = 1.0;
  double bias = 0.0;
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> alpha;  // dual coefficients, in (0, cost]
  std::vector<int> sv_labels;
  std::vector<double> scale_min, scale_max;
  double max_kkt_violation = 0.0;
};

struct TrainedModel {
  LearnerKind kind = LearnerKind::naive_bayes;
  std::uint64_t registry_fingerprint = 0;  // 0 = not bound to a registry
  std::size_t dim = 0;
  std::variant<NBModel, EnsembleModel, RuleSet, SVMModel> params;
};

// Deterministic; score ties resolve to -1.
int predict(const TrainedModel& model, std::span<const double> features);
int predict(const TrainedModel& model, std::span<const double> features,
            std::uint64_t registry_fingerprint);

// Versioned JSON envelope.
std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::string& text);

bool condition_matches(const RuleCondition& cond,
                       std::span<const double> features);
bool rule_matches(const Rule& rule, std::span<const double> features);

// `feature op value ∧ ... → <target> (covered/errors)` per rule, one line
// each, then the default line.
std::string render_ruleset(const RuleSet& rules,
                           const std::string& target_text = "+1");

}  // namespace prefmodel
