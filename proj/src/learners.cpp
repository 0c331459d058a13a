#include "prefmodel/learners.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "prefmodel/naive_bayes.hpp"
#include "prefmodel/svm.hpp"

namespace prefmodel {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

const char* kKindNames[] = {"naive_bayes", "adaboost", "ripper", "svm"};

int predict_nb(const NBModel& m, std::span<const double> x) {
  const auto [lp, ln] = nb_log_scores(m, x);
  return lp > ln ? +1 : -1;
}

int predict_boost(const EnsembleModel& m, std::span<const double> x) {
  double score = 0.0;
  for (const BoostRound& round : m.rounds) {
    const Stump& s = round.stump;
    const int h = x[static_cast<std::size_t>(s.feature)] > s.threshold
                      ? s.polarity
                      : -s.polarity;
    score += round.alpha * h;
  }
  return score > 0.0 ? +1 : -1;
}

int predict_rules(const RuleSet& m, std::span<const double> x) {
  for (const Rule& rule : m.rules)
    if (rule_matches(rule, x)) return +1;
  return -1;
}

json to_json(const NBModel& m) {
  return json{{"log_prior_pos", m.log_prior_pos},
              {"log_prior_neg", m.log_prior_neg},
              {"mean_pos", m.mean_pos},
              {"var_pos", m.var_pos},
              {"mean_neg", m.mean_neg},
              {"var_neg", m.var_neg}};
}

NBModel nb_from_json(const json& j) {
  NBModel m;
  m.log_prior_pos = j.at("log_prior_pos").get<double>();
  m.log_prior_neg = j.at("log_prior_neg").get<double>();
  m.mean_pos = j.at("mean_pos").get<std::vector<double>>();
  m.var_pos = j.at("var_pos").get<std::vector<double>>();
  m.mean_neg = j.at("mean_neg").get<std::vector<double>>();
  m.var_neg = j.at("var_neg").get<std::vector<double>>();
  return m;
}

json to_json(const EnsembleModel& m) {
  json rounds = json::array();
  for (const BoostRound& r : m.rounds)
    rounds.push_back(json{{"feature", r.stump.feature},
                          {"threshold", r.stump.threshold},
                          {"polarity", r.stump.polarity},
                          {"alpha", r.alpha},
                          {"epsilon", r.epsilon}});
  return json{{"rounds", rounds}};
}

EnsembleModel ensemble_from_json(const json& j) {
  EnsembleModel m;
  for (const json& r : j.at("rounds")) {
    BoostRound round;
    round.stump.feature = r.at("feature").get<int>();
    round.stump.threshold = r.at("threshold").get<double>();
    round.stump.polarity = r.at("polarity").get<int>();
    round.alpha = r.at("alpha").get<double>();
    round.epsilon = r.at("epsilon").get<double>();
    m.rounds.push_back(round);
  }
  return m;
}

const char* op_name(CondOp op) {
  switch (op) {
    case CondOp::le: return "<=";
    case CondOp::ge: return ">=";
    case CondOp::eq: return "=";
  }
  return "?";
}

CondOp op_from_name(const std::string& name) {
  if (name == "<=") return CondOp::le;
  if (name == ">=") return CondOp::ge;
  if (name == "=") return CondOp::eq;
  throw SchemaError("unknown rule operator '" + name + "'");
}

json to_json(const RuleSet& m) {
  json rules = json::array();
  for (const Rule& rule : m.rules) {
    json conds = json::array();
    for (const RuleCondition& c : rule.conditions)
      conds.push_back(json{{"feature", c.feature},
                           {"op", op_name(c.op)},
                           {"value", c.value}});
    rules.push_back(json{{"conditions", conds},
                         {"covered", rule.covered},
                         {"errors", rule.errors}});
  }
  return json{{"rules", rules}, {"feature_names", m.feature_names}};
}

RuleSet rules_from_json(const json& j) {
  RuleSet m;
  for (const json& r : j.at("rules")) {
    Rule rule;
    for (const json& c : r.at("conditions")) {
      RuleCondition cond;
      cond.feature = c.at("feature").get<int>();
      cond.op = op_from_name(c.at("op").get<std::string>());
      cond.value = c.at("value").get<double>();
      rule.conditions.push_back(cond);
    }
    rule.covered = r.at("covered").get<long>();
    rule.errors = r.at("errors").get<long>();
    m.rules.push_back(std::move(rule));
  }
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  return m;
}

json to_json(const SVMModel& m) {
  return json{{"cost", m.cost},
              {"gamma", m.gamma},
              {"bias", m.bias},
              {"support_vectors", m.support_vectors},
              {"alpha", m.alpha},
              {"sv_labels", m.sv_labels},
              {"scale_min", m.scale_min},
              {"scale_max", m.scale_max},
              {"max_kkt_violation", m.max_kkt_violation}};
}

SVMModel svm_from_json(const json& j) {
  SVMModel m;
  m.cost = j.at("cost").get<double>();
  m.gamma = j.at("gamma").get<double>();
  m.bias = j.at("bias").get<double>();
  m.support_vectors =
      j.at("support_vectors").get<std::vector<std::vector<double>>>();
  m.alpha = j.at("alpha").get<std::vector<double>>();
  m.sv_labels = j.at("sv_labels").get<std::vector<int>>();
  m.scale_min = j.at("scale_min").get<std::vector<double>>();
  m.scale_max = j.at("scale_max").get<std::vector<double>>();
  m.max_kkt_violation = j.at("max_kkt_violation").get<double>();
  return m;
}

}  // namespace

const char* to_string(LearnerKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

LearnerKind learner_from_string(std::string_view name) {
  if (name == "nb") return LearnerKind::naive_bayes;
  for (int i = 0; i < 4; ++i)
    if (name == kKindNames[i]) return static_cast<LearnerKind>(i);
  throw DomainError("unknown learner '" + std::string(name) + "'");
}

int predict(const TrainedModel& model, std::span<const double> features) {
  if (features.size() != model.dim)
    throw ContractError("input has " + std::to_string(features.size()) +
                        " features, model expects " +
                        std::to_string(model.dim));
  switch (model.kind) {
    case LearnerKind::naive_bayes:
      return predict_nb(std::get<NBModel>(model.params), features);
    case LearnerKind::adaboost:
      return predict_boost(std::get<EnsembleModel>(model.params), features);
    case LearnerKind::ripper:
      return predict_rules(std::get<RuleSet>(model.params), features);
    case LearnerKind::svm:
      return svm_decision(std::get<SVMModel>(model.params), features) > 0.0
                 ? +1
                 : -1;
  }
  throw ContractError("unknown model kind");
}

int predict(const TrainedModel& model, std::span<const double> features,
            std::uint64_t registry_fingerprint) {
  if (model.registry_fingerprint != 0 &&
      model.registry_fingerprint != registry_fingerprint)
    throw ContractError("feature registry fingerprint mismatch: model built "
                        "against a different feature layout");
  return predict(model, features);
}

std::string serialize_model(const TrainedModel& model) {
  json j;
  j["version"] = kModelFormatVersion;
  j["kind"] = to_string(model.kind);
  j["registry_fingerprint"] = model.registry_fingerprint;
  j["dim"] = model.dim;
  std::visit([&](const auto& params) { j["params"] = to_json(params); },
             model.params);
  return j.dump(2) + "\n";
}

TrainedModel deserialize_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != kModelFormatVersion)
      throw SchemaError("unsupported model format version");
    TrainedModel model;
    model.kind = learner_from_string(j.at("kind").get<std::string>());
    model.registry_fingerprint =
        j.at("registry_fingerprint").get<std::uint64_t>();
    model.dim = j.at("dim").get<std::size_t>();
    const json& params = j.at("params");
    switch (model.kind) {
      case LearnerKind::naive_bayes: model.params = nb_from_json(params); break;
      case LearnerKind::adaboost:
        model.params = ensemble_from_json(params);
        break;
      case LearnerKind::ripper: model.params = rules_from_json(params); break;
      case LearnerKind::svm: model.params = svm_from_json(params); break;
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model envelope: ") + e.what());
  }
}

bool condition_matches(const RuleCondition& cond,
                       std::span<const double> features) {
  const double v = features[static_cast<std::size_t>(cond.feature)];
  switch (cond.op) {
    case CondOp::le: return v <= cond.value;
    case CondOp::ge: return v >= cond.value;
    case CondOp::eq: return v == cond.value;
  }
  return false;
}

bool rule_matches(const Rule& rule, std::span<const double> features) {
  for (const RuleCondition& cond : rule.conditions)
    if (!condition_matches(cond, features)) return false;
  return true;
}

std::string render_ruleset(const RuleSet& rules,
                           const std::string& target_text) {
  std::ostringstream out;
  auto feature_text = [&](int index) -> std::string {
    if (index >= 0 &&
        static_cast<std::size_t>(index) < rules.feature_names.size())
      return rules.feature_names[static_cast<std::size_t>(index)];
    return "f" + std::to_string(index);
  };
  for (const Rule& rule : rules.rules) {
    bool first = true;
    for (const RuleCondition& cond : rule.conditions) {
      if (!first) out << " ∧ ";
      out << feature_text(cond.feature) << ' ' << op_name(cond.op) << ' '
          << format_double(cond.value);
      first = false;
    }
    out << " → " << target_text << " (" << rule.covered << '/' << rule.errors
        << ")\n";
  }
  out << "otherwise → -1 (default)\n";
  return out.str();
}

}  // namespace prefmodel
