#pragma once

#include "prefmodel/learners.hpp"

namespace prefmodel {

struct RipperOptions {
  int max_conditions = 32;         // per rule
  int max_rules = 200;
  int numeric_cut_count = 32;      // candidate thresholds per numeric feature
  int max_equality_distinct = 12;  // at most this many distinct values => use =
};

// Repeated grow/prune rule induction targeting the positive class. Each
// iteration re-splits the not-yet-covered data 2/3 grow / 1/3 prune
// (stratified, seeded), grows a rule by greedily adding the condition with
// the best information gain until no negatives are covered, prunes it back
// by deleting trailing conditions to maximize (p-n)/(p+n), and stops once a
// pruned rule is wrong on half the prune set or covers none of it.
TrainedModel train_ripper(const std::vector<Instance>& instances,
                          std::uint64_t seed = 0,
                          std::uint64_t registry_fingerprint = 0,
                          std::vector<std::string> feature_names = {},
                          const RipperOptions& options = {});

}  // namespace prefmodel
