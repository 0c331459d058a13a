#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefmodel/featurize.hpp"
#include "prefmodel/learners.hpp"
#include "prefmodel/sampling.hpp"

namespace prefmodel {

// Fraction held by the more frequent of the two classes.
double majority_baseline(const std::vector<int>& labels);

// Relative gain over the baseline: (accuracy - baseline) / baseline.
double improvement(double accuracy, double baseline);

struct FoldOutcome {
  int fold = 0;
  bool failed = false;
  std::string message;
  double accuracy = 0.0;
  std::size_t test_count = 0;
  std::size_t train_count = 0;
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

struct EvalReport {
  std::string preference;
  std::string learner;
  std::vector<FoldOutcome> folds;
  double mean_accuracy = 0.0;
  double rmse = 0.0;  // root-mean-square deviation of fold accuracy
  double majority = 0.0;
  double gain = 0.0;  // (mean_accuracy - majority) / majority
  long tp = 0, fp = 0, tn = 0, fn = 0;
  int failed_folds = 0;
};

struct CrossValidateOptions {
  std::string preference;  // report label only
  std::string learner;     // report label only
  bool sample_training = false;
  double perc = 0.25;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Trains one model per fold; receives that fold's training instances and a
// fold-specific seed derived from options.seed.
using FoldTrainer = std::function<TrainedModel(const std::vector<Instance>&,
                                               std::uint64_t fold_seed)>;

// K-fold evaluation over whole matches. Training folds are optionally
// subsampled (test folds never are). Folds whose trainer throws are excluded
// from the aggregates, with a warning written to `warnings` when non-null.
EvalReport cross_validate(const FoldTrainer& trainer,
                          const std::vector<MatchInstances>& matches,
                          const FoldSpec& folds,
                          const CrossValidateOptions& options,
                          std::ostream* warnings = nullptr);

std::string report_to_json(const EvalReport& report);

// One row per preference, one column group per learner:
// accuracy, rmse, improvement. Values fixed to four decimals.
void write_rollup_csv(std::ostream& out,
                      const std::vector<EvalReport>& reports);

}  // namespace prefmodel
