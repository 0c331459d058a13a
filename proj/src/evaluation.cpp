#include "prefmodel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace prefmodel {

double majority_baseline(const std::vector<int>& labels) {
  if (labels.empty()) throw DomainError("no labels");
  std::size_t pos = 0;
  for (int y : labels)
    if (y > 0) ++pos;
  const std::size_t neg = labels.size() - pos;
  return static_cast<double>(std::max(pos, neg)) / labels.size();
}

double improvement(double accuracy, double baseline) {
  if (baseline <= 0.0) throw DomainError("baseline must be positive");
  return (accuracy - baseline) / baseline;
}

EvalReport cross_validate(const FoldTrainer& trainer,
                          const std::vector<MatchInstances>& matches,
                          const FoldSpec& folds,
                          const CrossValidateOptions& options,
                          std::ostream* warnings) {
  if (matches.empty()) throw DomainError("no matches to evaluate");
  if (folds.k < 2) throw DomainError("need at least 2 folds");

  std::vector<int> fold_of(matches.size());
  for (std::size_t m = 0; m < matches.size(); ++m)
    fold_of[m] = folds.fold_of(matches[m].match_id);

  EvalReport report;
  report.preference = options.preference;
  report.learner = options.learner;
  report.folds.resize(folds.k);

  parallel_for(folds.k, options.jobs, [&](std::size_t f) {
    FoldOutcome& out = report.folds[f];
    out.fold = static_cast<int>(f);

    std::vector<std::size_t> train_matches;
    std::vector<std::size_t> test_matches;
    for (std::size_t m = 0; m < matches.size(); ++m)
      (fold_of[m] == static_cast<int>(f) ? test_matches : train_matches)
          .push_back(m);

    if (options.sample_training) {
      std::vector<SampleKey> keys;
      keys.reserve(train_matches.size());
      for (std::size_t m : train_matches)
        keys.push_back({matches[m].match_id, matches[m].with_pref});
      std::vector<std::size_t> kept = sample_indices(
          keys, options.perc, derive_seed(options.seed, 1000 + f));
      std::vector<std::size_t> sampled;
      sampled.reserve(kept.size());
      for (std::size_t i : kept) sampled.push_back(train_matches[i]);
      train_matches = std::move(sampled);
    }

    std::vector<Instance> train;
    for (std::size_t m : train_matches)
      train.insert(train.end(), matches[m].instances.begin(),
                   matches[m].instances.end());
    out.train_count = train.size();

    TrainedModel model;
    try {
      model = trainer(train, derive_seed(options.seed, f));
    } catch (const Error& e) {
      out.failed = true;
      out.message = e.what();
      return;
    }

    for (std::size_t m : test_matches)
      for (const Instance& inst : matches[m].instances) {
        ++out.test_count;
        const int pred = predict(model, inst.features);
        if (inst.label > 0)
          ++(pred > 0 ? out.tp : out.fn);
        else
          ++(pred > 0 ? out.fp : out.tn);
      }
    out.accuracy = out.test_count == 0
                       ? 0.0
                       : static_cast<double>(out.tp + out.tn) / out.test_count;
  });

  std::vector<double> accs;
  for (const FoldOutcome& out : report.folds) {
    if (out.failed) {
      ++report.failed_folds;
      if (warnings)
        *warnings << "warning: fold " << out.fold
                  << " failed and is excluded: " << out.message << "\n";
      continue;
    }
    accs.push_back(out.accuracy);
    report.tp += out.tp;
    report.fp += out.fp;
    report.tn += out.tn;
    report.fn += out.fn;
  }
  if (accs.empty()) throw Error("all cross-validation folds failed");

  double sum = 0.0;
  for (double a : accs) sum += a;
  report.mean_accuracy = sum / accs.size();
  double sq = 0.0;
  for (double a : accs) {
    const double d = a - report.mean_accuracy;
    sq += d * d;
  }
  report.rmse = std::sqrt(sq / accs.size());

  std::vector<int> labels;
  for (const MatchInstances& match : matches)
    for (const Instance& inst : match.instances) labels.push_back(inst.label);
  report.majority = majority_baseline(labels);
  report.gain = improvement(report.mean_accuracy, report.majority);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["preference"] = report.preference;
  j["learner"] = report.learner;
  j["mean_accuracy"] = report.mean_accuracy;
  j["rmse"] = report.rmse;
  j["majority_baseline"] = report.majority;
  j["improvement"] = report.gain;
  j["confusion"] = {{"tp", report.tp},
                    {"fp", report.fp},
                    {"tn", report.tn},
                    {"fn", report.fn}};
  j["failed_folds"] = report.failed_folds;
  nlohmann::json folds = nlohmann::json::array();
  for (const FoldOutcome& out : report.folds) {
    nlohmann::json f;
    f["fold"] = out.fold;
    f["failed"] = out.failed;
    if (out.failed)
      f["message"] = out.message;
    else {
      f["accuracy"] = out.accuracy;
      f["test_count"] = out.test_count;
      f["train_count"] = out.train_count;
    }
    folds.push_back(std::move(f));
  }
  j["folds"] = std::move(folds);
  return j.dump(2) + "\n";
}

void write_rollup_csv(std::ostream& out,
                      const std::vector<EvalReport>& reports) {
  std::vector<std::string> learners;
  std::vector<std::string> prefs;
  for (const EvalReport& r : reports) {
    if (std::find(learners.begin(), learners.end(), r.learner) ==
        learners.end())
      learners.push_back(r.learner);
    if (std::find(prefs.begin(), prefs.end(), r.preference) == prefs.end())
      prefs.push_back(r.preference);
  }

  out << "preference,baseline";
  for (const std::string& l : learners)
    out << ',' << l << "_accuracy," << l << "_rmse," << l << "_improvement";
  out << '\n';

  char buf[32];
  const auto fixed4 = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  for (const std::string& p : prefs) {
    const EvalReport* any = nullptr;
    out << p;
    for (const EvalReport& r : reports)
      if (r.preference == p) {
        any = &r;
        break;
      }
    out << ',' << fixed4(any->majority);
    for (const std::string& l : learners) {
      const EvalReport* cell = nullptr;
      for (const EvalReport& r : reports)
        if (r.preference == p && r.learner == l) {
          cell = &r;
          break;
        }
      if (cell)
        out << ',' << fixed4(cell->mean_accuracy) << ','
            << fixed4(cell->rmse) << ',' << fixed4(cell->gain);
      else
        out << ",,,";
    }
    out << '\n';
  }
}

}  // namespace prefmodel
