#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prefmodel/adaboost.hpp"
#include "prefmodel/characterize.hpp"
#include "prefmodel/evaluation.hpp"
#include "prefmodel/featurize.hpp"
#include "prefmodel/naive_bayes.hpp"
#include "prefmodel/ripper.hpp"
#include "prefmodel/sampling.hpp"
#include "prefmodel/simulator.hpp"
#include "prefmodel/svm.hpp"
#include "prefmodel/telemetry.hpp"
#include "prefmodel/tuning.hpp"

namespace py = pybind11;
using namespace prefmodel;

namespace {

Preference pref_arg(const std::string& name) {
  return preference_from_string(name);
}

Indicator indicator_arg(const std::string& name) {
  if (auto ind = indicator_from_column(name)) return *ind;
  if (auto ind = indicator_from_label(name)) return *ind;
  throw DomainError("unknown indicator: " + name);
}

FoldTrainer trainer_for(const std::string& learner, std::uint64_t fingerprint,
                        double cost, double gamma) {
  switch (learner_from_string(learner)) {
    case LearnerKind::naive_bayes:
      return [fingerprint](const std::vector<Instance>& d, std::uint64_t) {
        return train_naive_bayes(d, fingerprint);
      };
    case LearnerKind::adaboost:
      return [fingerprint](const std::vector<Instance>& d, std::uint64_t) {
        return train_adaboost(d, 30, fingerprint);
      };
    case LearnerKind::ripper:
      return [fingerprint](const std::vector<Instance>& d,
                           std::uint64_t fold_seed) {
        return train_ripper(d, fold_seed, fingerprint);
      };
    case LearnerKind::svm:
      return [fingerprint, cost, gamma](const std::vector<Instance>& d,
                                        std::uint64_t) {
        return train_svm_smo(d, cost, gamma, fingerprint);
      };
  }
  throw ContractError("bad learner");
}

py::dict report_dict(const EvalReport& report) {
  py::dict d;
  d["preference"] = report.preference;
  d["learner"] = report.learner;
  d["mean_accuracy"] = report.mean_accuracy;
  d["rmse"] = report.rmse;
  d["majority_baseline"] = report.majority;
  d["improvement"] = report.gain;
  d["tp"] = report.tp;
  d["fp"] = report.fp;
  d["tn"] = report.tn;
  d["fn"] = report.fn;
  d["failed_folds"] = report.failed_folds;
  py::list folds;
  for (const FoldOutcome& f : report.folds) {
    py::dict fd;
    fd["fold"] = f.fold;
    fd["failed"] = f.failed;
    fd["accuracy"] = f.accuracy;
    fd["test_count"] = f.test_count;
    folds.append(fd);
  }
  d["folds"] = folds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Preference-model pipeline core (match telemetry, features, "
            "learners, regression toolkit, simulator)";

  py::register_exception<Error>(m, "PipelineError");

  py::class_<PreferenceVector>(m, "PreferenceVector")
      .def(py::init<>())
      .def(py::init<int, int, int, int, int, int>(), py::arg("culture"),
           py::arg("gold"), py::arg("growth"), py::arg("military"),
           py::arg("religion"), py::arg("science"))
      .def("level",
           [](const PreferenceVector& v, const std::string& name) {
             return v.level(pref_arg(name));
           })
      .def("__eq__", [](const PreferenceVector& a, const PreferenceVector& b) {
        return a == b;
      })
      .def("__repr__", [](const PreferenceVector& v) {
        std::string out = "PreferenceVector(";
        bool first = true;
        for (Preference p : kAllPreferences) {
          if (!first) out += ", ";
          out += std::string(to_string(p)) + "=" +
                 std::to_string(v.level(p));
          first = false;
        }
        return out + ")";
      });

  py::class_<MatchLog>(m, "MatchLog")
      .def_readonly("match_id", &MatchLog::match_id)
      .def_readonly("agent_id", &MatchLog::agent_id)
      .def_readonly("opponent_match_id", &MatchLog::opponent_match_id)
      .def_readonly("preference", &MatchLog::preference)
      .def_property_readonly(
          "outcome",
          [](const MatchLog& log) -> py::object {
            if (!log.outcome) return py::none();
            return py::str(*log.outcome);
          })
      .def_property_readonly("turn_count", &MatchLog::turn_count)
      .def("value",
           [](const MatchLog& log, const std::string& indicator, int turn) {
             if (turn < 1 || turn > log.turn_count())
               throw DomainError("turn out of range");
             return log.value(indicator_arg(indicator), turn);
           })
      .def("__repr__", [](const MatchLog& log) {
        return "MatchLog(" + log.match_id + ", " +
               std::to_string(log.turn_count()) + " turns)";
      });

  py::class_<Instance>(m, "Instance")
      .def_readonly("features", &Instance::features)
      .def_readonly("label", &Instance::label)
      .def_readonly("match_id", &Instance::match_id)
      .def_readonly("turn", &Instance::turn);

  py::class_<TrainedModel>(m, "Model")
      .def_property_readonly(
          "kind", [](const TrainedModel& model) {
            return std::string(to_string(model.kind));
          })
      .def_property_readonly(
          "dim", [](const TrainedModel& model) { return model.dim; })
      .def("predict",
           [](const TrainedModel& model, const std::vector<double>& x) {
             return predict(model, x);
           })
      .def("to_json",
           [](const TrainedModel& model) { return serialize_model(model); })
      .def_static("from_json", [](const std::string& text) {
        return deserialize_model(text);
      });

  py::class_<RegressionFit>(m, "RegressionFit")
      .def_readonly("b0", &RegressionFit::b0)
      .def_readonly("b1", &RegressionFit::b1)
      .def_readonly("r_squared", &RegressionFit::r_squared)
      .def_readonly("ci_b0", &RegressionFit::ci_b0)
      .def_readonly("ci_b1", &RegressionFit::ci_b1)
      .def_readonly("confidence", &RegressionFit::confidence)
      .def_readonly("n", &RegressionFit::n)
      .def("__repr__", [](const RegressionFit& fit) {
        return "RegressionFit(b0=" + format_double(fit.b0) +
               ", b1=" + format_double(fit.b1) +
               ", r_squared=" + format_double(fit.r_squared) + ")";
      });

  m.def("load_match_dir", &load_match_dir, py::arg("dir"));
  m.def("save_match_dir", &save_match_dir, py::arg("dir"), py::arg("logs"));

  m.def(
      "generate_dataset",
      [](const std::string& roster, int games_per_pair, std::uint64_t seed,
         int jobs) {
        std::vector<AgentSpec> agents;
        if (roster == "default")
          agents = default_roster(derive_seed(seed, 11));
        else if (roster == "alternative")
          agents = alternative_roster(derive_seed(seed, 11));
        else
          agents = roster_from_json(roster);
        return generate_dataset(agents, games_per_pair,
                                derive_seed(seed, 12), jobs);
      },
      py::arg("roster") = "default", py::arg("games_per_pair") = 8,
      py::arg("seed") = 12345, py::arg("jobs") = 1,
      "roster: 'default', 'alternative', or roster JSON text");

  m.def(
      "featurize",
      [](const std::vector<MatchLog>& logs, const std::string& mode,
         const std::string& preference, int cutoff, int jobs) {
        return flatten(featurize_dataset(logs,
                                         feature_mode_from_string(mode),
                                         pref_arg(preference), cutoff,
                                         jobs));
      },
      py::arg("logs"), py::arg("mode") = "offline",
      py::arg("preference") = "culture", py::arg("cutoff") = 100,
      py::arg("jobs") = 1);

  m.def("feature_names", [](const std::string& mode) {
    std::vector<std::string> names;
    for (const FeatureDef& def :
         FeatureRegistry::get(feature_mode_from_string(mode)).defs())
      names.push_back(def.name);
    return names;
  });

  m.def(
      "compose",
      [](const std::vector<double>& own, const std::vector<double>& opp,
         int t) {
        const CompositeValues v = compose_features(own, opp, t);
        py::dict d;
        d["derivate"] = v.derivate;
        d["trend"] = v.trend;
        d["trend_derivate"] = v.trend_derivate;
        d["diff"] = v.diff;
        d["diff_derivate"] = v.diff_derivate;
        d["diff_trend"] = v.diff_trend;
        d["diff_trend_derivate"] = v.diff_trend_derivate;
        return d;
      },
      py::arg("own"), py::arg("opp"), py::arg("t"));

  m.def("train_naive_bayes",
        [](const std::vector<Instance>& data) {
          return train_naive_bayes(data);
        });
  m.def(
      "train_adaboost",
      [](const std::vector<Instance>& data, int rounds) {
        return train_adaboost(data, rounds);
      },
      py::arg("data"), py::arg("rounds") = 30);
  m.def(
      "train_ripper",
      [](const std::vector<Instance>& data, std::uint64_t seed) {
        return train_ripper(data, seed);
      },
      py::arg("data"), py::arg("seed") = 0);
  m.def(
      "train_svm",
      [](const std::vector<Instance>& data, double cost, double gamma) {
        return train_svm_smo(data, cost, gamma);
      },
      py::arg("data"), py::arg("cost") = 1.0, py::arg("gamma") = 0.0078125);

  m.def("majority_baseline", &majority_baseline, py::arg("labels"));
  m.def("improvement", &improvement, py::arg("accuracy"),
        py::arg("baseline"));

  m.def(
      "evaluate",
      [](const std::vector<MatchLog>& logs, const std::string& mode,
         const std::string& preference, const std::string& learner, int k,
         bool sample, double perc, int cutoff, std::uint64_t seed, int jobs,
         double svm_cost, double svm_gamma) {
        const FeatureMode fmode = feature_mode_from_string(mode);
        auto dataset =
            featurize_dataset(logs, fmode, pref_arg(preference), cutoff,
                              jobs);
        std::vector<SampleKey> keys;
        for (const auto& match : dataset)
          keys.push_back({match.match_id, match.with_pref});
        FoldSpec folds = stratified_kfold(keys, k, derive_seed(seed, 500));
        CrossValidateOptions options;
        options.preference = preference;
        options.learner = learner;
        options.sample_training = sample;
        options.perc = perc;
        options.seed = derive_seed(seed, 1000);
        options.jobs = jobs;
        return report_dict(cross_validate(
            trainer_for(learner, FeatureRegistry::get(fmode).fingerprint(),
                        svm_cost, svm_gamma),
            dataset, folds, options, nullptr));
      },
      py::arg("logs"), py::arg("mode") = "offline",
      py::arg("preference") = "culture", py::arg("learner") = "nb",
      py::arg("k") = 10, py::arg("sample") = true, py::arg("perc") = 0.25,
      py::arg("cutoff") = 100, py::arg("seed") = 12345, py::arg("jobs") = 1,
      py::arg("svm_cost") = 1.0, py::arg("svm_gamma") = 0.0078125);

  m.def(
      "average_by_turn",
      [](const std::vector<MatchLog>& logs, const std::string& indicator,
         const std::string& subset) {
        return average_by_turn(logs, indicator_arg(indicator),
                               subset_from_string(subset));
      },
      py::arg("logs"), py::arg("indicator"), py::arg("subset") = "general");

  m.def("transform_root", &transform_root, py::arg("series"), py::arg("k"));
  m.def("ols_fit", &ols_fit, py::arg("x"), py::arg("y"),
        py::arg("confidence") = 0.99);
  m.def(
      "separation_test",
      [](const RegressionFit& a, const RegressionFit& b,
         const std::string& coefficient, double confidence) {
        const Coefficient coef = coefficient == "b0" ? Coefficient::b0
                                : coefficient == "b1"
                                    ? Coefficient::b1
                                    : throw DomainError(
                                          "coefficient must be b0 or b1");
        const SeparationResult res =
            separation_test(a, b, coef, confidence);
        py::dict d;
        d["verdict"] = res.separated ? "separated" : "overlapping";
        d["gap"] = res.gap;
        d["t_statistic"] = res.t_statistic;
        d["degrees_freedom"] = res.degrees_freedom;
        d["p_value"] = res.p_value;
        return d;
      },
      py::arg("fit_a"), py::arg("fit_b"), py::arg("coefficient") = "b1",
      py::arg("confidence") = 0.99);
}
