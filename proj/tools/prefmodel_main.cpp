#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

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

namespace fs = std::filesystem;
using namespace prefmodel;

namespace {

std::uint64_t env_default_seed() {
  if (const char* env = std::getenv("PREFMODEL_SEED"))
    return static_cast<std::uint64_t>(parse_int(env, "PREFMODEL_SEED"));
  return 12345;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<MatchLog> load_logs(const std::string& dir) {
  std::vector<MatchLog> logs = load_match_dir(dir);
  if (logs.empty()) throw DomainError("no match logs under " + dir);
  return logs;
}

std::vector<Preference> resolve_preferences(
    const std::vector<std::string>& names) {
  std::vector<Preference> out;
  for (const std::string& name : names) {
    if (name == "all") {
      for (Preference p : kAllPreferences) out.push_back(p);
      continue;
    }
    out.push_back(preference_from_string(name));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FoldTrainer make_fold_trainer(LearnerKind kind, std::uint64_t fingerprint,
                              std::vector<std::string> names, double cost,
                              double gamma) {
  switch (kind) {
    case LearnerKind::naive_bayes:
      return [fingerprint](const std::vector<Instance>& data, std::uint64_t) {
        return train_naive_bayes(data, fingerprint);
      };
    case LearnerKind::adaboost:
      return [fingerprint](const std::vector<Instance>& data, std::uint64_t) {
        return train_adaboost(data, 30, fingerprint);
      };
    case LearnerKind::ripper:
      return [fingerprint, names](const std::vector<Instance>& data,
                                  std::uint64_t fold_seed) {
        return train_ripper(data, fold_seed, fingerprint, names);
      };
    case LearnerKind::svm:
      return [fingerprint, cost, gamma](const std::vector<Instance>& data,
                                        std::uint64_t) {
        return train_svm_smo(data, cost, gamma, fingerprint);
      };
  }
  throw ContractError("bad learner kind");
}

// Shared by `evaluate` and `repro`: featurize, fold, cross-validate every
// (preference, learner) pair, write reports plus the roll-up table.
void run_evaluation(const std::vector<MatchLog>& logs, FeatureMode mode,
                    const std::vector<Preference>& preferences,
                    const std::vector<std::string>& learner_names, int k,
                    bool sample_training, double perc, int cutoff,
                    std::uint64_t seed, int jobs, double svm_cost,
                    double svm_gamma, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const FeatureRegistry& registry = FeatureRegistry::get(mode);
  std::vector<std::string> feature_names;
  for (const FeatureDef& def : registry.defs())
    feature_names.push_back(def.name);

  std::vector<EvalReport> reports;
  for (Preference pref : preferences) {
    const std::string pref_name = to_string(pref);
    std::vector<MatchInstances> dataset =
        featurize_dataset(logs, mode, pref, cutoff, jobs);
    std::vector<SampleKey> keys;
    keys.reserve(dataset.size());
    for (const MatchInstances& m : dataset)
      keys.push_back({m.match_id, m.with_pref});
    FoldSpec folds = stratified_kfold(
        keys, k, derive_seed(seed, 500 + static_cast<int>(pref)));
    write_text(fs::path(out_dir) / ("folds_" + pref_name + ".json"),
               fold_spec_to_json(folds));

    for (const std::string& learner_name : learner_names) {
      const LearnerKind kind = learner_from_string(learner_name);
      CrossValidateOptions options;
      options.preference = pref_name;
      options.learner = to_string(kind);
      options.sample_training = sample_training;
      options.perc = perc;
      options.seed =
          derive_seed(derive_seed(seed, 1000 + static_cast<int>(pref)),
                      fingerprint_names({options.learner}));
      options.jobs = jobs;
      EvalReport report = cross_validate(
          make_fold_trainer(kind, registry.fingerprint(), feature_names,
                            svm_cost, svm_gamma),
          dataset, folds, options, &std::cerr);
      write_text(fs::path(out_dir) / ("report_" + options.learner + "_" +
                                      pref_name + ".json"),
                 report_to_json(report));
      reports.push_back(std::move(report));
    }
  }

  std::ostringstream rollup;
  write_rollup_csv(rollup, reports);
  write_text(fs::path(out_dir) / "rollup.csv", rollup.str());
}

struct ConfigMerger {
  nlohmann::json cfg;
  CLI::App* cmd = nullptr;

  ConfigMerger(const std::string& path, CLI::App* app,
               const std::vector<std::string>& allowed)
      : cmd(app) {
    if (path.empty()) return;
    try {
      cfg = nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad config JSON: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw SchemaError("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      (void)value;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw SchemaError("unknown config key: " + key);
    }
  }

  // Config fills only values the command line left untouched.
  template <typename T>
  void pull(const char* key, const char* flag, T& var) {
    if (!cfg.contains(key)) return;
    if (cmd->get_option(flag)->count() > 0) return;
    try {
      var = cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("config key " + std::string(key) + ": " + e.what());
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preference-model pipeline for paired game telemetry"};
  app.require_subcommand(1);

  const std::uint64_t seed_fallback = env_default_seed();

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a synthetic match set");
  struct {
    std::string roster_path;
    bool alternative = false;
    int games_per_pair = 8;
    std::uint64_t seed;
    int jobs = 1;
    std::string out;
  } sim_opt;
  sim_opt.seed = seed_fallback;
  sim->add_option("--roster", sim_opt.roster_path,
                  "roster JSON (default: built-in six agents)");
  sim->add_flag("--alternative", sim_opt.alternative,
                "use the built-in alternative roster");
  sim->add_option("--games-per-pair", sim_opt.games_per_pair,
                  "matches per unordered agent pair")
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_opt.seed, "root seed");
  sim->add_option("--jobs", sim_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sim->add_option("--out", sim_opt.out, "output match directory")->required();
  sim->callback([&] {
    std::vector<AgentSpec> roster;
    if (!sim_opt.roster_path.empty())
      roster = roster_from_json(read_text(sim_opt.roster_path));
    else if (sim_opt.alternative)
      roster = alternative_roster(derive_seed(sim_opt.seed, 11));
    else
      roster = default_roster(derive_seed(sim_opt.seed, 11));
    std::vector<MatchLog> logs = generate_dataset(
        roster, sim_opt.games_per_pair, derive_seed(sim_opt.seed, 12),
        sim_opt.jobs);
    fs::create_directories(sim_opt.out);
    save_match_dir(sim_opt.out, logs);
    write_text(fs::path(sim_opt.out) / "roster.json", roster_to_json(roster));
  });

  // featurize
  auto* feat = app.add_subcommand("featurize",
                                  "turn match logs into a feature matrix");
  struct {
    std::string in, out;
    std::string mode = "offline";
    std::string preference = "culture";
    int cutoff = 100;
    int jobs = 1;
  } feat_opt;
  feat->add_option("--in", feat_opt.in, "match directory")->required();
  feat->add_option("--mode", feat_opt.mode, "offline|online");
  feat->add_option("--preference", feat_opt.preference,
                   "target preference for labels");
  feat->add_option("--cutoff", feat_opt.cutoff,
                   "drop instances with turn <= cutoff");
  feat->add_option("--jobs", feat_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  feat->add_option("--out", feat_opt.out, "feature CSV path")->required();
  feat->callback([&] {
    const FeatureMode mode = feature_mode_from_string(feat_opt.mode);
    std::vector<MatchLog> logs = load_logs(feat_opt.in);
    std::vector<Instance> instances = flatten(featurize_dataset(
        logs, mode, preference_from_string(feat_opt.preference),
        feat_opt.cutoff, feat_opt.jobs));
    std::ofstream out(feat_opt.out, std::ios::binary);
    if (!out) throw DomainError("cannot write " + feat_opt.out);
    write_feature_matrix(out, instances, FeatureRegistry::get(mode));
  });

  // sample
  auto* samp = app.add_subcommand(
      "sample", "stratified match subsample (flagged block first)");
  struct {
    std::string in, out, copy_to;
    std::string preference = "culture";
    double perc = 0.25;
    std::uint64_t seed;
  } samp_opt;
  samp_opt.seed = seed_fallback;
  samp->add_option("--in", samp_opt.in, "match directory")->required();
  samp->add_option("--preference", samp_opt.preference,
                   "preference whose presence stratifies the sample");
  samp->add_option("--perc", samp_opt.perc, "fraction kept per stratum");
  samp->add_option("--seed", samp_opt.seed, "root seed");
  samp->add_option("--out", samp_opt.out, "JSON list of kept match ids")
      ->required();
  samp->add_option("--copy-to", samp_opt.copy_to,
                   "also write the kept logs to this directory");
  samp->callback([&] {
    const Preference target = preference_from_string(samp_opt.preference);
    std::vector<MatchLog> logs = load_logs(samp_opt.in);
    std::vector<SampleKey> keys;
    for (const MatchLog& log : logs)
      keys.push_back({log.match_id, log.preference.level(target) > 0});
    std::vector<std::size_t> kept =
        sample_indices(keys, samp_opt.perc, samp_opt.seed);
    nlohmann::json j;
    j["preference"] = samp_opt.preference;
    j["perc"] = samp_opt.perc;
    j["kept"] = nlohmann::json::array();
    for (std::size_t i : kept) j["kept"].push_back(logs[i].match_id);
    write_text(samp_opt.out, j.dump(2) + "\n");
    if (!samp_opt.copy_to.empty()) {
      std::vector<MatchLog> sampled;
      for (std::size_t i : kept) sampled.push_back(logs[i]);
      fs::create_directories(samp_opt.copy_to);
      save_match_dir(samp_opt.copy_to, sampled);
    }
  });

  // train
  auto* train = app.add_subcommand("train",
                                   "fit one model on a feature matrix");
  struct {
    std::string in, out;
    std::string learner = "nb";
    std::uint64_t seed;
    int rounds = 30;
    double cost = 1.0;
    double gamma = 0.0078125;
  } train_opt;
  train_opt.seed = seed_fallback;
  train->add_option("--in", train_opt.in, "feature CSV")->required();
  train->add_option("--learner", train_opt.learner,
                    "nb|naive_bayes|adaboost|ripper|svm");
  train->add_option("--seed", train_opt.seed, "root seed");
  train->add_option("--rounds", train_opt.rounds, "boosting rounds")
      ->check(CLI::PositiveNumber);
  train->add_option("--cost", train_opt.cost, "svm cost");
  train->add_option("--gamma", train_opt.gamma, "svm rbf gamma");
  train->add_option("--out", train_opt.out, "model JSON path")->required();
  train->callback([&] {
    std::ifstream in(train_opt.in, std::ios::binary);
    if (!in) throw DomainError("cannot read " + train_opt.in);
    FeatureMatrixFile file = read_feature_matrix(in);
    const LearnerKind kind = learner_from_string(train_opt.learner);
    TrainedModel model;
    switch (kind) {
      case LearnerKind::naive_bayes:
        model = train_naive_bayes(file.instances, file.fingerprint);
        break;
      case LearnerKind::adaboost:
        model = train_adaboost(file.instances, train_opt.rounds,
                               file.fingerprint);
        break;
      case LearnerKind::ripper:
        model = train_ripper(file.instances, train_opt.seed, file.fingerprint,
                             file.feature_names);
        break;
      case LearnerKind::svm:
        model = train_svm_smo(file.instances, train_opt.cost, train_opt.gamma,
                              file.fingerprint);
        break;
    }
    write_text(train_opt.out, serialize_model(model));
  });

  // tune
  auto* tune = app.add_subcommand(
      "tune", "exponential cost/gamma grid search for the svm");
  struct {
    std::string in, val, out;
    std::string learner = "svm";
    int jobs = 1;
  } tune_opt;
  tune->add_option("--in", tune_opt.in, "training feature CSV")->required();
  tune->add_option("--val", tune_opt.val, "validation feature CSV")
      ->required();
  tune->add_option("--learner", tune_opt.learner, "only svm is tunable");
  tune->add_option("--jobs", tune_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  tune->add_option("--out", tune_opt.out, "grid CSV path")->required();
  tune->callback([&] {
    if (learner_from_string(tune_opt.learner) != LearnerKind::svm)
      throw DomainError("tune supports --learner svm only");
    std::ifstream tin(tune_opt.in, std::ios::binary);
    if (!tin) throw DomainError("cannot read " + tune_opt.in);
    FeatureMatrixFile train_file = read_feature_matrix(tin);
    std::ifstream vin(tune_opt.val, std::ios::binary);
    if (!vin) throw DomainError("cannot read " + tune_opt.val);
    FeatureMatrixFile val_file = read_feature_matrix(vin);
    if (train_file.fingerprint != val_file.fingerprint)
      throw ContractError("train and validation feature layouts differ");
    const std::uint64_t fp = train_file.fingerprint;
    HyperTrainer trainer = [&, fp](const std::vector<Instance>& data,
                                   double cost, double gamma) {
      return train_svm_smo(data, cost, gamma, fp);
    };
    GridResult result =
        grid_search(trainer, train_file.instances, val_file.instances,
                    GridSpec::standard(), tune_opt.jobs, &std::cerr);
    std::ofstream out(tune_opt.out, std::ios::binary);
    if (!out) throw DomainError("cannot write " + tune_opt.out);
    write_grid_csv(out, result.cells);
    std::cout << "best c_exp=" << result.best_c_exp
              << " g_exp=" << result.best_g_exp
              << " accuracy=" << format_double(result.best_accuracy) << "\n";
  });

  // evaluate
  auto* eval = app.add_subcommand("evaluate",
                                  "k-fold cross-validated accuracy reports");
  struct {
    std::string in, out, config;
    std::string mode = "offline";
    std::vector<std::string> preferences{"all"};
    std::vector<std::string> learners{"nb", "adaboost", "ripper"};
    int k = 10;
    double perc = 0.25;
    bool sample = true;
    int cutoff = 100;
    std::uint64_t seed;
    int jobs = 1;
    double svm_cost = 1.0;
    double svm_gamma = 0.0078125;
  } eval_opt;
  eval_opt.seed = seed_fallback;
  eval->add_option("--in", eval_opt.in, "match directory")->required();
  eval->add_option("--config", eval_opt.config,
                   "JSON config; command-line flags win");
  eval->add_option("--mode", eval_opt.mode, "offline|online");
  eval->add_option("--preference", eval_opt.preferences,
                   "preference name or 'all' (repeatable)");
  eval->add_option("--learner", eval_opt.learners, "learners (repeatable)");
  eval->add_option("--k", eval_opt.k, "fold count");
  eval->add_option("--perc", eval_opt.perc, "training-fold sample fraction");
  eval->add_flag("--sample,!--no-sample", eval_opt.sample,
                 "subsample training folds");
  eval->add_option("--cutoff", eval_opt.cutoff,
                   "drop instances with turn <= cutoff");
  eval->add_option("--seed", eval_opt.seed, "root seed");
  eval->add_option("--jobs", eval_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  eval->add_option("--svm-cost", eval_opt.svm_cost, "svm cost");
  eval->add_option("--svm-gamma", eval_opt.svm_gamma, "svm rbf gamma");
  eval->add_option("--out", eval_opt.out, "report directory")->required();
  eval->callback([&] {
    ConfigMerger cfg(eval_opt.config, eval,
                     {"mode", "preference", "learner", "k", "perc", "sample",
                      "cutoff", "seed", "jobs", "svm_cost", "svm_gamma"});
    cfg.pull("mode", "--mode", eval_opt.mode);
    cfg.pull("preference", "--preference", eval_opt.preferences);
    cfg.pull("learner", "--learner", eval_opt.learners);
    cfg.pull("k", "--k", eval_opt.k);
    cfg.pull("perc", "--perc", eval_opt.perc);
    cfg.pull("sample", "--sample", eval_opt.sample);
    cfg.pull("cutoff", "--cutoff", eval_opt.cutoff);
    cfg.pull("seed", "--seed", eval_opt.seed);
    cfg.pull("jobs", "--jobs", eval_opt.jobs);
    cfg.pull("svm_cost", "--svm-cost", eval_opt.svm_cost);
    cfg.pull("svm_gamma", "--svm-gamma", eval_opt.svm_gamma);
    run_evaluation(load_logs(eval_opt.in),
                   feature_mode_from_string(eval_opt.mode),
                   resolve_preferences(eval_opt.preferences),
                   eval_opt.learners, eval_opt.k, eval_opt.sample,
                   eval_opt.perc, eval_opt.cutoff, eval_opt.seed,
                   eval_opt.jobs, eval_opt.svm_cost, eval_opt.svm_gamma,
                   eval_opt.out);
  });

  // characterize
  auto* chr = app.add_subcommand(
      "characterize", "per-turn averaging, (piecewise) fits and separation");
  struct {
    std::string in, out, json_out;
    std::string indicator = "culture";
    std::string agent_a, agent_b;
    std::string transform = "none";
    std::string subset = "general";
    double breakpoint = 0.0;
    double confidence = 0.99;
  } chr_opt;
  chr->add_option("--in", chr_opt.in, "match directory")->required();
  chr->add_option("--indicator", chr_opt.indicator, "indicator column name");
  chr->add_option("--agent-a", chr_opt.agent_a,
                  "first agent id (default: first found)");
  chr->add_option("--agent-b", chr_opt.agent_b,
                  "second agent id (default: second found)");
  chr->add_option("--transform", chr_opt.transform, "none|root<k>");
  chr->add_option("--subset", chr_opt.subset, "general|victory|defeat");
  auto* bp_opt = chr->add_option("--breakpoint", chr_opt.breakpoint,
                                 "two-segment split turn");
  chr->add_option("--confidence", chr_opt.confidence, "0.90|0.95|0.99");
  chr->add_option("--out", chr_opt.out, "CSV path")->required();
  chr->add_option("--json", chr_opt.json_out, "also write the full report");
  chr->callback([&] {
    std::vector<MatchLog> logs = load_logs(chr_opt.in);
    std::vector<std::string> agents;
    for (const MatchLog& log : logs)
      if (std::find(agents.begin(), agents.end(), log.agent_id) ==
          agents.end())
        agents.push_back(log.agent_id);
    std::sort(agents.begin(), agents.end());
    if (chr_opt.agent_a.empty() || chr_opt.agent_b.empty()) {
      if (agents.size() < 2)
        throw DomainError("need two agents; found " +
                          std::to_string(agents.size()));
      if (chr_opt.agent_a.empty()) chr_opt.agent_a = agents[0];
      if (chr_opt.agent_b.empty())
        chr_opt.agent_b = agents[agents[0] == chr_opt.agent_a ? 1 : 0];
    }
    const auto pick = [&](const std::string& id) {
      std::vector<MatchLog> mine;
      for (const MatchLog& log : logs)
        if (log.agent_id == id) mine.push_back(log);
      if (mine.empty()) throw DomainError("no logs for agent " + id);
      return mine;
    };
    auto ind = indicator_from_column(chr_opt.indicator);
    if (!ind) ind = indicator_from_label(chr_opt.indicator);
    if (!ind) throw DomainError("unknown indicator: " + chr_opt.indicator);
    int root = 1;
    if (chr_opt.transform != "none") {
      if (chr_opt.transform.rfind("root", 0) != 0)
        throw DomainError("transform must be none or root<k>");
      root = static_cast<int>(
          parse_int(chr_opt.transform.substr(4), "--transform"));
    }
    std::optional<double> breakpoint;
    if (bp_opt->count() > 0) breakpoint = chr_opt.breakpoint;
    CharacterizationReport report = compare_agents(
        pick(chr_opt.agent_a), pick(chr_opt.agent_b), *ind, root,
        subset_from_string(chr_opt.subset), breakpoint, chr_opt.confidence);
    std::ofstream out(chr_opt.out, std::ios::binary);
    if (!out) throw DomainError("cannot write " + chr_opt.out);
    write_characterization_csv(out, report_rows(report));
    if (!chr_opt.json_out.empty())
      write_text(chr_opt.json_out, characterization_to_json(report));
  });

  // repro
  auto* repro = app.add_subcommand(
      "repro", "end to end: simulate, featurize, cross-validate, roll up");
  struct {
    std::string out, config;
    std::string mode = "offline";
    std::vector<std::string> learners{"nb", "adaboost", "ripper"};
    int games_per_pair = 8;
    int k = 10;
    double perc = 0.25;
    bool sample = true;
    int cutoff = 100;
    std::uint64_t seed;
    int jobs = 1;
    double svm_cost = 1.0;
    double svm_gamma = 0.0078125;
    bool keep_logs = false;
  } rep_opt;
  rep_opt.seed = seed_fallback;
  repro->add_option("--config", rep_opt.config,
                    "JSON config; command-line flags win");
  repro->add_option("--mode", rep_opt.mode, "offline|online");
  repro->add_option("--learner", rep_opt.learners, "learners (repeatable)");
  repro->add_option("--games-per-pair", rep_opt.games_per_pair,
                    "matches per unordered agent pair")
      ->check(CLI::PositiveNumber);
  repro->add_option("--k", rep_opt.k, "fold count");
  repro->add_option("--perc", rep_opt.perc, "training-fold sample fraction");
  repro->add_flag("--sample,!--no-sample", rep_opt.sample,
                  "subsample training folds");
  repro->add_option("--cutoff", rep_opt.cutoff,
                    "drop instances with turn <= cutoff");
  repro->add_option("--seed", rep_opt.seed, "root seed");
  repro->add_option("--jobs", rep_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  repro->add_option("--svm-cost", rep_opt.svm_cost, "svm cost");
  repro->add_option("--svm-gamma", rep_opt.svm_gamma, "svm rbf gamma");
  repro->add_flag("--keep-logs", rep_opt.keep_logs,
                  "also write the simulated logs under <out>/logs");
  repro->add_option("--out", rep_opt.out, "report directory")->required();
  repro->callback([&] {
    ConfigMerger cfg(rep_opt.config, repro,
                     {"mode", "learner", "games_per_pair", "k", "perc",
                      "sample", "cutoff", "seed", "jobs", "svm_cost",
                      "svm_gamma"});
    cfg.pull("mode", "--mode", rep_opt.mode);
    cfg.pull("learner", "--learner", rep_opt.learners);
    cfg.pull("games_per_pair", "--games-per-pair", rep_opt.games_per_pair);
    cfg.pull("k", "--k", rep_opt.k);
    cfg.pull("perc", "--perc", rep_opt.perc);
    cfg.pull("sample", "--sample", rep_opt.sample);
    cfg.pull("cutoff", "--cutoff", rep_opt.cutoff);
    cfg.pull("seed", "--seed", rep_opt.seed);
    cfg.pull("jobs", "--jobs", rep_opt.jobs);
    cfg.pull("svm_cost", "--svm-cost", rep_opt.svm_cost);
    cfg.pull("svm_gamma", "--svm-gamma", rep_opt.svm_gamma);

    std::vector<AgentSpec> roster =
        default_roster(derive_seed(rep_opt.seed, 11));
    std::vector<MatchLog> logs = generate_dataset(
        roster, rep_opt.games_per_pair, derive_seed(rep_opt.seed, 12),
        rep_opt.jobs);
    fs::create_directories(rep_opt.out);
    if (rep_opt.keep_logs) {
      const fs::path log_dir = fs::path(rep_opt.out) / "logs";
      fs::create_directories(log_dir);
      save_match_dir(log_dir.string(), logs);
    }
    run_evaluation(logs, feature_mode_from_string(rep_opt.mode),
                   std::vector<Preference>(kAllPreferences.begin(),
                                           kAllPreferences.end()),
                   rep_opt.learners, rep_opt.k, rep_opt.sample, rep_opt.perc,
                   rep_opt.cutoff, rep_opt.seed, rep_opt.jobs,
                   rep_opt.svm_cost, rep_opt.svm_gamma, rep_opt.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
