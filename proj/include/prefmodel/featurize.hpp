#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefmodel/telemetry.hpp"

namespace prefmodel {

// Offline review keeps the two end-of-match features (130 total); online
// tracking drops them (128).
enum class FeatureMode { online, offline };

const char* to_string(FeatureMode mode);
FeatureMode feature_mode_from_string(std::string_view name);

enum class FeatureTag { base, composite, end_of_match };

struct FeatureDef {
  std::string name;
  FeatureTag tag;
};

// Fixed-order feature catalogue. Layout: Turn, War; then eight entries
// (base, Derivate, Trend, TrendDerivate, Diff, DiffDerivate, DiffTrend,
// DiffTrendDerivate) for each of the thirteen indicators both players can
// see; then four entries (base, Derivate, Trend, TrendDerivate) for each of
// the four own-only rates; then StateReligionDiff, DeclaredWar and the four
// war cumulatives; offline mode appends VictoryType and Peace.
class FeatureRegistry {
 public:
  static const FeatureRegistry& get(FeatureMode mode);

  FeatureMode mode() const { return mode_; }
  std::size_t size() const { return defs_.size(); }
  const std::vector<FeatureDef>& defs() const { return defs_; }
  const std::string& name(std::size_t i) const { return defs_[i].name; }
  // -1 when the name is absent.
  int index_of(std::string_view name) const;
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  explicit FeatureRegistry(FeatureMode mode);
  FeatureMode mode_;
  std::vector<FeatureDef> defs_;
  std::uint64_t fingerprint_ = 0;
};

// FNV-1a over newline-joined names; used to pin models to a feature layout.
std::uint64_t fingerprint_names(const std::vector<std::string>& names);

// The seven temporal/opponent-relative derivations of one base series at
// turn t (1-based, t >= 6 so the five-turn window and the t-5 lag exist).
struct CompositeValues {
  double derivate;
  double trend;
  double trend_derivate;
  double diff;
  double diff_derivate;
  double diff_trend;
  double diff_trend_derivate;
};

CompositeValues compose_features(std::span<const double> own,
                                 std::span<const double> opp, int t);

// 0 -> -1; 2 or 5 -> +1.
int binarize_label(int level);

struct Instance {
  std::vector<double> features;
  int label = -1;
  std::string match_id;
  int turn = 0;
};

Instance assemble_instance(const MatchLog& own, const MatchLog& opp, int turn,
                           FeatureMode mode, Preference target);

std::vector<Instance> drop_early_turns(std::vector<Instance> instances,
                                       int cutoff);

// All instances of one log for turns max(6, cutoff+1)..T.
std::vector<Instance> featurize_pair(const MatchLog& own, const MatchLog& opp,
                                     FeatureMode mode, Preference target,
                                     int cutoff);

// One log's instances plus the sampling metadata splits need.
struct MatchInstances {
  std::string match_id;
  bool with_pref = false;
  std::vector<Instance> instances;
};

// Featurizes every log against its linked opponent, preserving input order.
std::vector<MatchInstances> featurize_dataset(const std::vector<MatchLog>& logs,
                                              FeatureMode mode,
                                              Preference target, int cutoff,
                                              unsigned jobs = 1);

std::vector<Instance> flatten(const std::vector<MatchInstances>& dataset);

// CSV with header = registry names + label,match_id,turn.
void write_feature_matrix(std::ostream& out,
                          const std::vector<Instance>& instances,
                          const FeatureRegistry& registry);

struct FeatureMatrixFile {
  std::vector<std::string> feature_names;
  std::uint64_t fingerprint = 0;
  std::vector<Instance> instances;
};

FeatureMatrixFile read_feature_matrix(std::istream& in);

}  // namespace prefmodel
