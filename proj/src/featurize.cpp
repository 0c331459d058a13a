#include "prefmodel/featurize.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace prefmodel {

namespace {

// Indicators every player can observe about the other; these get the full
// eight-entry block including the opponent-relative Diff variants.
constexpr Indicator kSharedIndicators[] = {
    Indicator::cities,      Indicator::units,   Indicator::population,
    Indicator::gold,        Indicator::land,    Indicator::plots,
    Indicator::techs,       Indicator::score,   Indicator::economy,
    Indicator::industry,    Indicator::agriculture, Indicator::power,
    Indicator::culture,
};

// Rates only the owner sees; no Diff variants.
constexpr Indicator kOwnOnlyIndicators[] = {
    Indicator::maintenance, Indicator::gold_rate, Indicator::research_rate,
    Indicator::culture_rate,
};

constexpr Indicator kTailIndicators[] = {
    Indicator::state_religion_diff,    Indicator::declared_war,
    Indicator::cumulative_declared_war, Indicator::average_declared_war,
    Indicator::cumulative_war,          Indicator::average_war,
};

constexpr const char* kCompositeSuffixes[7] = {
    "Derivate",     "Trend",     "TrendDerivate", "Diff",
    "DiffDerivate", "DiffTrend", "DiffTrendDerivate"};

// v[i] holds the series value at turn t-5+i, i = 0..5.
struct Window {
  double v[6];
  double sum5() const { return v[1] + v[2] + v[3] + v[4] + v[5]; }
};

CompositeValues compose_window(const Window& own, const Window& opp) {
  CompositeValues c;
  c.derivate = own.v[5] - own.v[4];
  c.trend = own.sum5() / 5.0;
  c.trend_derivate = own.v[5] - own.v[0];
  c.diff = own.v[5] - opp.v[5];
  c.diff_derivate = (own.v[5] - opp.v[5]) - (own.v[4] - opp.v[4]);
  c.diff_trend = (own.sum5() - opp.sum5()) / 5.0;
  c.diff_trend_derivate = (own.v[5] - opp.v[5]) - (own.v[0] - opp.v[0]);
  return c;
}

Window window_of(const MatchLog& log, Indicator ind, int t) {
  Window w;
  for (int i = 0; i < 6; ++i) w.v[i] = log.value(ind, t - 5 + i);
  return w;
}

void check_window_turn(int t, int length) {
  if (t < 6)
    throw DomainError("composite features need turn >= 6, got turn " +
                      std::to_string(t));
  if (t > length)
    throw DomainError("turn " + std::to_string(t) + " beyond series length " +
                      std::to_string(length));
}

}  // namespace

const char* to_string(FeatureMode mode) {
  return mode == FeatureMode::online ? "online" : "offline";
}

FeatureMode feature_mode_from_string(std::string_view name) {
  if (name == "online") return FeatureMode::online;
  if (name == "offline") return FeatureMode::offline;
  throw DomainError("unknown feature mode '" + std::string(name) + "'");
}

std::uint64_t fingerprint_names(const std::vector<std::string>& names) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  };
  for (const std::string& name : names) {
    for (char c : name) mix(c);
    mix('\n');
  }
  return h;
}

FeatureRegistry::FeatureRegistry(FeatureMode mode) : mode_(mode) {
  defs_.push_back({"Turn", FeatureTag::base});
  defs_.push_back({"War", FeatureTag::base});
  for (Indicator ind : kSharedIndicators) {
    const std::string base = indicator_label(ind);
    defs_.push_back({base, FeatureTag::base});
    for (const char* suffix : kCompositeSuffixes)
      defs_.push_back({base + suffix, FeatureTag::composite});
  }
  for (Indicator ind : kOwnOnlyIndicators) {
    const std::string base = indicator_label(ind);
    defs_.push_back({base, FeatureTag::base});
    for (int i = 0; i < 3; ++i)
      defs_.push_back({base + kCompositeSuffixes[i], FeatureTag::composite});
  }
  for (Indicator ind : kTailIndicators)
    defs_.push_back({indicator_label(ind), FeatureTag::base});
  if (mode == FeatureMode::offline) {
    defs_.push_back({"VictoryType", FeatureTag::end_of_match});
    defs_.push_back({"Peace", FeatureTag::end_of_match});
  }
  std::vector<std::string> names;
  names.reserve(defs_.size());
  for (const FeatureDef& def : defs_) names.push_back(def.name);
  fingerprint_ = fingerprint_names(names);
}

const FeatureRegistry& FeatureRegistry::get(FeatureMode mode) {
  static const FeatureRegistry online_registry(FeatureMode::online);
  static const FeatureRegistry offline_registry(FeatureMode::offline);
  return mode == FeatureMode::online ? online_registry : offline_registry;
}

int FeatureRegistry::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < defs_.size(); ++i)
    if (defs_[i].name == name) return static_cast<int>(i);
  return -1;
}

CompositeValues compose_features(std::span<const double> own,
                                 std::span<const double> opp, int t) {
  if (own.size() != opp.size())
    throw StructureError("own series has " + std::to_string(own.size()) +
                         " turns, opponent has " + std::to_string(opp.size()));
  check_window_turn(t, static_cast<int>(own.size()));
  Window wo, wp;
  for (int i = 0; i < 6; ++i) {
    wo.v[i] = own[static_cast<std::size_t>(t - 6 + i)];
    wp.v[i] = opp[static_cast<std::size_t>(t - 6 + i)];
  }
  return compose_window(wo, wp);
}

int binarize_label(int level) {
  if (level == 0) return -1;
  if (level == 2 || level == 5) return +1;
  throw DomainError("preference level must be 0, 2 or 5, got " +
                    std::to_string(level));
}

Instance assemble_instance(const MatchLog& own, const MatchLog& opp, int turn,
                           FeatureMode mode, Preference target) {
  if (own.turn_count() != opp.turn_count())
    throw StructureError("paired logs differ in length: " +
                         std::to_string(own.turn_count()) + " vs " +
                         std::to_string(opp.turn_count()));
  check_window_turn(turn, own.turn_count());
  if (mode == FeatureMode::offline && !own.has_outcome_fields())
    throw ContractError(
        "offline mode needs end-of-match fields (victory_type, peace) on log "
        "'" + own.match_id + "'");

  const FeatureRegistry& registry = FeatureRegistry::get(mode);
  Instance inst;
  inst.features.reserve(registry.size());
  inst.label = binarize_label(own.preference.level(target));
  inst.match_id = own.match_id;
  inst.turn = turn;

  auto& f = inst.features;
  f.push_back(static_cast<double>(turn));
  f.push_back(own.value(Indicator::war, turn));
  for (Indicator ind : kSharedIndicators) {
    const Window wo = window_of(own, ind, turn);
    const Window wp = window_of(opp, ind, turn);
    const CompositeValues c = compose_window(wo, wp);
    f.push_back(wo.v[5]);
    f.push_back(c.derivate);
    f.push_back(c.trend);
    f.push_back(c.trend_derivate);
    f.push_back(c.diff);
    f.push_back(c.diff_derivate);
    f.push_back(c.diff_trend);
    f.push_back(c.diff_trend_derivate);
  }
  for (Indicator ind : kOwnOnlyIndicators) {
    const Window wo = window_of(own, ind, turn);
    f.push_back(wo.v[5]);
    f.push_back(wo.v[5] - wo.v[4]);
    f.push_back(wo.sum5() / 5.0);
    f.push_back(wo.v[5] - wo.v[0]);
  }
  for (Indicator ind : kTailIndicators) f.push_back(own.value(ind, turn));
  if (mode == FeatureMode::offline) {
    f.push_back(static_cast<double>(*own.victory_type));
    f.push_back(static_cast<double>(*own.peace));
  }
  return inst;
}

std::vector<Instance> drop_early_turns(std::vector<Instance> instances,
                                       int cutoff) {
  if (cutoff < 0) throw DomainError("cutoff must be >= 0");
  std::erase_if(instances,
                [cutoff](const Instance& inst) { return inst.turn <= cutoff; });
  return instances;
}

std::vector<Instance> featurize_pair(const MatchLog& own, const MatchLog& opp,
                                     FeatureMode mode, Preference target,
                                     int cutoff) {
  if (cutoff < 0) throw DomainError("cutoff must be >= 0");
  check_pairing(own, opp);
  std::vector<Instance> out;
  const int first = std::max(6, cutoff + 1);
  if (own.turn_count() >= first) out.reserve(
      static_cast<std::size_t>(own.turn_count() - first + 1));
  for (int t = first; t <= own.turn_count(); ++t)
    out.push_back(assemble_instance(own, opp, t, mode, target));
  return out;
}

std::vector<MatchInstances> featurize_dataset(const std::vector<MatchLog>& logs,
                                              FeatureMode mode,
                                              Preference target, int cutoff,
                                              unsigned jobs) {
  std::map<std::string, const MatchLog*> by_id;
  for (const MatchLog& log : logs)
    if (!by_id.emplace(log.match_id, &log).second)
      throw StructureError("duplicate match_id '" + log.match_id + "'");

  std::vector<MatchInstances> out(logs.size());
  parallel_for(logs.size(), jobs, [&](std::size_t i) {
    const MatchLog& own = logs[i];
    auto it = by_id.find(own.opponent_match_id);
    if (it == by_id.end())
      throw StructureError("log '" + own.match_id +
                           "' links to missing opponent '" +
                           own.opponent_match_id + "'");
    out[i].match_id = own.match_id;
    out[i].with_pref = binarize_label(own.preference.level(target)) > 0;
    out[i].instances = featurize_pair(own, *it->second, mode, target, cutoff);
  });
  return out;
}

std::vector<Instance> flatten(const std::vector<MatchInstances>& dataset) {
  std::vector<Instance> out;
  std::size_t total = 0;
  for (const MatchInstances& m : dataset) total += m.instances.size();
  out.reserve(total);
  for (const MatchInstances& m : dataset)
    out.insert(out.end(), m.instances.begin(), m.instances.end());
  return out;
}

void write_feature_matrix(std::ostream& out,
                          const std::vector<Instance>& instances,
                          const FeatureRegistry& registry) {
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (i) out << ',';
    out << registry.name(i);
  }
  out << ",label,match_id,turn\n";
  for (const Instance& inst : instances) {
    if (inst.features.size() != registry.size())
      throw ContractError("instance at turn " + std::to_string(inst.turn) +
                          " has " + std::to_string(inst.features.size()) +
                          " features, registry expects " +
                          std::to_string(registry.size()));
    for (std::size_t i = 0; i < inst.features.size(); ++i) {
      if (i) out << ',';
      out << format_double(inst.features[i]);
    }
    out << ',' << inst.label << ',' << inst.match_id << ',' << inst.turn
        << '\n';
  }
}

FeatureMatrixFile read_feature_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("empty feature matrix: no header");
  std::vector<std::string> header;
  {
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        header.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    header.push_back(cur);
  }
  if (header.size() < 4)
    throw SchemaError("feature matrix needs feature columns plus "
                      "label,match_id,turn");
  const std::size_t n = header.size();
  if (header[n - 3] != "label" || header[n - 2] != "match_id" ||
      header[n - 1] != "turn")
    throw SchemaError("feature matrix must end with label,match_id,turn");

  FeatureMatrixFile file;
  file.feature_names.assign(header.begin(), header.end() - 3);
  file.fingerprint = fingerprint_names(file.feature_names);

  int row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    {
      std::string cur;
      for (char c : line) {
        if (c == ',') {
          cells.push_back(cur);
          cur.clear();
        } else if (c != '\r') {
          cur.push_back(c);
        }
      }
      cells.push_back(cur);
    }
    if (cells.size() != n)
      throw ParseError("row " + std::to_string(row_number) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(n));
    Instance inst;
    inst.features.reserve(n - 3);
    for (std::size_t i = 0; i + 3 < n; ++i)
      inst.features.push_back(
          parse_double(cells[i], "row " + std::to_string(row_number) +
                                     " column '" + header[i] + "'"));
    const long long label =
        parse_int(cells[n - 3], "row " + std::to_string(row_number) + " label");
    if (label != -1 && label != 1)
      throw DomainError("label must be -1 or +1 at row " +
                        std::to_string(row_number));
    inst.label = static_cast<int>(label);
    inst.match_id = cells[n - 2];
    inst.turn = static_cast<int>(parse_int(
        cells[n - 1], "row " + std::to_string(row_number) + " turn"));
    file.instances.push_back(std::move(inst));
  }
  return file;
}

}  // namespace prefmodel
