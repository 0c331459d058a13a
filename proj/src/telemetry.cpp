#include "prefmodel/telemetry.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace prefmodel {

namespace {

using nlohmann::json;

constexpr const char* kPreferenceNames[kPreferenceCount] = {
    "culture", "gold", "growth", "military", "religion", "science"};

struct IndicatorInfo {
  const char* label;
  const char* column;  // nullptr for derived indicators
};

constexpr IndicatorInfo kIndicators[kIndicatorCount] = {
    {"War", "war"},
    {"Cities", "cities"},
    {"Units", "units"},
    {"Population", "population"},
    {"Gold", "gold"},
    {"Land", "land"},
    {"Plots", "plots"},
    {"Techs", "techs"},
    {"Score", "score"},
    {"Economy", "economy"},
    {"Industry", "industry"},
    {"Agriculture", "agriculture"},
    {"Power", "power"},
    {"Culture", "culture"},
    {"Maintenance", "maintenance"},
    {"GoldRate", "gold_rate"},
    {"ResearchRate", "research_rate"},
    {"CultureRate", "culture_rate"},
    {"StateReligionDiff", "state_religion_diff"},
    {"DeclaredWar", "declared_war"},
    {"CumulativeDeclaredWar", nullptr},
    {"AverageDeclaredWar", nullptr},
    {"CumulativeWar", nullptr},
    {"AverageWar", nullptr},
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

void check_flag(double v, const char* name, int turn) {
  if (v != 0.0 && v != 1.0)
    throw DomainError(std::string(name) + " flag must be 0 or 1 at turn " +
                      std::to_string(turn));
}

}  // namespace

const char* to_string(Preference p) {
  return kPreferenceNames[static_cast<int>(p)];
}

Preference preference_from_string(std::string_view name) {
  for (int i = 0; i < kPreferenceCount; ++i)
    if (name == kPreferenceNames[i]) return static_cast<Preference>(i);
  throw DomainError("unknown preference '" + std::string(name) + "'");
}

int PreferenceVector::checked(int level) {
  if (level != 0 && level != 2 && level != 5)
    throw DomainError("preference level must be 0, 2 or 5, got " +
                      std::to_string(level));
  return level;
}

PreferenceVector::PreferenceVector(int culture, int gold, int growth,
                                   int military, int religion, int science)
    : levels_{checked(culture),  checked(gold),     checked(growth),
              checked(military), checked(religion), checked(science)} {}

void PreferenceVector::set_level(Preference p, int level) {
  levels_[static_cast<int>(p)] = checked(level);
}

const char* indicator_label(Indicator ind) {
  return kIndicators[static_cast<int>(ind)].label;
}

const char* indicator_column(Indicator ind) {
  const char* col = kIndicators[static_cast<int>(ind)].column;
  if (!col)
    throw ContractError(std::string(indicator_label(ind)) +
                        " is derived and has no log column");
  return col;
}

std::optional<Indicator> indicator_from_label(std::string_view label) {
  for (int i = 0; i < kIndicatorCount; ++i)
    if (label == kIndicators[i].label) return static_cast<Indicator>(i);
  return std::nullopt;
}

std::optional<Indicator> indicator_from_column(std::string_view column) {
  for (int i = 0; i < kBaseIndicatorCount; ++i)
    if (kIndicators[i].column && column == kIndicators[i].column)
      return static_cast<Indicator>(i);
  return std::nullopt;
}

MatchLog parse_match_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty log: no header row");
  const std::vector<std::string> header = split_csv_line(line);

  std::map<std::string, int> col_index;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[i].empty()) throw SchemaError("empty header cell");
    if (!col_index.emplace(header[i], i).second)
      throw SchemaError("duplicate column '" + header[i] + "'");
  }

  auto require = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it == col_index.end()) throw SchemaError(name);
    return it->second;
  };

  const int turn_col = require("turn");
  std::array<int, kBaseIndicatorCount> base_cols{};
  for (int i = 0; i < kBaseIndicatorCount; ++i)
    base_cols[i] = require(kIndicators[i].column);

  int victory_col = -1, peace_col = -1;
  if (auto it = col_index.find("victory_type"); it != col_index.end())
    victory_col = it->second;
  if (auto it = col_index.find("peace"); it != col_index.end())
    peace_col = it->second;

  MatchLog log;
  int row_number = 1;
  std::optional<double> victory_value, peace_value;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError("row " + std::to_string(row_number) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    auto cell = [&](int col) -> double {
      return parse_double(cells[static_cast<std::size_t>(col)],
                          "row " + std::to_string(row_number) + " column '" +
                              header[static_cast<std::size_t>(col)] + "'");
    };

    TurnRecord rec;
    const double turn_value = cell(turn_col);
    rec.turn = static_cast<int>(turn_value);
    if (rec.turn < 1 || turn_value != rec.turn)
      throw ParseError("row " + std::to_string(row_number) +
                       ": turn must be a positive integer");
    for (int i = 0; i < kBaseIndicatorCount; ++i)
      rec.values[static_cast<std::size_t>(i)] = cell(base_cols[i]);

    auto track_constant = [&](int col, std::optional<double>& slot,
                              const char* name) {
      if (col < 0) return;
      const double v = cell(col);
      if (slot && *slot != v)
        throw StructureError(std::string(name) +
                             " must be constant across rows");
      slot = v;
    };
    track_constant(victory_col, victory_value, "victory_type");
    track_constant(peace_col, peace_value, "peace");

    log.turns.push_back(rec);
  }

  std::sort(log.turns.begin(), log.turns.end(),
            [](const TurnRecord& a, const TurnRecord& b) {
              return a.turn < b.turn;
            });
  for (int i = 0; i < log.turn_count(); ++i) {
    if (log.turns[static_cast<std::size_t>(i)].turn != i + 1)
      throw StructureError("turns not contiguous: expected turn " +
                           std::to_string(i + 1) + ", found " +
                           std::to_string(
                               log.turns[static_cast<std::size_t>(i)].turn));
  }
  for (const TurnRecord& rec : log.turns) {
    check_flag(rec[Indicator::war], "war", rec.turn);
    check_flag(rec[Indicator::declared_war], "declared_war", rec.turn);
  }

  if (victory_value) log.victory_type = static_cast<int>(*victory_value);
  if (peace_value) {
    check_flag(*peace_value, "peace", 1);
    log.peace = static_cast<int>(*peace_value);
  }
  return derive_cumulatives(std::move(log));
}

void serialize_match_log(const MatchLog& log, std::ostream& out) {
  out << "turn";
  for (int i = 0; i < kBaseIndicatorCount; ++i)
    out << ',' << kIndicators[i].column;
  const bool with_outcome = log.has_outcome_fields();
  if (with_outcome) out << ",victory_type,peace";
  out << '\n';
  for (const TurnRecord& rec : log.turns) {
    out << rec.turn;
    for (int i = 0; i < kBaseIndicatorCount; ++i)
      out << ',' << format_double(rec.values[static_cast<std::size_t>(i)]);
    if (with_outcome)
      out << ',' << *log.victory_type << ',' << *log.peace;
    out << '\n';
  }
}

MatchLog derive_cumulatives(MatchLog log) {
  double war_sum = 0.0, declared_sum = 0.0;
  for (std::size_t i = 0; i < log.turns.size(); ++i) {
    TurnRecord& rec = log.turns[i];
    check_flag(rec[Indicator::war], "war", rec.turn);
    check_flag(rec[Indicator::declared_war], "declared_war", rec.turn);
    war_sum += rec[Indicator::war];
    declared_sum += rec[Indicator::declared_war];
    const double t = static_cast<double>(i + 1);
    rec[Indicator::cumulative_war] = war_sum;
    rec[Indicator::average_war] = war_sum / t;
    rec[Indicator::cumulative_declared_war] = declared_sum;
    rec[Indicator::average_declared_war] = declared_sum / t;
  }
  return log;
}

void validate_match_log(const MatchLog& log) {
  for (int i = 0; i < log.turn_count(); ++i) {
    const TurnRecord& rec = log.turns[static_cast<std::size_t>(i)];
    if (rec.turn != i + 1)
      throw StructureError("turns not contiguous: expected turn " +
                           std::to_string(i + 1) + ", found " +
                           std::to_string(rec.turn));
    check_flag(rec[Indicator::war], "war", rec.turn);
    check_flag(rec[Indicator::declared_war], "declared_war", rec.turn);
  }
}

void check_pairing(const MatchLog& a, const MatchLog& b) {
  if (a.opponent_match_id != b.match_id || b.opponent_match_id != a.match_id)
    throw StructureError("logs '" + a.match_id + "' and '" + b.match_id +
                         "' are not mutually linked opponents");
  if (a.turn_count() != b.turn_count())
    throw StructureError("paired logs '" + a.match_id + "' (" +
                         std::to_string(a.turn_count()) + " turns) and '" +
                         b.match_id + "' (" + std::to_string(b.turn_count()) +
                         " turns) differ in length");
}

std::string serialize_sidecar(const MatchLog& log) {
  json j;
  j["match_id"] = log.match_id;
  j["agent_id"] = log.agent_id;
  json pref;
  for (Preference p : kAllPreferences)
    pref[to_string(p)] = log.preference.level(p);
  j["preference"] = pref;
  if (!log.opponent_match_id.empty())
    j["opponent_match_id"] = log.opponent_match_id;
  if (log.outcome) j["outcome"] = *log.outcome;
  return j.dump(2) + "\n";
}

void apply_sidecar(MatchLog& log, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  auto require = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw SchemaError(std::string("sidecar key ") + key);
    return j.at(key);
  };
  log.match_id = require("match_id").get<std::string>();
  log.agent_id = require("agent_id").get<std::string>();
  const json& pref = require("preference");
  for (Preference p : kAllPreferences) {
    const char* name = to_string(p);
    if (!pref.contains(name))
      throw SchemaError(std::string("sidecar preference key ") + name);
    log.preference.set_level(p, pref.at(name).get<int>());
  }
  if (j.contains("opponent_match_id"))
    log.opponent_match_id = j.at("opponent_match_id").get<std::string>();
  if (j.contains("outcome")) {
    const std::string outcome = j.at("outcome").get<std::string>();
    if (outcome != "victory" && outcome != "defeat")
      throw DomainError("outcome must be 'victory' or 'defeat', got '" +
                        outcome + "'");
    log.outcome = outcome;
  }
}

std::vector<MatchLog> load_match_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw ContractError("not a directory: " + dir);
  std::vector<fs::path> csv_files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") csv_files.push_back(entry.path());
  std::sort(csv_files.begin(), csv_files.end());

  std::vector<MatchLog> logs;
  logs.reserve(csv_files.size());
  for (const fs::path& csv_path : csv_files) {
    fs::path json_path = csv_path;
    json_path.replace_extension(".json");
    if (!fs::exists(json_path))
      throw SchemaError("missing sidecar for " + csv_path.string());
    std::ifstream csv(csv_path);
    if (!csv) throw ContractError("cannot open " + csv_path.string());
    MatchLog log;
    try {
      log = parse_match_log(csv);
    } catch (const Error& e) {
      throw ParseError(csv_path.string() + ": " + e.what());
    }
    std::ifstream sidecar(json_path);
    std::stringstream buf;
    buf << sidecar.rdbuf();
    apply_sidecar(log, buf.str());
    if (log.match_id != csv_path.stem().string())
      throw StructureError("sidecar match_id '" + log.match_id +
                           "' does not match file name " + csv_path.string());
    logs.push_back(std::move(log));
  }
  return logs;
}

void save_match_dir(const std::string& dir, const std::vector<MatchLog>& logs) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const MatchLog& log : logs) {
    if (log.match_id.empty())
      throw ContractError("cannot save a log without a match_id");
    const fs::path csv_path = fs::path(dir) / (log.match_id + ".csv");
    std::ofstream csv(csv_path);
    if (!csv) throw ContractError("cannot write " + csv_path.string());
    serialize_match_log(log, csv);
    std::ofstream sidecar(fs::path(dir) / (log.match_id + ".json"));
    sidecar << serialize_sidecar(log);
  }
}

}  // namespace prefmodel
