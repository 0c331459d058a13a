#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefmodel/common.hpp"

namespace prefmodel {

// The six play-style preferences an agent can weight.
enum class Preference : int {
  culture = 0,
  gold,
  growth,
  military,
  religion,
  science,
};

inline constexpr int kPreferenceCount = 6;

inline constexpr std::array<Preference, kPreferenceCount> kAllPreferences = {
    Preference::culture,  Preference::gold,     Preference::growth,
    Preference::military, Preference::religion, Preference::science,
};

const char* to_string(Preference p);
Preference preference_from_string(std::string_view name);

// Six weight slots, each 0 (none), 2 (weak) or 5 (strong).
class PreferenceVector {
 public:
  PreferenceVector() = default;
  PreferenceVector(int culture, int gold, int growth, int military,
                   int religion, int science);

  int level(Preference p) const {
    return levels_[static_cast<int>(p)];
  }
  void set_level(Preference p, int level);

  bool operator==(const PreferenceVector&) const = default;

 private:
  static int checked(int level);
  std::array<int, kPreferenceCount> levels_{};
};

// Per-turn base indicators, in canonical storage order. The first 20 map to
// log columns; the last 4 are derived from the War/DeclaredWar flags.
enum class Indicator : int {
  war = 0,
  cities,
  units,
  population,
  gold,
  land,
  plots,
  techs,
  score,
  economy,
  industry,
  agriculture,
  power,
  culture,
  maintenance,
  gold_rate,
  research_rate,
  culture_rate,
  state_religion_diff,
  declared_war,
  cumulative_declared_war,
  average_declared_war,
  cumulative_war,
  average_war,
};

inline constexpr int kIndicatorCount = 24;
inline constexpr int kBaseIndicatorCount = 20;

// Display label, e.g. "CultureRate".
const char* indicator_label(Indicator ind);
// Log column name, e.g. "culture_rate". Derived indicators have no column.
const char* indicator_column(Indicator ind);
std::optional<Indicator> indicator_from_label(std::string_view label);
std::optional<Indicator> indicator_from_column(std::string_view column);

struct TurnRecord {
  int turn = 0;
  std::array<double, kIndicatorCount> values{};

  double& operator[](Indicator ind) { return values[static_cast<int>(ind)]; }
  double operator[](Indicator ind) const {
    return values[static_cast<int>(ind)];
  }
};

// One player's side of one match. Paired with the opponent's log through
// opponent_match_id; the pairing must be mutual.
struct MatchLog {
  std::string match_id;
  std::string agent_id;
  PreferenceVector preference;
  std::vector<TurnRecord> turns;
  std::string opponent_match_id;

  // End-of-match fields, present only for completed matches.
  std::optional<std::string> outcome;  // "victory" or "defeat"
  std::optional<int> victory_type;     // signed end-of-match code
  std::optional<int> peace;            // 1 if the match saw no war turn

  int turn_count() const { return static_cast<int>(turns.size()); }
  // 1-based turn access; assumes validated contiguity.
  double value(Indicator ind, int turn) const {
    return turns[static_cast<std::size_t>(turn - 1)][ind];
  }
  bool has_outcome_fields() const {
    return victory_type.has_value() && peace.has_value();
  }
};

// Reads the per-turn CSV (header mandatory, any column order). Rows are
// re-ordered by turn number and must then be contiguous from 1. Cumulative
// columns are always recomputed from the flags.
MatchLog parse_match_log(std::istream& in);

// Canonical CSV: fixed column order, shortest round-trip number text.
void serialize_match_log(const MatchLog& log, std::ostream& out);

// Recomputes CumulativeWar/AverageWar and the DeclaredWar pair from the
// per-turn flags. Idempotent.
MatchLog derive_cumulatives(MatchLog log);

// Turn contiguity, flag domains, turn-count bounds when requested.
void validate_match_log(const MatchLog& log);

// Mutual opponent links and equal turn counts.
void check_pairing(const MatchLog& a, const MatchLog& b);

// Sidecar JSON: identity, label and outcome for one log.
std::string serialize_sidecar(const MatchLog& log);
void apply_sidecar(MatchLog& log, const std::string& json_text);

// Directory layout: one <match_id>.csv + <match_id>.json per log.
std::vector<MatchLog> load_match_dir(const std::string& dir);
void save_match_dir(const std::string& dir, const std::vector<MatchLog>& logs);

}  // namespace prefmodel
