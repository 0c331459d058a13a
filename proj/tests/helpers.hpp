#pragma once

// Shared builders for synthetic telemetry used across the test binaries.

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prefmodel/telemetry.hpp"

namespace testutil {

using prefmodel::Indicator;
using prefmodel::MatchLog;
using prefmodel::PreferenceVector;
using prefmodel::TurnRecord;

// Safe default for the value callbacks below; passing {} at a call site
// would build an empty std::function instead.
inline const std::function<double(Indicator, int)> zero_value =
    [](Indicator, int) { return 0.0; };

// Fills every base indicator from a (indicator, turn) function, keeping the
// war/declared_war flags at zero unless the function says otherwise.
inline MatchLog make_log(
    std::string match_id, std::string agent_id, int turns,
    const std::function<double(Indicator, int)>& value =
        [](Indicator, int) { return 0.0; },
    PreferenceVector preference = {}) {
  MatchLog log;
  log.match_id = std::move(match_id);
  log.agent_id = std::move(agent_id);
  log.preference = preference;
  log.turns.reserve(static_cast<std::size_t>(turns));
  for (int t = 1; t <= turns; ++t) {
    TurnRecord rec;
    rec.turn = t;
    for (int i = 0; i < prefmodel::kBaseIndicatorCount; ++i) {
      const auto ind = static_cast<Indicator>(i);
      rec[ind] = value(ind, t);
    }
    log.turns.push_back(rec);
  }
  return prefmodel::derive_cumulatives(std::move(log));
}

// Two mutually linked logs of equal length.
inline std::pair<MatchLog, MatchLog> make_linked_pair(
    const std::string& stem, int turns,
    const std::function<double(Indicator, int)>& value_a =
        [](Indicator, int) { return 0.0; },
    const std::function<double(Indicator, int)>& value_b =
        [](Indicator, int) { return 0.0; },
    PreferenceVector pref_a = {}, PreferenceVector pref_b = {}) {
  MatchLog a = make_log(stem + "_a", "agent_a", turns, value_a, pref_a);
  MatchLog b = make_log(stem + "_b", "agent_b", turns, value_b, pref_b);
  a.opponent_match_id = b.match_id;
  b.opponent_match_id = a.match_id;
  return {std::move(a), std::move(b)};
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto candidate = base / ("prefmodel_test_" + std::to_string(rd()));
      if (std::filesystem::create_directory(candidate)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create scratch directory");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
