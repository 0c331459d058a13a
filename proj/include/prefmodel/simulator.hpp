#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefmodel/telemetry.hpp"

namespace prefmodel {

// y = base + slope * t plus N(0, sigma^2) per turn.
struct LineDynamics {
  double base = 0.0;
  double slope = 0.0;
  double sigma = 0.0;
};

// Two linear phases joined at a breakpoint turn. slope2_sigma, when nonzero,
// jitters the second-phase slope once per match.
struct TwoSegmentDynamics {
  double base = 0.0;
  double slope1 = 0.0;
  double slope2 = 0.0;
  double breakpoint = 0.0;
  double sigma = 0.0;
  double slope2_sigma = 0.0;
};

// Linear at root scale, stored as the power-th power: (base + slope*t)^power.
struct RootedDynamics {
  double base = 0.0;
  double slope = 0.0;
  double sigma = 0.0;  // at root scale
  int power = 1;
};

struct AgentSpec {
  std::string agent_id;
  PreferenceVector preference;
  std::uint64_t seed = 0;

  RootedDynamics culture;       // power 5
  RootedDynamics culture_rate;  // power 4
  TwoSegmentDynamics cities;    // breakpoint 220
  TwoSegmentDynamics land;      // breakpoint 200
  TwoSegmentDynamics plots;     // breakpoint 200
  TwoSegmentDynamics gold;      // agent-specific breakpoint, jittered phase 2
  LineDynamics gold_rate;
  LineDynamics population;
  LineDynamics techs;
  LineDynamics research_rate;
  LineDynamics units;
  LineDynamics power;
  LineDynamics economy;
  LineDynamics industry;
  LineDynamics agriculture;
  LineDynamics maintenance;

  double war_appetite = 0.0;       // adds to the per-turn war-start rate
  double war_restraint = 0.0;      // subtracts from it
  double religion_strength = 0.0;  // drives StateReligionDiff
};

// Instantiates dynamics from the preference levels. Slopes of governed
// indicators increase strictly with the governing level; Gold and GoldRate
// curves vary with the agent hash, not the Gold level, so Gold stays hard
// to separate by design.
AgentSpec make_agent(const PreferenceVector& preference, std::uint64_t seed);

inline constexpr int kMinTurns = 240;
inline constexpr int kMaxTurns = 460;

// One match between two agents: paired logs of equal length, shared war
// timeline, outcome fields filled. Deterministic given (specs, turns, seed).
std::pair<MatchLog, MatchLog> simulate_match(const AgentSpec& a,
                                             const AgentSpec& b, int turns,
                                             std::uint64_t seed,
                                             const std::string& tag = "m000",
                                             bool relax_turn_bounds = false);

// Round-robin: games_per_pair matches per unordered agent pair, match
// lengths drawn uniformly from [240, 460]. Returns two logs per match.
std::vector<MatchLog> generate_dataset(const std::vector<AgentSpec>& roster,
                                       int games_per_pair, std::uint64_t seed,
                                       int jobs = 1);

// Six fixed agents covering every preference with both present and absent
// levels; `alternative_roster` uses disjoint agent ids and level mixes.
std::vector<AgentSpec> default_roster(std::uint64_t seed);
std::vector<AgentSpec> alternative_roster(std::uint64_t seed);

// Roster config: JSON list of {agent_id, preference levels, seed}.
std::string roster_to_json(const std::vector<AgentSpec>& roster);
std::vector<AgentSpec> roster_from_json(const std::string& text);

// The end-of-match code: the winner's dominant preference (1..6, 0 if all
// levels are zero), positive for the winner, negated for the loser.
int dominant_preference_code(const PreferenceVector& preference);

}  // namespace prefmodel
