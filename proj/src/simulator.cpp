#include "prefmodel/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace prefmodel {

namespace {

// Interpolation in sqrt(level/5), pinned to the level-2 and level-5 anchors.
double root_interp(double anchor2, double anchor5, int level) {
  const double g2 = std::sqrt(0.4);
  const double g = std::sqrt(level / 5.0);
  return anchor2 + (anchor5 - anchor2) * (g - g2) / (1.0 - g2);
}

// Linear in the level, pinned to the level-2 and level-5 anchors.
double level_interp(double anchor2, double anchor5, int level) {
  return anchor2 + (anchor5 - anchor2) * (level - 2) / 3.0;
}

// Levels below 2 drop toward an explicit floor anchor instead of linearly
// extrapolating the 2..5 segment. Keeps zero-preference culture curves low
// enough that the gap to level 2 survives pooling turns 101..460 together.
double floor_interp(double anchor0, double anchor2, double anchor5,
                    int level) {
  if (level >= 2) return root_interp(anchor2, anchor5, level);
  return anchor0 + (anchor2 - anchor0) * std::sqrt(level / 2.0);
}

}  // namespace

AgentSpec make_agent(const PreferenceVector& preference, std::uint64_t seed) {
  AgentSpec spec;
  spec.preference = preference;
  spec.seed = seed;

  const int cul = preference.level(Preference::culture);
  const int gld = preference.level(Preference::gold);
  const int gro = preference.level(Preference::growth);
  const int mil = preference.level(Preference::military);
  const int rel = preference.level(Preference::religion);
  const int sci = preference.level(Preference::science);

  spec.culture = {floor_interp(1.10, 1.7772, 2.1366, cul),
                  floor_interp(0.0050, 0.0183, 0.0194, cul), 0.05, 5};
  spec.culture_rate = {floor_interp(0.75, 1.0939, 1.3567, cul),
                       floor_interp(0.0025, 0.0096, 0.0101, cul), 0.05, 4};

  spec.cities = {1.0, level_interp(0.0296, 0.03143, gro),
                 level_interp(0.0018, 0.0021, gro), 220.0, 0.6, 0.0};
  spec.land = {40.0, 6.0 + 0.5 * gro, 1.2, 200.0, 60.0, 0.0};
  spec.plots = {60.0, 9.0 + 0.7 * gro, 2.0, 200.0, 80.0, 0.0};
  spec.population = {1.0, 0.06 + 0.02 * gro, 1.5};
  spec.agriculture = {12.0, 0.14 + 0.02 * gro, 5.0};
  spec.economy = {10.0, 0.15 + 0.01 * gro, 6.0};
  spec.maintenance = {1.0, 0.06 + 0.004 * gro, 1.5};

  spec.techs = {0.0, 0.08 + 0.008 * sci, 1.5};
  spec.research_rate = {20.0, 0.30 + 0.04 * sci, 8.0};

  spec.units = {3.0, 0.03 + 0.01 * mil, 1.0};
  spec.power = {1000.0, 15.0 + 6.0 * mil, 150.0};
  spec.industry = {8.0, 0.12 + 0.015 * mil, 5.0};

  // Gold curves depend on the agent identity hash, not the Gold level; the
  // level only widens GoldRate noise. This keeps Gold near-inseparable.
  Rng hash(derive_seed(seed, 0x5eed));
  const double u1 = hash.uniform(), u2 = hash.uniform(),
               u3 = hash.uniform(), u4 = hash.uniform();
  spec.gold = {20.0, 0.8, 3.5 + 2.8 * u1, 300.0 + 40.0 * u2, 20.0, 1.5};
  spec.gold_rate = {-22.0 + 11.0 * u3, 0.33 + 0.06 * u4, 213.0 + 62.0 * gld};

  spec.war_appetite = 0.002 * mil;
  spec.war_restraint = 0.0003 * (cul + rel);
  spec.religion_strength = 0.008 * rel;
  return spec;
}

int dominant_preference_code(const PreferenceVector& preference) {
  static constexpr std::array<Preference, kPreferenceCount> kOrder = {
      Preference::military, Preference::growth, Preference::culture,
      Preference::science,  Preference::gold,   Preference::religion,
  };
  int best = 0;
  for (Preference p : kOrder) best = std::max(best, preference.level(p));
  if (best == 0) return 0;
  for (int i = 0; i < kPreferenceCount; ++i)
    if (preference.level(kOrder[i]) == best) return i + 1;
  return 0;
}

namespace {

double eval_line(const LineDynamics& d, int t, Rng& rng) {
  return d.base + d.slope * t + rng.normal() * d.sigma;
}

double eval_two_segment(const TwoSegmentDynamics& d, int t, Rng& rng,
                        double slope2_jitter) {
  const double phase1 = std::min(static_cast<double>(t), d.breakpoint);
  const double phase2 = std::max(0.0, t - d.breakpoint);
  return d.base + d.slope1 * phase1 + (d.slope2 + slope2_jitter) * phase2 +
         rng.normal() * d.sigma;
}

// Returns the root-scale value (clamped at zero); callers raise it to power.
double eval_root_scale(const RootedDynamics& d, int t, Rng& rng) {
  return std::max(0.0, d.base + d.slope * t + rng.normal() * d.sigma);
}

constexpr double kWarBaseRate = 0.002;
constexpr double kWarEndRate = 0.04;
constexpr double kSrdSigma = 1.5;
constexpr double kOutcomeSigma = 25.0;
constexpr double kScoreSigma = 5.0;

struct AgentTurn {
  double gold2_jitter = 0.0;
  Rng rng{0};
};

void fill_turn(TurnRecord& rec, const AgentSpec& spec, int t, AgentTurn& st) {
  const auto clamped = [](double v) { return std::max(0.0, v); };
  rec.turn = t;
  rec[Indicator::cities] =
      clamped(eval_two_segment(spec.cities, t, st.rng, 0.0));
  rec[Indicator::units] = clamped(eval_line(spec.units, t, st.rng));
  rec[Indicator::population] =
      clamped(eval_line(spec.population, t, st.rng));
  rec[Indicator::gold] =
      clamped(eval_two_segment(spec.gold, t, st.rng, st.gold2_jitter));
  rec[Indicator::land] = clamped(eval_two_segment(spec.land, t, st.rng, 0.0));
  rec[Indicator::plots] =
      clamped(eval_two_segment(spec.plots, t, st.rng, 0.0));
  rec[Indicator::techs] = clamped(eval_line(spec.techs, t, st.rng));
  rec[Indicator::economy] = clamped(eval_line(spec.economy, t, st.rng));
  rec[Indicator::industry] = clamped(eval_line(spec.industry, t, st.rng));
  rec[Indicator::agriculture] =
      clamped(eval_line(spec.agriculture, t, st.rng));
  rec[Indicator::power] = clamped(eval_line(spec.power, t, st.rng));
  const double culture_root = eval_root_scale(spec.culture, t, st.rng);
  rec[Indicator::culture] = std::pow(culture_root, spec.culture.power);
  rec[Indicator::maintenance] =
      clamped(eval_line(spec.maintenance, t, st.rng));
  rec[Indicator::gold_rate] = eval_line(spec.gold_rate, t, st.rng);
  rec[Indicator::research_rate] =
      clamped(eval_line(spec.research_rate, t, st.rng));
  rec[Indicator::culture_rate] = std::pow(
      eval_root_scale(spec.culture_rate, t, st.rng), spec.culture_rate.power);
  rec[Indicator::score] =
      clamped(10.0 * rec[Indicator::cities] +
              3.0 * rec[Indicator::population] + 0.2 * rec[Indicator::land] +
              5.0 * rec[Indicator::techs] + 2.0 * culture_root +
              st.rng.normal() * kScoreSigma);
}

}  // namespace

std::pair<MatchLog, MatchLog> simulate_match(const AgentSpec& a,
                                             const AgentSpec& b, int turns,
                                             std::uint64_t seed,
                                             const std::string& tag,
                                             bool relax_turn_bounds) {
  if (a.agent_id.empty() || b.agent_id.empty())
    throw DomainError("agents need ids before simulation");
  if (a.agent_id == b.agent_id)
    throw DomainError("agents must have distinct ids: " + a.agent_id);
  if (!relax_turn_bounds && (turns < kMinTurns || turns > kMaxTurns))
    throw DomainError("turn count " + std::to_string(turns) +
                      " outside [" + std::to_string(kMinTurns) + ", " +
                      std::to_string(kMaxTurns) + "]");
  if (turns < 6) throw DomainError("need at least 6 turns");

  Rng shared(derive_seed(seed, 0));
  AgentTurn sa{0.0, Rng(derive_seed(seed, 1))};
  AgentTurn sb{0.0, Rng(derive_seed(seed, 2))};
  Rng outcome_rng(derive_seed(seed, 3));
  sa.gold2_jitter = sa.rng.normal() * a.gold.slope2_sigma;
  sb.gold2_jitter = sb.rng.normal() * b.gold.slope2_sigma;

  const double war_start =
      std::clamp(kWarBaseRate + a.war_appetite + b.war_appetite -
                     a.war_restraint - b.war_restraint,
                 0.0005, 0.08);
  const int mil_a = a.preference.level(Preference::military);
  const int mil_b = b.preference.level(Preference::military);

  MatchLog log_a, log_b;
  log_a.turns.resize(turns);
  log_b.turns.resize(turns);
  bool at_war = false;
  bool saw_war = false;
  for (int t = 1; t <= turns; ++t) {
    const double u = shared.uniform();
    bool a_declares = false, b_declares = false;
    if (!at_war) {
      if (u < war_start) {
        at_war = true;
        saw_war = true;
        bool a_aggressor;
        if (mil_a != mil_b)
          a_aggressor = mil_a > mil_b;
        else
          a_aggressor = shared.uniform() < 0.5;
        a_declares = a_aggressor;
        b_declares = !a_aggressor;
      }
    } else if (u < kWarEndRate) {
      at_war = false;
    }
    const double srd = (a.religion_strength - b.religion_strength) * t +
                       shared.normal() * kSrdSigma;

    TurnRecord& ra = log_a.turns[t - 1];
    TurnRecord& rb = log_b.turns[t - 1];
    fill_turn(ra, a, t, sa);
    fill_turn(rb, b, t, sb);
    ra[Indicator::war] = rb[Indicator::war] = at_war ? 1.0 : 0.0;
    ra[Indicator::declared_war] = a_declares ? 1.0 : 0.0;
    rb[Indicator::declared_war] = b_declares ? 1.0 : 0.0;
    ra[Indicator::state_religion_diff] = srd;
    rb[Indicator::state_religion_diff] = -srd;
  }

  const double margin =
      log_a.turns.back()[Indicator::score] -
      log_b.turns.back()[Indicator::score] + outcome_rng.normal() * kOutcomeSigma;
  const bool a_wins = margin >= 0.0;
  const int code = dominant_preference_code(
      a_wins ? a.preference : b.preference);

  log_a.match_id = tag + "_" + a.agent_id;
  log_b.match_id = tag + "_" + b.agent_id;
  log_a.opponent_match_id = log_b.match_id;
  log_b.opponent_match_id = log_a.match_id;
  log_a.agent_id = a.agent_id;
  log_b.agent_id = b.agent_id;
  log_a.preference = a.preference;
  log_b.preference = b.preference;
  log_a.outcome = a_wins ? "victory" : "defeat";
  log_b.outcome = a_wins ? "defeat" : "victory";
  log_a.victory_type = a_wins ? code : -code;
  log_b.victory_type = a_wins ? -code : code;
  log_a.peace = log_b.peace = saw_war ? 0 : 1;

  log_a = derive_cumulatives(std::move(log_a));
  log_b = derive_cumulatives(std::move(log_b));
  return {std::move(log_a), std::move(log_b)};
}

std::vector<MatchLog> generate_dataset(const std::vector<AgentSpec>& roster,
                                       int games_per_pair, std::uint64_t seed,
                                       int jobs) {
  if (roster.size() < 2) throw DomainError("roster needs at least 2 agents");
  if (games_per_pair < 1)
    throw DomainError("games_per_pair must be positive");
  std::set<std::string> ids;
  for (const AgentSpec& spec : roster) {
    if (spec.agent_id.empty()) throw DomainError("agent without id in roster");
    if (!ids.insert(spec.agent_id).second)
      throw StructureError("duplicate agent id: " + spec.agent_id);
  }

  struct Job {
    std::size_t a, b;
    int turns;
    std::uint64_t seed;
    std::string tag;
  };
  std::vector<Job> schedule;
  Rng master(derive_seed(seed, 0x4d53));
  const std::uint64_t match_ns = derive_seed(seed, 0x4d41);
  char tag[16];
  for (std::size_t i = 0; i < roster.size(); ++i)
    for (std::size_t j = i + 1; j < roster.size(); ++j)
      for (int g = 0; g < games_per_pair; ++g) {
        const std::size_t idx = schedule.size();
        const int turns =
            kMinTurns + static_cast<int>(master.below(kMaxTurns - kMinTurns + 1));
        std::snprintf(tag, sizeof(tag), "g%03zu", idx);
        schedule.push_back({i, j, turns, derive_seed(match_ns, idx), tag});
      }

  std::vector<std::pair<MatchLog, MatchLog>> played(schedule.size());
  parallel_for(schedule.size(), jobs, [&](std::size_t idx) {
    const Job& job = schedule[idx];
    played[idx] = simulate_match(roster[job.a], roster[job.b], job.turns,
                                 job.seed, job.tag);
  });

  std::vector<MatchLog> logs;
  logs.reserve(2 * played.size());
  for (auto& [la, lb] : played) {
    logs.push_back(std::move(la));
    logs.push_back(std::move(lb));
  }
  return logs;
}

namespace {

std::vector<AgentSpec> build_roster(
    const std::vector<std::pair<std::string, PreferenceVector>>& table,
    std::uint64_t seed, std::uint64_t lane) {
  std::vector<AgentSpec> roster;
  for (std::size_t i = 0; i < table.size(); ++i) {
    AgentSpec spec =
        make_agent(table[i].second, derive_seed(seed, lane + i));
    spec.agent_id = table[i].first;
    roster.push_back(std::move(spec));
  }
  return roster;
}

}  // namespace

std::vector<AgentSpec> default_roster(std::uint64_t seed) {
  // Levels per agent: culture, gold, growth, military, religion, science.
  return build_roster(
      {
          {"alexander", PreferenceVector(2, 0, 5, 2, 0, 0)},
          {"hatshepsut", PreferenceVector(5, 2, 2, 0, 5, 0)},
          {"louis", PreferenceVector(5, 5, 0, 0, 2, 2)},
          {"gandhi", PreferenceVector(0, 0, 0, 0, 5, 5)},
          {"caesar", PreferenceVector(0, 2, 0, 5, 0, 2)},
          {"mansa", PreferenceVector(0, 0, 0, 0, 0, 0)},
      },
      seed, 100);
}

std::vector<AgentSpec> alternative_roster(std::uint64_t seed) {
  return build_roster(
      {
          {"victoria", PreferenceVector(2, 5, 2, 0, 0, 5)},
          {"napoleon", PreferenceVector(0, 0, 0, 5, 0, 0)},
          {"saladin", PreferenceVector(0, 2, 0, 2, 5, 0)},
          {"bismarck", PreferenceVector(0, 0, 5, 5, 0, 2)},
          {"catherine", PreferenceVector(5, 2, 2, 0, 2, 0)},
          {"tokugawa", PreferenceVector(2, 0, 0, 0, 2, 2)},
      },
      seed, 200);
}

std::string roster_to_json(const std::vector<AgentSpec>& roster) {
  nlohmann::json arr = nlohmann::json::array();
  for (const AgentSpec& spec : roster) {
    nlohmann::json pref;
    for (Preference p : kAllPreferences)
      pref[to_string(p)] = spec.preference.level(p);
    arr.push_back({{"agent_id", spec.agent_id},
                   {"seed", spec.seed},
                   {"preference", std::move(pref)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<AgentSpec> roster_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad roster JSON: ") + e.what());
  }
  if (!arr.is_array()) throw SchemaError("roster JSON must be an array");
  std::vector<AgentSpec> roster;
  for (const auto& entry : arr) {
    if (!entry.contains("agent_id") || !entry.contains("preference"))
      throw SchemaError("roster entry needs agent_id and preference");
    PreferenceVector pref;
    for (Preference p : kAllPreferences) {
      const char* name = to_string(p);
      if (!entry["preference"].contains(name))
        throw SchemaError(std::string("roster preference missing ") + name);
      pref.set_level(p, entry["preference"][name].get<int>());
    }
    AgentSpec spec =
        make_agent(pref, entry.value("seed", std::uint64_t{0}));
    spec.agent_id = entry["agent_id"].get<std::string>();
    roster.push_back(std::move(spec));
  }
  return roster;
}

}  // namespace prefmodel
