#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prefmodel/telemetry.hpp"

namespace prefmodel {

enum class OutcomeSubset { general, victory, defeat };

std::string to_string(OutcomeSubset subset);
OutcomeSubset subset_from_string(const std::string& name);

// Mean of the indicator at each turn across the selected matches, covering
// the turns present in every selected match. Index 0 holds turn 1.
std::vector<double> average_by_turn(const std::vector<MatchLog>& logs,
                                    Indicator indicator,
                                    OutcomeSubset subset);

// Elementwise k-th root, k >= 2.
std::vector<double> transform_root(const std::vector<double>& series, int k);

struct RegressionFit {
  double b0 = 0.0;
  double b1 = 0.0;
  double r_squared = 0.0;
  double ci_b0 = 0.0;  // half-width
  double ci_b1 = 0.0;  // half-width
  double confidence = 0.0;
  double residual_variance = 0.0;
  double se_b0 = 0.0;
  double se_b1 = 0.0;
  std::size_t n = 0;
};

// Least squares y = b0 + b1 x with Student-t confidence intervals on both
// coefficients (n - 2 degrees of freedom). confidence must be one of
// 0.90, 0.95, 0.99.
RegressionFit ols_fit(const std::vector<double>& x,
                      const std::vector<double>& y, double confidence);

// Independent fits on x <= breakpoint and x > breakpoint.
std::pair<RegressionFit, RegressionFit> segment_fit(
    const std::vector<double>& x, const std::vector<double>& y,
    double breakpoint, double confidence);

enum class Coefficient { b0, b1 };

struct SeparationResult {
  bool separated = false;  // confidence intervals disjoint
  double gap = 0.0;        // > 0 distance between intervals, < 0 overlap depth
  double t_statistic = 0.0;
  double degrees_freedom = 0.0;
  double p_value = 1.0;
};

// Primary criterion: disjoint confidence intervals. A Welch-style two-sample
// statistic on the coefficient estimates is reported alongside.
SeparationResult separation_test(const RegressionFit& fit_a,
                                 const RegressionFit& fit_b,
                                 Coefficient coefficient, double confidence);

struct CharacterizationRow {
  std::string indicator;
  std::string agent;
  std::string interval;  // "first:last" in turns
  std::string subset;
  RegressionFit fit;
};

struct IntervalComparison {
  std::string interval;
  RegressionFit fit_a;
  RegressionFit fit_b;
  SeparationResult sep_b0;
  SeparationResult sep_b1;
};

struct CharacterizationReport {
  std::string indicator;
  int root = 1;  // 1 = no transform
  std::string subset;
  std::string agent_a;
  std::string agent_b;
  double confidence = 0.0;
  std::vector<IntervalComparison> intervals;
};

// Per-turn average -> optional root transform -> (piecewise) fit per agent,
// plus coefficient separation per interval. All logs in `logs_a` must come
// from one agent, likewise `logs_b`.
CharacterizationReport compare_agents(const std::vector<MatchLog>& logs_a,
                                      const std::vector<MatchLog>& logs_b,
                                      Indicator indicator, int root,
                                      OutcomeSubset subset,
                                      std::optional<double> breakpoint,
                                      double confidence);

std::vector<CharacterizationRow> report_rows(
    const CharacterizationReport& report);

void write_characterization_csv(std::ostream& out,
                                const std::vector<CharacterizationRow>& rows);

std::string characterization_to_json(const CharacterizationReport& report);

}  // namespace prefmodel
