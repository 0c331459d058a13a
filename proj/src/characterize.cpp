#include "prefmodel/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>

#include "json.hpp"

namespace prefmodel {

std::string to_string(OutcomeSubset subset) {
  switch (subset) {
    case OutcomeSubset::general: return "general";
    case OutcomeSubset::victory: return "victory";
    case OutcomeSubset::defeat: return "defeat";
  }
  throw ContractError("bad subset");
}

OutcomeSubset subset_from_string(const std::string& name) {
  if (name == "general") return OutcomeSubset::general;
  if (name == "victory") return OutcomeSubset::victory;
  if (name == "defeat") return OutcomeSubset::defeat;
  throw DomainError("unknown outcome subset: " + name);
}

std::vector<double> average_by_turn(const std::vector<MatchLog>& logs,
                                    Indicator indicator,
                                    OutcomeSubset subset) {
  std::vector<const MatchLog*> selected;
  for (const MatchLog& log : logs) {
    if (!selected.empty() && log.agent_id != selected.front()->agent_id)
      throw ContractError("logs span more than one agent: " +
                          selected.front()->agent_id + " vs " + log.agent_id);
    if (subset != OutcomeSubset::general) {
      if (!log.outcome) continue;
      const bool won = *log.outcome == "victory";
      if (won != (subset == OutcomeSubset::victory)) continue;
    }
    selected.push_back(&log);
  }
  if (selected.empty())
    throw DomainError("no matches in subset " + to_string(subset));

  int common = std::numeric_limits<int>::max();
  for (const MatchLog* log : selected)
    common = std::min(common, log->turn_count());

  std::vector<double> out(static_cast<std::size_t>(common), 0.0);
  for (const MatchLog* log : selected)
    for (int t = 1; t <= common; ++t)
      out[t - 1] += log->value(indicator, t);
  for (double& v : out) v /= selected.size();
  return out;
}

std::vector<double> transform_root(const std::vector<double>& series, int k) {
  if (k < 2) throw DomainError("root order must be at least 2");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i] < 0.0)
      throw DomainError("negative value at position " + std::to_string(i + 1) +
                        " cannot be root-transformed");
    out[i] = std::pow(series[i], 1.0 / k);
  }
  return out;
}

namespace {

double t_quantile(double confidence, double dof) {
  if (confidence != 0.90 && confidence != 0.95 && confidence != 0.99)
    throw DomainError("confidence must be 0.90, 0.95 or 0.99");
  boost::math::students_t_distribution<double> dist(dof);
  return boost::math::quantile(dist, 0.5 + confidence / 2.0);
}

}  // namespace

RegressionFit ols_fit(const std::vector<double>& x,
                      const std::vector<double>& y, double confidence) {
  if (x.size() != y.size())
    throw ContractError("x and y lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("need at least 3 points, have " +
                               std::to_string(n));

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("constant x: design is rank deficient");

  RegressionFit fit;
  fit.n = n;
  fit.confidence = confidence;
  fit.b1 = sxy / sxx;
  fit.b0 = my - fit.b1 * mx;

  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - (fit.b0 + fit.b1 * x[i]);
    sse += resid * resid;
    sst += (y[i] - my) * (y[i] - my);
  }
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
  fit.residual_variance = sse / (n - 2);
  fit.se_b1 = std::sqrt(fit.residual_variance / sxx);
  fit.se_b0 =
      std::sqrt(fit.residual_variance * (1.0 / n + mx * mx / sxx));
  const double t = t_quantile(confidence, static_cast<double>(n - 2));
  fit.ci_b0 = t * fit.se_b0;
  fit.ci_b1 = t * fit.se_b1;
  return fit;
}

std::pair<RegressionFit, RegressionFit> segment_fit(
    const std::vector<double>& x, const std::vector<double>& y,
    double breakpoint, double confidence) {
  if (x.size() != y.size())
    throw ContractError("x and y lengths differ");
  std::vector<double> x1, y1, x2, y2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= breakpoint) {
      x1.push_back(x[i]);
      y1.push_back(y[i]);
    } else {
      x2.push_back(x[i]);
      y2.push_back(y[i]);
    }
  }
  if (x1.size() < 3 || x2.size() < 3)
    throw DomainError("segment at breakpoint " + format_double(breakpoint) +
                      " has fewer than 3 points");
  return {ols_fit(x1, y1, confidence), ols_fit(x2, y2, confidence)};
}

SeparationResult separation_test(const RegressionFit& fit_a,
                                 const RegressionFit& fit_b,
                                 Coefficient coefficient, double confidence) {
  if (fit_a.confidence != confidence || fit_b.confidence != confidence)
    throw ContractError("fits were not computed at the stated confidence");

  const double ea = coefficient == Coefficient::b0 ? fit_a.b0 : fit_a.b1;
  const double eb = coefficient == Coefficient::b0 ? fit_b.b0 : fit_b.b1;
  const double ha = coefficient == Coefficient::b0 ? fit_a.ci_b0 : fit_a.ci_b1;
  const double hb = coefficient == Coefficient::b0 ? fit_b.ci_b0 : fit_b.ci_b1;
  const double sa = coefficient == Coefficient::b0 ? fit_a.se_b0 : fit_a.se_b1;
  const double sb = coefficient == Coefficient::b0 ? fit_b.se_b0 : fit_b.se_b1;

  SeparationResult res;
  // Distance between the nearest interval endpoints; negative means overlap.
  res.gap = std::abs(ea - eb) - (ha + hb);
  res.separated = res.gap > 0.0;

  const double var = sa * sa + sb * sb;
  if (var > 0.0) {
    res.t_statistic = std::abs(ea - eb) / std::sqrt(var);
    const double num = var * var;
    const double den = (sa * sa * sa * sa) / (fit_a.n - 2) +
                       (sb * sb * sb * sb) / (fit_b.n - 2);
    res.degrees_freedom = den > 0.0 ? num / den : 1.0;
    boost::math::students_t_distribution<double> dist(res.degrees_freedom);
    res.p_value = 2.0 * boost::math::cdf(
                            boost::math::complement(dist, res.t_statistic));
  } else {
    res.t_statistic = ea == eb ? 0.0
                               : std::numeric_limits<double>::infinity();
    res.degrees_freedom = 0.0;
    res.p_value = ea == eb ? 1.0 : 0.0;
  }
  return res;
}

namespace {

std::string interval_label(std::size_t first, std::size_t last) {
  return std::to_string(first) + ":" + std::to_string(last);
}

}  // namespace

CharacterizationReport compare_agents(const std::vector<MatchLog>& logs_a,
                                      const std::vector<MatchLog>& logs_b,
                                      Indicator indicator, int root,
                                      OutcomeSubset subset,
                                      std::optional<double> breakpoint,
                                      double confidence) {
  if (logs_a.empty() || logs_b.empty())
    throw DomainError("each agent needs at least one log");

  CharacterizationReport report;
  report.indicator = indicator_label(indicator);
  report.root = root;
  report.subset = to_string(subset);
  report.agent_a = logs_a.front().agent_id;
  report.agent_b = logs_b.front().agent_id;
  report.confidence = confidence;

  const auto prepare = [&](const std::vector<MatchLog>& logs) {
    std::vector<double> y = average_by_turn(logs, indicator, subset);
    if (root >= 2) y = transform_root(y, root);
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(i + 1);
    return std::make_pair(std::move(x), std::move(y));
  };
  auto [xa, ya] = prepare(logs_a);
  auto [xb, yb] = prepare(logs_b);

  const auto compare_interval = [&](const RegressionFit& fa,
                                    const RegressionFit& fb,
                                    const std::string& label) {
    IntervalComparison cmp;
    cmp.interval = label;
    cmp.fit_a = fa;
    cmp.fit_b = fb;
    cmp.sep_b0 = separation_test(fa, fb, Coefficient::b0, confidence);
    cmp.sep_b1 = separation_test(fa, fb, Coefficient::b1, confidence);
    report.intervals.push_back(std::move(cmp));
  };

  if (breakpoint) {
    auto [a1, a2] = segment_fit(xa, ya, *breakpoint, confidence);
    auto [b1, b2] = segment_fit(xb, yb, *breakpoint, confidence);
    const auto bp = static_cast<std::size_t>(*breakpoint);
    compare_interval(a1, b1, interval_label(1, bp));
    compare_interval(
        a2, b2, interval_label(bp + 1, std::max(xa.size(), xb.size())));
  } else {
    compare_interval(ols_fit(xa, ya, confidence),
                     ols_fit(xb, yb, confidence),
                     interval_label(1, std::max(xa.size(), xb.size())));
  }
  return report;
}

std::vector<CharacterizationRow> report_rows(
    const CharacterizationReport& report) {
  std::vector<CharacterizationRow> rows;
  for (const IntervalComparison& cmp : report.intervals) {
    for (const auto& [agent, fit] :
         {std::make_pair(report.agent_a, cmp.fit_a),
          std::make_pair(report.agent_b, cmp.fit_b)}) {
      CharacterizationRow row;
      row.indicator = report.indicator;
      row.agent = agent;
      row.interval = cmp.interval;
      row.subset = report.subset;
      row.fit = fit;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_characterization_csv(std::ostream& out,
                                const std::vector<CharacterizationRow>& rows) {
  out << "indicator,agent,interval,subset,r_squared,b0,b0_hw,b1,b1_hw,"
         "confidence\n";
  for (const CharacterizationRow& row : rows)
    out << row.indicator << ',' << row.agent << ',' << row.interval << ','
        << row.subset << ',' << format_double(row.fit.r_squared) << ','
        << format_double(row.fit.b0) << ',' << format_double(row.fit.ci_b0)
        << ',' << format_double(row.fit.b1) << ','
        << format_double(row.fit.ci_b1) << ','
        << format_double(row.fit.confidence) << '\n';
}

namespace {

nlohmann::json fit_to_json(const RegressionFit& fit) {
  return {{"b0", fit.b0},
          {"b1", fit.b1},
          {"r_squared", fit.r_squared},
          {"b0_halfwidth", fit.ci_b0},
          {"b1_halfwidth", fit.ci_b1},
          {"confidence", fit.confidence},
          {"n", fit.n}};
}

nlohmann::json sep_to_json(const SeparationResult& sep) {
  return {{"verdict", sep.separated ? "separated" : "overlapping"},
          {"gap", sep.gap},
          {"t_statistic", sep.t_statistic},
          {"degrees_freedom", sep.degrees_freedom},
          {"p_value", sep.p_value}};
}

}  // namespace

std::string characterization_to_json(const CharacterizationReport& report) {
  nlohmann::json j;
  j["indicator"] = report.indicator;
  j["root"] = report.root;
  j["subset"] = report.subset;
  j["agent_a"] = report.agent_a;
  j["agent_b"] = report.agent_b;
  j["confidence"] = report.confidence;
  nlohmann::json intervals = nlohmann::json::array();
  for (const IntervalComparison& cmp : report.intervals) {
    nlohmann::json c;
    c["interval"] = cmp.interval;
    c["fit_a"] = fit_to_json(cmp.fit_a);
    c["fit_b"] = fit_to_json(cmp.fit_b);
    c["b0"] = sep_to_json(cmp.sep_b0);
    c["b1"] = sep_to_json(cmp.sep_b1);
    intervals.push_back(std::move(c));
  }
  j["intervals"] = std::move(intervals);
  return j.dump(2) + "\n";
}

}  // namespace prefmodel
