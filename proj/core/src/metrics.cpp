#include "dwpp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dwpp {

double violationRatio(const TrajectoryLog& log) {
  if (log.empty()) {
    throw ParameterError("violationRatio: empty trajectory log");
  }
  const auto flagged = std::count_if(log.begin(), log.end(),
                                     [](const TrajectorySample& s) { return s.violations.any(); });
  return 100.0 * static_cast<double>(flagged) / static_cast<double>(log.size());
}

CrossTrackStats crossTrackStats(const TrajectoryLog& log, const ReferencePath& path) {
  if (log.empty()) {
    throw ParameterError("crossTrackStats: empty trajectory log");
  }
  CrossTrackStats stats;
  double sum = 0.0;
  for (const auto& s : log) {
    const double e = crossTrackError(path, s.state.pose);
    sum += e;
    stats.max = std::max(stats.max, e);
  }
  stats.mean = sum / static_cast<double>(log.size());
  return stats;
}

ScenarioMetrics evaluateScenario(const ScenarioResult& result, const ReferencePath& path) {
  ScenarioMetrics m;
  m.violation_ratio = violationRatio(result.log);
  const CrossTrackStats cte = crossTrackStats(result.log, path);
  m.mean_cte = cte.mean;
  m.max_cte = cte.max;
  m.travel_time = result.travel_time;
  m.reached_goal = result.reached_goal;
  return m;
}

MeanSd meanAndSd(std::span<const double> values) {
  if (values.empty()) {
    throw ParameterError("meanAndSd: no values");
  }
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double x : values) {
    sum += x;
  }
  MeanSd out;
  out.mean = sum / n;
  if (std::all_of(values.begin(), values.end(), [&](double x) { return x == values[0]; })) {
    out.mean = values[0];  // exact, and sd stays 0
  } else if (values.size() > 1) {
    double ss = 0.0;
    for (double x : values) {
      ss += (x - out.mean) * (x - out.mean);
    }
    out.sd = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

AggregateMetrics aggregate(std::span<const ScenarioMetrics> trials) {
  if (trials.empty()) {
    throw ParameterError("aggregate: no trials");
  }
  auto column = [&](auto member) {
    std::vector<double> v;
    v.reserve(trials.size());
    for (const auto& t : trials) {
      v.push_back(t.*member);
    }
    // Sorting makes the floating-point sums independent of trial order.
    std::sort(v.begin(), v.end());
    return meanAndSd(v);
  };
  AggregateMetrics agg;
  agg.violation_ratio = column(&ScenarioMetrics::violation_ratio);
  agg.mean_cte = column(&ScenarioMetrics::mean_cte);
  agg.max_cte = column(&ScenarioMetrics::max_cte);
  agg.travel_time = column(&ScenarioMetrics::travel_time);
  agg.trial_count = trials.size();
  agg.reached_count = static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.reached_goal; }));
  return agg;
}

}  // namespace dwpp
