#pragma once

#include <span>
#include <utility>

#include "dwpp/path_geometry.hpp"
#include "dwpp/simulator.hpp"

namespace dwpp {

struct ScenarioMetrics {
  double violation_ratio{0.0};  // [%] of control steps
  double mean_cte{0.0};         // [m]
  double max_cte{0.0};          // [m]
  double travel_time{0.0};      // [s]
  bool reached_goal{false};
};

struct MeanSd {
  double mean{0.0};
  double sd{0.0};
};

struct AggregateMetrics {
  MeanSd violation_ratio;
  MeanSd mean_cte;
  MeanSd max_cte;
  MeanSd travel_time;
  std::size_t trial_count{0};
  std::size_t reached_count{0};
};

// Percentage of logged steps with any violation flag. Throws ParameterError
// on an empty log.
double violationRatio(const TrajectoryLog& log);

struct CrossTrackStats {
  double mean{0.0};
  double max{0.0};
};

// Mean and peak lateral distance over every logged pose.
CrossTrackStats crossTrackStats(const TrajectoryLog& log, const ReferencePath& path);

ScenarioMetrics evaluateScenario(const ScenarioResult& result, const ReferencePath& path);

// Mean and sample standard deviation (n - 1); sd is 0 for a single value.
MeanSd meanAndSd(std::span<const double> values);

AggregateMetrics aggregate(std::span<const ScenarioMetrics> trials);

}  // namespace dwpp
