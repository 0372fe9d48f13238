#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dwpp/controllers.hpp"
#include "dwpp/metrics.hpp"
#include "dwpp/simulator.hpp"

namespace dwpp {

// Malformed or invalid configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scenario failed; carries the (path, controller, trial) it belongs to.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedPath {
  std::string name;
  CornerPathSpec spec;
};

struct ExperimentConfig {
  ControllerParams controller;
  StabilityConfig stability;
  std::vector<NamedPath> paths;
  std::vector<ControllerKind> controllers;
  std::size_t trials{5};
  std::uint64_t base_seed{1};
  // Pose perturbation is only applied when trials > 1.
  NoiseModel noise{0.0, 0.0, 0.01, 0.01, 0};
  ExecutionMode execution{ExecutionMode::kHardwareClip};
  double goal_tolerance{0.15};
  double max_time{60.0};
  double obstacle_distance{kNoObstacle};
  std::filesystem::path output_dir{"out"};
  unsigned jobs{1};

  void validate() const;
};

struct SweepConfig {
  ExperimentConfig base;
  std::string path_name{"C"};
  std::vector<double> lookahead_values;

  void validate() const;
};

// Built-in profiles. The shipped JSON files under config/ carry the same
// values.
ExperimentConfig experimentTable1Profile();
SweepConfig simulationTable6Profile();

// Missing keys keep the experiment_table1 defaults; unknown keys are rejected.
ExperimentConfig parseExperimentConfig(std::string_view json_text);
ExperimentConfig loadConfig(const std::filesystem::path& file);
SweepConfig parseSweepConfig(std::string_view json_text);
SweepConfig loadSweepConfig(const std::filesystem::path& file);

// Resolves a built-in profile name or a file path.
ExperimentConfig resolveExperimentConfig(const std::string& profile_or_file);
SweepConfig resolveSweepConfig(const std::string& profile_or_file);

struct TrialRecord {
  std::string path;
  ControllerKind controller{ControllerKind::kPP};
  std::size_t trial{0};
  ScenarioMetrics metrics;
};

struct CellSummary {
  std::string path;
  ControllerKind controller{ControllerKind::kPP};
  AggregateMetrics metrics;
};

struct ComparisonResult {
  std::vector<TrialRecord> trials;  // sorted by (path order, controller order, trial)
  std::vector<CellSummary> cells;   // same ordering, one per (path, controller)
  std::vector<std::string> path_order;
  std::vector<ControllerKind> controller_order;

  const CellSummary& cell(std::string_view path, ControllerKind kind) const;
};

struct RunOptions {
  bool write_trajectories{true};
  // When set, receives every trajectory log in the order of ComparisonResult::trials.
  std::vector<TrajectoryLog>* keep_logs{nullptr};
};

// Runs every (path, controller, trial) scenario. Writes trajectories,
// metrics.csv, summary.csv and summary.txt under config.output_dir when it is
// non-empty.
ComparisonResult runComparison(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepRow {
  double lookahead{0.0};
  double mean_cte{0.0};
  double max_cte{0.0};
  double travel_time{0.0};
  std::size_t reached_count{0};
  std::size_t trial_count{0};
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by lookahead
  double rank_corr_cte{0.0};
  double rank_corr_time{0.0};
};

// DWPP with fixed lookahead and no regulation, once per lookahead value.
SweepResult runLookaheadSweep(const SweepConfig& sweep);

// --- reporting -----------------------------------------------------------------

struct StabilityAdvisory {
  ControllerKind controller{ControllerKind::kPP};
  double lookahead{0.0};
  double speed{0.0};
  double required{0.0};
  bool satisfied{true};
};

std::vector<StabilityAdvisory> stabilityAdvisories(const ExperimentConfig& config);

void writeMetricsCsv(const ComparisonResult& result, std::ostream& out);
void writeSummaryCsv(const ComparisonResult& result, std::ostream& out);
void writeSummaryText(const ComparisonResult& result, const ExperimentConfig& config,
                      std::ostream& out);
void writeSweepCsv(const SweepResult& result, std::ostream& out);

// Writes the comparison artefacts into `dir`. Throws ParameterError on empty
// results and std::runtime_error naming the file on I/O failure.
void emitReport(const ComparisonResult& result, const ExperimentConfig& config,
                const std::filesystem::path& dir);

// Spearman rank correlation with average ranks for ties.
double spearmanCorrelation(std::span<const double> x, std::span<const double> y);

std::string trajectoryFileName(std::string_view path, ControllerKind kind, std::size_t trial);

}  // namespace dwpp
