// dwpp: command-line front end for the path-tracking experiments.
//
//   dwpp compare       --config experiment_table1 --out out/
//   dwpp sweep         --config simulation_table6 --out out_sweep/
//   dwpp simulate      --controller DWPP --path C [--lookahead 0.6] [--out traj.csv]
//   dwpp check-optimal --v-lo 0.2 --v-hi 0.5 --w-lo -1 --w-hi 1 --kappa 10

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "dwpp/controllers.hpp"
#include "dwpp/harness.hpp"
#include "dwpp/metrics.hpp"
#include "dwpp/path_geometry.hpp"
#include "dwpp/simulator.hpp"

namespace {

using namespace dwpp;

int runCompare(const std::string& config_name, const std::string& out_dir,
               std::optional<std::size_t> trials, std::optional<unsigned> jobs) {
  ExperimentConfig cfg = resolveExperimentConfig(config_name);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (trials) cfg.trials = *trials;
  if (jobs) cfg.jobs = *jobs;
  const ComparisonResult result = runComparison(cfg);
  writeSummaryText(result, cfg, std::cout);
  std::cout << "\nwrote " << result.trials.size() << " trajectories and metrics to "
            << cfg.output_dir.string() << "\n";
  return 0;
}

int runSweep(const std::string& config_name, const std::string& out_dir,
             std::optional<unsigned> jobs) {
  SweepConfig sweep = resolveSweepConfig(config_name);
  if (!out_dir.empty()) sweep.base.output_dir = out_dir;
  if (jobs) sweep.base.jobs = *jobs;
  const SweepResult result = runLookaheadSweep(sweep);
  writeSweepCsv(result, std::cout);
  fmt::print("spearman(L, mean_cte) = {:.3f}\nspearman(L, travel_time) = {:.3f}\n",
             result.rank_corr_cte, result.rank_corr_time);
  return 0;
}

int runSimulate(const std::string& config_name, const std::string& controller,
                const std::string& path_name, const std::string& path_csv,
                std::optional<double> lookahead, const std::string& out_file) {
  ExperimentConfig cfg = resolveExperimentConfig(config_name);
  const ControllerKind kind = parseControllerKind(controller);

  std::optional<ReferencePath> path;
  RobotState initial;
  if (!path_csv.empty()) {
    path = readPathCsv(std::filesystem::path(path_csv));
    const Point2D a = (*path)[0];
    const Point2D b = (*path)[1];
    initial.pose = {a.x, a.y, std::atan2(b.y - a.y, b.x - a.x)};
  } else {
    for (const auto& p : cfg.paths) {
      if (p.name == path_name) {
        path = generateCornerPath(p.spec);
        initial.pose = p.spec.start_pose;
      }
    }
    if (!path) {
      throw ConfigError("no path named '" + path_name + "' in the configuration");
    }
  }

  ControllerParams params = cfg.controller;
  if (lookahead) {
    params.lookahead.mode = LookaheadMode::kFixed;
    params.lookahead.fixed = *lookahead;
  }
  ScenarioOptions options;
  options.goal_tolerance = cfg.goal_tolerance;
  options.max_time = cfg.max_time;
  options.obstacle_distance = cfg.obstacle_distance;
  NoiseModel noise = cfg.noise;
  noise.sigma_position = noise.sigma_heading = 0.0;
  noise.seed = cfg.base_seed;

  const ScenarioResult run = runScenario(*path, kind, params,
                                         ExecutionModel{cfg.execution, params.limits}, noise,
                                         initial, options);
  const ScenarioMetrics m = evaluateScenario(run, *path);
  if (out_file.empty() || out_file == "-") {
    writeTrajectoryCsv(run.log, std::cout);
  } else {
    writeTrajectoryCsv(run.log, std::filesystem::path(out_file));
  }
  fmt::print(stderr,
             "{}: violation {:.2f} %, mean cte {:.4f} m, max cte {:.4f} m, travel {:.2f} s, "
             "goal {}\n",
             toString(kind), m.violation_ratio, m.mean_cte, m.max_cte, m.travel_time,
             m.reached_goal ? "reached" : "NOT reached");
  return m.reached_goal ? 0 : 3;
}

int runCheckOptimal(const DynamicWindow& w, double kappa, std::size_t grid) {
  if (w.v_lo > w.v_hi || w.omega_lo > w.omega_hi) {
    throw ParameterError("window bounds must satisfy lo <= hi");
  }
  const VelocityCommand exact = optimalVelocityInWindow(w, kappa);
  const VelocityCommand sampled = sampledVelocityInWindow(w, kappa, grid);
  const double d_exact = distanceToLine(exact, kappa);
  const double d_sampled = distanceToLine(sampled, kappa);
  fmt::print("window     v [{}, {}]  omega [{}, {}]  kappa {}\n", w.v_lo, w.v_hi, w.omega_lo,
             w.omega_hi, kappa);
  fmt::print("closed     v = {:.9f}  omega = {:.9f}  distance = {:.3e}\n", exact.v, exact.omega,
             d_exact);
  fmt::print("grid {}^2 v = {:.9f}  omega = {:.9f}  distance = {:.3e}\n", grid, sampled.v,
             sampled.omega, d_sampled);
  const bool ok = d_exact <= d_sampled + 1e-9;
  fmt::print("closed form {} the grid optimum\n", ok ? "matches or beats" : "is WORSE than");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure pursuit / dynamic window pure pursuit experiment harness"};
  app.require_subcommand(1);

  std::string config = "experiment_table1";
  std::string out_dir;
  std::optional<std::size_t> trials;
  std::optional<unsigned> jobs;

  auto* compare = app.add_subcommand("compare", "Run every controller on every path");
  compare->add_option("--config", config, "Profile name or JSON file")->capture_default_str();
  compare->add_option("--out", out_dir, "Output directory (overrides the config)");
  compare->add_option("--trials", trials, "Trials per (path, controller)");
  compare->add_option("--jobs", jobs, "Worker threads");

  std::string sweep_config = "simulation_table6";
  auto* sweep = app.add_subcommand("sweep", "DWPP lookahead-distance sweep");
  sweep->add_option("--config", sweep_config, "Profile name or JSON file")->capture_default_str();
  sweep->add_option("--out", out_dir, "Output directory (overrides the config)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  std::string controller = "DWPP";
  std::string path_name = "C";
  std::string path_csv;
  std::optional<double> lookahead;
  std::string out_file;
  auto* simulate = app.add_subcommand("simulate", "Run a single scenario, trajectory CSV out");
  simulate->add_option("--config", config, "Profile name or JSON file")->capture_default_str();
  simulate->add_option("--controller", controller, "PP, APP, RPP or DWPP")->capture_default_str();
  simulate->add_option("--path", path_name, "Path name from the config")->capture_default_str();
  simulate->add_option("--path-csv", path_csv, "Reference path CSV (x,y) instead of --path");
  simulate->add_option("--lookahead", lookahead, "Fixed lookahead distance [m]");
  simulate->add_option("--out", out_file, "Trajectory CSV file, '-' for stdout");

  DynamicWindow window;
  double kappa = 0.0;
  std::size_t grid = 201;
  auto* check = app.add_subcommand("check-optimal",
                                   "Closed-form window selection vs. grid search");
  check->add_option("--v-lo", window.v_lo)->required();
  check->add_option("--v-hi", window.v_hi)->required();
  check->add_option("--w-lo", window.omega_lo)->required();
  check->add_option("--w-hi", window.omega_hi)->required();
  check->add_option("--kappa", kappa)->required();
  check->add_option("--grid", grid, "Samples per axis")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) return runCompare(config, out_dir, trials, jobs);
    if (sweep->parsed()) return runSweep(sweep_config, out_dir, jobs);
    if (simulate->parsed()) {
      return runSimulate(config, controller, path_name, path_csv, lookahead, out_file);
    }
    if (check->parsed()) return runCheckOptimal(window, kappa, grid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
