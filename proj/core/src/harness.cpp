#include "dwpp/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace dwpp {

namespace {

using nlohmann::json;

// --- JSON reading helpers --------------------------------------------------

class Reader {
 public:
  Reader(const json& node, std::string prefix) : node_(node), prefix_(std::move(prefix)) {
    if (!node_.is_object()) {
      throw ConfigError(where("") + ": expected an object");
    }
  }

  void allowOnly(std::initializer_list<std::string_view> keys) const {
    for (const auto& item : node_.items()) {
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        throw ConfigError("unknown key '" + where(item.key()) + "'");
      }
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  void number(const std::string& key, double& out) const {
    if (!has(key)) {
      return;
    }
    const json& v = node_.at(key);
    if (!v.is_number()) {
      throw ConfigError("'" + where(key) + "' must be a number");
    }
    out = v.get<double>();
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) const {
    if (!has(key)) {
      return;
    }
    const json& v = node_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("'" + where(key) + "' must be a non-negative integer");
    }
    out = static_cast<Int>(v.get<unsigned long long>());
  }

  void boolean(const std::string& key, bool& out) const {
    if (!has(key)) {
      return;
    }
    const json& v = node_.at(key);
    if (!v.is_boolean()) {
      throw ConfigError("'" + where(key) + "' must be true or false");
    }
    out = v.get<bool>();
  }

  void string(const std::string& key, std::string& out) const {
    if (!has(key)) {
      return;
    }
    const json& v = node_.at(key);
    if (!v.is_string()) {
      throw ConfigError("'" + where(key) + "' must be a string");
    }
    out = v.get<std::string>();
  }

  Reader child(const std::string& key) const { return Reader(node_.at(key), where(key)); }

  const json& at(const std::string& key) const { return node_.at(key); }

  std::string where(const std::string& key) const {
    if (prefix_.empty()) {
      return key;
    }
    return key.empty() ? prefix_ : prefix_ + "." + key;
  }

 private:
  const json& node_;
  std::string prefix_;
};

void readLimits(const Reader& r, KinodynamicLimits& l) {
  r.allowOnly({"v_max", "v_min", "omega_max", "omega_min", "a_acc_max", "a_dcc_max",
               "alpha_acc_max", "alpha_dcc_max", "dt"});
  r.number("v_max", l.v_max);
  r.number("v_min", l.v_min);
  r.number("omega_max", l.omega_max);
  r.number("omega_min", l.omega_min);
  r.number("a_acc_max", l.a_acc_max);
  r.number("a_dcc_max", l.a_dcc_max);
  r.number("alpha_acc_max", l.alpha_acc_max);
  r.number("alpha_dcc_max", l.alpha_dcc_max);
  r.number("dt", l.dt);
}

void readLookahead(const Reader& r, LookaheadConfig& c) {
  r.allowOnly({"mode", "fixed", "min", "max", "time_gain"});
  std::string mode;
  r.string("mode", mode);
  if (mode == "fixed") {
    c.mode = LookaheadMode::kFixed;
  } else if (mode == "velocity_scaled") {
    c.mode = LookaheadMode::kVelocityScaled;
  } else if (!mode.empty()) {
    throw ConfigError("'" + r.where("mode") + "' must be \"fixed\" or \"velocity_scaled\"");
  }
  r.number("fixed", c.fixed);
  r.number("min", c.min);
  r.number("max", c.max);
  r.number("time_gain", c.time_gain);
}

void readRegulation(const Reader& r, RegulationConfig& c) {
  r.allowOnly({"enable_curvature", "r_min", "enable_proximity", "d_prox", "proximity_gain",
               "enable_goal", "d_goal", "v_reg_min", "v_goal_min", "combination"});
  r.boolean("enable_curvature", c.enable_curvature);
  r.number("r_min", c.r_min);
  r.boolean("enable_proximity", c.enable_proximity);
  r.number("d_prox", c.d_prox);
  r.number("proximity_gain", c.proximity_gain);
  r.boolean("enable_goal", c.enable_goal);
  r.number("d_goal", c.d_goal);
  r.number("v_reg_min", c.v_reg_min);
  r.number("v_goal_min", c.v_goal_min);
  std::string mode;
  r.string("combination", mode);
  if (mode == "lower_bound") {
    c.combination = CombinationMode::kLowerBound;
  } else if (mode == "paper_literal") {
    c.combination = CombinationMode::kLiteral;
  } else if (!mode.empty()) {
    throw ConfigError("'" + r.where("combination") +
                      "' must be \"lower_bound\" or \"paper_literal\"");
  }
}

void readStability(const Reader& r, StabilityConfig& c) {
  r.allowOnly({"steering_time_constant", "min_nondim_lookahead"});
  r.number("steering_time_constant", c.steering_time_constant);
  r.number("min_nondim_lookahead", c.min_nondim_lookahead);
}

void readNoise(const Reader& r, NoiseModel& n) {
  r.allowOnly({"sigma_v", "sigma_omega", "sigma_position", "sigma_heading"});
  r.number("sigma_v", n.sigma_v);
  r.number("sigma_omega", n.sigma_omega);
  r.number("sigma_position", n.sigma_position);
  r.number("sigma_heading", n.sigma_heading);
}

NamedPath readPath(const Reader& r) {
  r.allowOnly({"name", "segment_length", "corner_angle_deg", "waypoint_spacing", "start"});
  NamedPath p;
  r.string("name", p.name);
  if (p.name.empty()) {
    throw ConfigError("'" + r.where("name") + "' is required");
  }
  r.number("segment_length", p.spec.segment_length);
  double angle_deg = 0.0;
  if (!r.has("corner_angle_deg")) {
    throw ConfigError("'" + r.where("corner_angle_deg") + "' is required");
  }
  r.number("corner_angle_deg", angle_deg);
  p.spec.corner_angle = degToRad(angle_deg);
  r.number("waypoint_spacing", p.spec.waypoint_spacing);
  if (r.has("start")) {
    const Reader s = r.child("start");
    s.allowOnly({"x", "y", "theta"});
    s.number("x", p.spec.start_pose.x);
    s.number("y", p.spec.start_pose.y);
    s.number("theta", p.spec.start_pose.theta);
  }
  return p;
}

// The "sweep" block is accepted here so one file can drive both commands;
// only parseSweepConfig reads it.
void readExperiment(const Reader& r, ExperimentConfig& cfg) {
  r.allowOnly({"limits", "lookahead", "regulation", "stability", "paths", "controllers", "trials",
               "base_seed", "noise", "execution", "goal_tolerance", "max_time",
               "obstacle_distance", "output_dir", "jobs", "sweep"});
  if (r.has("limits")) readLimits(r.child("limits"), cfg.controller.limits);
  if (r.has("lookahead")) readLookahead(r.child("lookahead"), cfg.controller.lookahead);
  if (r.has("regulation")) readRegulation(r.child("regulation"), cfg.controller.regulation);
  if (r.has("stability")) readStability(r.child("stability"), cfg.stability);
  if (r.has("noise")) readNoise(r.child("noise"), cfg.noise);

  if (r.has("paths")) {
    const json& arr = r.at("paths");
    if (!arr.is_array()) {
      throw ConfigError("'" + r.where("paths") + "' must be an array");
    }
    cfg.paths.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = r.where("paths") + "[" + std::to_string(i) + "]";
      cfg.paths.push_back(readPath(Reader(arr[i], where)));
    }
  }
  if (r.has("controllers")) {
    const json& arr = r.at("controllers");
    if (!arr.is_array()) {
      throw ConfigError("'" + r.where("controllers") + "' must be an array");
    }
    cfg.controllers.clear();
    for (const auto& c : arr) {
      if (!c.is_string()) {
        throw ConfigError("'" + r.where("controllers") + "' entries must be strings");
      }
      try {
        cfg.controllers.push_back(parseControllerKind(c.get<std::string>()));
      } catch (const ParameterError& e) {
        throw ConfigError("'" + r.where("controllers") + "': " + e.what());
      }
    }
  }
  r.integer("trials", cfg.trials);
  r.integer("base_seed", cfg.base_seed);
  r.integer("jobs", cfg.jobs);
  std::string exec;
  r.string("execution", exec);
  if (exec == "hardware_clip") {
    cfg.execution = ExecutionMode::kHardwareClip;
  } else if (exec == "pass_through") {
    cfg.execution = ExecutionMode::kPassThrough;
  } else if (!exec.empty()) {
    throw ConfigError("'execution' must be \"hardware_clip\" or \"pass_through\"");
  }
  r.number("goal_tolerance", cfg.goal_tolerance);
  r.number("max_time", cfg.max_time);
  if (r.has("obstacle_distance") && !r.at("obstacle_distance").is_null()) {
    r.number("obstacle_distance", cfg.obstacle_distance);
  }
  std::string out_dir;
  r.string("output_dir", out_dir);
  if (!out_dir.empty()) {
    cfg.output_dir = out_dir;
  }
}

json parseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

// Rethrows any validation failure as a ConfigError.
template <typename Fn>
void validated(Fn&& fn) {
  try {
    fn();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::string readFile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file " + file.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<NamedPath> standardCornerPaths() {
  std::vector<NamedPath> paths;
  for (auto [name, deg] : {std::pair{"A", 45.0}, std::pair{"B", 90.0}, std::pair{"C", 135.0}}) {
    NamedPath p;
    p.name = name;
    p.spec.segment_length = 3.0;
    p.spec.corner_angle = degToRad(deg);
    p.spec.waypoint_spacing = 0.05;
    paths.push_back(p);
  }
  return paths;
}

RobotState initialStateFor(const CornerPathSpec& spec) {
  RobotState s;
  s.pose = spec.start_pose;
  return s;
}

NoiseModel trialNoise(const ExperimentConfig& cfg, std::size_t trial) {
  NoiseModel n = cfg.noise;
  n.seed = cfg.base_seed + trial;
  if (cfg.trials <= 1) {
    n.sigma_position = 0.0;
    n.sigma_heading = 0.0;
  }
  return n;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first exception
// is rethrown after all workers finish.
template <typename Fn>
void parallelFor(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    const unsigned n = std::min<std::size_t>(jobs, count);
    for (unsigned t = 0; t < n; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

void ensureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

}  // namespace

// --- configuration ---------------------------------------------------------------

void ExperimentConfig::validate() const {
  validated([&] {
    controller.validate();
    stability.validate();
    noise.validate();
    for (const auto& p : paths) {
      generateCornerPath(p.spec);
    }
  });
  if (trials < 1) {
    throw ConfigError("'trials' must be at least 1");
  }
  if (paths.empty()) {
    throw ConfigError("'paths' must not be empty");
  }
  if (controllers.empty()) {
    throw ConfigError("'controllers' must not be empty");
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (paths[i].name == paths[j].name) {
        throw ConfigError("'paths' contains duplicate name '" + paths[i].name + "'");
      }
    }
  }
  if (!(goal_tolerance > 0.0)) {
    throw ConfigError("'goal_tolerance' must be positive");
  }
  if (!(max_time > 0.0)) {
    throw ConfigError("'max_time' must be positive");
  }
  if (!(obstacle_distance >= 0.0)) {
    throw ConfigError("'obstacle_distance' must be non-negative");
  }
}

void SweepConfig::validate() const {
  base.validate();
  if (lookahead_values.empty()) {
    throw ConfigError("'sweep.lookahead_values' must not be empty");
  }
  for (std::size_t i = 0; i < lookahead_values.size(); ++i) {
    if (!(lookahead_values[i] > 0.0)) {
      throw ConfigError("'sweep.lookahead_values' must be positive");
    }
    if (i > 0 && !(lookahead_values[i] > lookahead_values[i - 1])) {
      throw ConfigError("'sweep.lookahead_values' must be strictly increasing");
    }
  }
  const bool found = std::any_of(base.paths.begin(), base.paths.end(),
                                 [&](const NamedPath& p) { return p.name == path_name; });
  if (!found) {
    throw ConfigError("'sweep.path' names unknown path '" + path_name + "'");
  }
}

ExperimentConfig experimentTable1Profile() {
  ExperimentConfig cfg;
  cfg.paths = standardCornerPaths();
  cfg.controllers.assign(kAllControllers.begin(), kAllControllers.end());
  return cfg;
}

SweepConfig simulationTable6Profile() {
  SweepConfig sweep;
  ExperimentConfig& cfg = sweep.base;
  cfg = experimentTable1Profile();
  cfg.controller.limits = {0.26, 0.0, 0.5, -0.5, 0.26, 0.26, 0.5, 0.5, 0.033};
  cfg.controller.lookahead.mode = LookaheadMode::kFixed;
  cfg.controller.regulation.enable_curvature = false;
  cfg.controller.regulation.enable_proximity = false;
  cfg.controller.regulation.enable_goal = false;
  cfg.controllers = {ControllerKind::kDWPP};
  cfg.trials = 1;
  cfg.output_dir = "out_sweep";
  sweep.path_name = "C";
  for (double factor : {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}) {
    sweep.lookahead_values.push_back(std::round(factor * cfg.controller.limits.v_max * 100.0) /
                                     100.0);
  }
  return sweep;
}

ExperimentConfig parseExperimentConfig(std::string_view json_text) {
  const json doc = parseJson(json_text);
  ExperimentConfig cfg = experimentTable1Profile();
  readExperiment(Reader(doc, ""), cfg);
  cfg.validate();
  return cfg;
}

ExperimentConfig loadConfig(const std::filesystem::path& file) {
  return parseExperimentConfig(readFile(file));
}

SweepConfig parseSweepConfig(std::string_view json_text) {
  const json doc = parseJson(json_text);
  SweepConfig sweep;
  sweep.base = experimentTable1Profile();
  const Reader root(doc, "");
  readExperiment(root, sweep.base);
  if (!root.has("sweep")) {
    throw ConfigError("'sweep' block is required for a lookahead sweep");
  }
  const Reader s = root.child("sweep");
  s.allowOnly({"path", "lookahead_values"});
  s.string("path", sweep.path_name);
  if (!s.has("lookahead_values") || !s.at("lookahead_values").is_array()) {
    throw ConfigError("'sweep.lookahead_values' must be an array of numbers");
  }
  for (const auto& v : s.at("lookahead_values")) {
    if (!v.is_number()) {
      throw ConfigError("'sweep.lookahead_values' must be an array of numbers");
    }
    sweep.lookahead_values.push_back(v.get<double>());
  }
  sweep.validate();
  return sweep;
}

SweepConfig loadSweepConfig(const std::filesystem::path& file) {
  return parseSweepConfig(readFile(file));
}

ExperimentConfig resolveExperimentConfig(const std::string& profile_or_file) {
  if (profile_or_file == "experiment_table1") {
    return experimentTable1Profile();
  }
  if (profile_or_file == "simulation_table6") {
    return simulationTable6Profile().base;
  }
  return loadConfig(profile_or_file);
}

SweepConfig resolveSweepConfig(const std::string& profile_or_file) {
  if (profile_or_file == "simulation_table6") {
    return simulationTable6Profile();
  }
  return loadSweepConfig(profile_or_file);
}

// --- orchestration -----------------------------------------------------------------

const CellSummary& ComparisonResult::cell(std::string_view path, ControllerKind kind) const {
  for (const auto& c : cells) {
    if (c.path == path && c.controller == kind) {
      return c;
    }
  }
  throw ParameterError("no results for path '" + std::string(path) + "' and controller " +
                       std::string(toString(kind)));
}

std::string trajectoryFileName(std::string_view path, ControllerKind kind, std::size_t trial) {
  return "path" + std::string(path) + "_" + std::string(toString(kind)) + "_trial" +
         std::to_string(trial) + ".csv";
}

ComparisonResult runComparison(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();

  struct Job {
    std::size_t path_index;
    ControllerKind kind;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < config.paths.size(); ++p) {
    for (auto kind : config.controllers) {
      for (std::size_t t = 0; t < config.trials; ++t) {
        jobs.push_back({p, kind, t});
      }
    }
  }

  std::vector<ReferencePath> paths;
  paths.reserve(config.paths.size());
  for (const auto& p : config.paths) {
    paths.push_back(generateCornerPath(p.spec));
  }

  const bool write = options.write_trajectories && !config.output_dir.empty();
  const std::filesystem::path traj_dir = config.output_dir / "trajectories";
  if (write) {
    ensureDirectory(traj_dir);
  }

  ComparisonResult result;
  result.trials.resize(jobs.size());
  if (options.keep_logs != nullptr) {
    options.keep_logs->assign(jobs.size(), {});
  }

  const ExecutionModel execution{config.execution, config.controller.limits};
  ScenarioOptions scenario;
  scenario.max_time = config.max_time;
  scenario.goal_tolerance = config.goal_tolerance;
  scenario.obstacle_distance = config.obstacle_distance;

  parallelFor(jobs.size(), config.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    const NamedPath& named = config.paths[job.path_index];
    const ReferencePath& path = paths[job.path_index];
    try {
      ScenarioResult run =
          runScenario(path, job.kind, config.controller, execution, trialNoise(config, job.trial),
                      initialStateFor(named.spec), scenario);
      TrialRecord& rec = result.trials[i];
      rec.path = named.name;
      rec.controller = job.kind;
      rec.trial = job.trial;
      rec.metrics = evaluateScenario(run, path);
      if (write) {
        writeTrajectoryCsv(run.log, traj_dir / trajectoryFileName(named.name, job.kind, job.trial));
      }
      if (options.keep_logs != nullptr) {
        (*options.keep_logs)[i] = std::move(run.log);
      }
    } catch (const std::exception& e) {
      throw ScenarioError("path " + named.name + ", controller " +
                          std::string(toString(job.kind)) + ", trial " +
                          std::to_string(job.trial) + ": " + e.what());
    }
  });

  for (const auto& p : config.paths) {
    result.path_order.push_back(p.name);
  }
  result.controller_order = config.controllers;
  for (std::size_t p = 0; p < config.paths.size(); ++p) {
    for (auto kind : config.controllers) {
      std::vector<ScenarioMetrics> cell;
      for (const auto& rec : result.trials) {
        if (rec.path == config.paths[p].name && rec.controller == kind) {
          cell.push_back(rec.metrics);
        }
      }
      result.cells.push_back({config.paths[p].name, kind, aggregate(cell)});
    }
  }

  if (!config.output_dir.empty()) {
    emitReport(result, config, config.output_dir);
  }
  return result;
}

SweepResult runLookaheadSweep(const SweepConfig& sweep) {
  sweep.validate();
  const ExperimentConfig& base = sweep.base;

  const auto it = std::find_if(base.paths.begin(), base.paths.end(),
                               [&](const NamedPath& p) { return p.name == sweep.path_name; });
  const NamedPath& named = *it;
  const ReferencePath path = generateCornerPath(named.spec);

  ControllerParams params = base.controller;
  params.lookahead.mode = LookaheadMode::kFixed;
  params.regulation.enable_curvature = false;
  params.regulation.enable_proximity = false;
  params.regulation.enable_goal = false;

  const ExecutionModel execution{base.execution, params.limits};
  ScenarioOptions scenario;
  scenario.max_time = base.max_time;
  scenario.goal_tolerance = base.goal_tolerance;
  scenario.obstacle_distance = base.obstacle_distance;

  const bool write = !base.output_dir.empty();
  if (write) {
    ensureDirectory(base.output_dir / "trajectories");
  }

  SweepResult result;
  result.rows.resize(sweep.lookahead_values.size());
  parallelFor(sweep.lookahead_values.size(), base.jobs, [&](std::size_t i) {
    const double lookahead = sweep.lookahead_values[i];
    ControllerParams p = params;
    p.lookahead.fixed = lookahead;
    std::vector<ScenarioMetrics> trials;
    for (std::size_t t = 0; t < base.trials; ++t) {
      try {
        ScenarioResult run = runScenario(path, ControllerKind::kDWPP, p, execution,
                                         trialNoise(base, t), initialStateFor(named.spec),
                                         scenario);
        trials.push_back(evaluateScenario(run, path));
        if (write) {
          std::ostringstream name;
          name << "sweep_path" << named.name << "_L" << lookahead << "_trial" << t << ".csv";
          writeTrajectoryCsv(run.log, base.output_dir / "trajectories" / name.str());
        }
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "sweep path " << named.name << ", lookahead " << lookahead << ", trial " << t
            << ": " << e.what();
        throw ScenarioError(msg.str());
      }
    }
    const AggregateMetrics agg = aggregate(trials);
    result.rows[i] = {lookahead,         agg.mean_cte.mean, agg.max_cte.mean,
                      agg.travel_time.mean, agg.reached_count, agg.trial_count};
  });

  std::vector<double> ls, ctes, times;
  for (const auto& row : result.rows) {
    ls.push_back(row.lookahead);
    ctes.push_back(row.mean_cte);
    times.push_back(row.travel_time);
  }
  if (result.rows.size() >= 2) {
    result.rank_corr_cte = spearmanCorrelation(ls, ctes);
    result.rank_corr_time = spearmanCorrelation(ls, times);
  }

  if (write) {
    const auto file = base.output_dir / "sweep.csv";
    std::ofstream out(file, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open " + file.string() + " for writing");
    }
    writeSweepCsv(result, out);
  }
  return result;
}

double spearmanCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("spearmanCorrelation: need two equally sized samples of length >= 2");
  }
  auto ranks = [](std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> r(values.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
        ++j;
      }
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) {
        r[order[k]] = avg;
      }
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    return 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace dwpp
