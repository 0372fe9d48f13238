#include "dwpp/simulator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

namespace dwpp {

namespace {

// Below this |omega * dt| the straight-line update is used.
constexpr double kStraightThreshold = 1e-9;

bool finiteState(const RobotState& s) {
  return std::isfinite(s.pose.x) && std::isfinite(s.pose.y) && std::isfinite(s.pose.theta) &&
         std::isfinite(s.v) && std::isfinite(s.omega);
}

// Clamp that leaves values within `tol` of the interval untouched.
double clampWithTolerance(double x, double lo, double hi, double tol) {
  if (x < lo - tol) {
    return lo;
  }
  if (x > hi + tol) {
    return hi;
  }
  return x;
}

}  // namespace

void NoiseModel::validate() const {
  if (!(sigma_v >= 0.0) || !(sigma_omega >= 0.0) || !(sigma_position >= 0.0) ||
      !(sigma_heading >= 0.0)) {
    throw ParameterError("noise: standard deviations must be non-negative");
  }
}

ViolationFlags checkViolations(const VelocityCommand& command, const RobotState& state,
                               const KinodynamicLimits& limits) {
  const double dt = limits.dt;
  ViolationFlags f;
  f.velocity = command.v > limits.v_max + kViolationTol || command.v < limits.v_min - kViolationTol;
  f.angular = command.omega > limits.omega_max + kViolationTol ||
              command.omega < limits.omega_min - kViolationTol;
  f.acceleration = command.v - state.v > limits.a_acc_max * dt + kViolationTol ||
                   state.v - command.v > limits.a_dcc_max * dt + kViolationTol;
  f.angular_accel = command.omega - state.omega > limits.alpha_acc_max * dt + kViolationTol ||
                    state.omega - command.omega > limits.alpha_dcc_max * dt + kViolationTol;
  return f;
}

VelocityCommand clipToFeasible(const VelocityCommand& command, const RobotState& state,
                               const KinodynamicLimits& limits) {
  const DynamicWindow w = computeDynamicWindow(state, limits);
  return {clampWithTolerance(command.v, w.v_lo, w.v_hi, kViolationTol),
          clampWithTolerance(command.omega, w.omega_lo, w.omega_hi, kViolationTol)};
}

RobotState stepUnicycle(const RobotState& state, const VelocityCommand& executed, double dt) {
  const double v = executed.v;
  const double w = executed.omega;
  const double th = state.pose.theta;
  RobotState next;
  if (std::abs(w) > kStraightThreshold) {
    const double th1 = th + w * dt;
    next.pose.x = state.pose.x + (v / w) * (std::sin(th1) - std::sin(th));
    next.pose.y = state.pose.y - (v / w) * (std::cos(th1) - std::cos(th));
    next.pose.theta = wrapAngle(th1);
  } else {
    next.pose.x = state.pose.x + v * dt * std::cos(th);
    next.pose.y = state.pose.y + v * dt * std::sin(th);
    next.pose.theta = wrapAngle(th + w * dt);
  }
  next.v = v;
  next.omega = w;
  return next;
}

ScenarioResult runScenario(const ReferencePath& path, ControllerKind kind,
                           const ControllerParams& params, const ExecutionModel& execution,
                           const NoiseModel& noise, const RobotState& initial,
                           const ScenarioOptions& options) {
  params.validate();
  execution.limits.validate();
  noise.validate();
  if (!(options.max_time > 0.0)) {
    throw ParameterError("scenario: max_time must be positive");
  }
  if (!(options.goal_tolerance > 0.0)) {
    throw ParameterError("scenario: goal_tolerance must be positive");
  }

  const KinodynamicLimits& limits = execution.limits;
  const double dt = limits.dt;
  const auto max_steps = static_cast<std::size_t>(std::ceil(options.max_time / dt - 1e-9));

  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  RobotState state = initial;
  if (noise.sigma_position > 0.0 || noise.sigma_heading > 0.0) {
    state.pose.x += noise.sigma_position * unit(rng);
    state.pose.y += noise.sigma_position * unit(rng);
    state.pose.theta = wrapAngle(state.pose.theta + noise.sigma_heading * unit(rng));
  }

  ScenarioResult result;
  result.log.reserve(std::min<std::size_t>(max_steps, 1u << 16));
  std::size_t step = 0;
  while (true) {
    if (distance(state.pose.position(), path.back()) <= options.goal_tolerance) {
      result.reached_goal = true;
      break;
    }
    if (step >= max_steps) {
      break;
    }

    TrajectorySample sample;
    sample.time = static_cast<double>(step) * dt;
    sample.state = state;
    sample.command = computeCommand(kind, state, path, params, options.obstacle_distance);
    sample.violations = checkViolations(sample.command, state, limits);

    VelocityCommand executed = sample.command;
    if (execution.mode == ExecutionMode::kHardwareClip) {
      executed = clipToFeasible(executed, state, limits);
    }
    if (noise.sigma_v > 0.0 || noise.sigma_omega > 0.0) {
      executed.v += noise.sigma_v * unit(rng);
      executed.omega += noise.sigma_omega * unit(rng);
      if (execution.mode == ExecutionMode::kHardwareClip) {
        executed = clipToFeasible(executed, state, limits);
      }
    }
    sample.executed = executed;
    result.log.push_back(sample);

    state = stepUnicycle(state, executed, dt);
    if (!finiteState(state)) {
      throw SimulationDivergedError(
          fmt::format("simulation diverged at t={:.3f} s ({})", sample.time, toString(kind)));
    }
    ++step;
  }

  result.final_state = state;
  result.travel_time = static_cast<double>(step) * dt;
  return result;
}

void writeTrajectoryCsv(const TrajectoryLog& log, std::ostream& out) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf),
                 "t,x,y,theta,v,omega,v_cmd,omega_cmd,v_exec,omega_exec,viol_v,viol_w,viol_a,"
                 "viol_alpha\n");
  for (const auto& s : log) {
    fmt::format_to(std::back_inserter(buf),
                   "{:.6f},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:d},{:d},"
                   "{:d},{:d}\n",
                   s.time, s.state.pose.x, s.state.pose.y, s.state.pose.theta, s.state.v,
                   s.state.omega, s.command.v, s.command.omega, s.executed.v, s.executed.omega,
                   static_cast<int>(s.violations.velocity), static_cast<int>(s.violations.angular),
                   static_cast<int>(s.violations.acceleration),
                   static_cast<int>(s.violations.angular_accel));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void writeTrajectoryCsv(const TrajectoryLog& log, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() + " for writing");
  }
  writeTrajectoryCsv(log, out);
}

}  // namespace dwpp
