#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dwpp/controllers.hpp"
#include "dwpp/path_geometry.hpp"
#include "dwpp/types.hpp"

namespace dwpp {

enum class ExecutionMode {
  kHardwareClip,  // drive layer projects every command onto the dynamic window
  kPassThrough,   // commands are executed verbatim
};

struct ExecutionModel {
  ExecutionMode mode{ExecutionMode::kHardwareClip};
  KinodynamicLimits limits;
};

// Seeded disturbances. Velocity noise perturbs the executed velocities (and
// is re-clipped under kHardwareClip); pose noise perturbs the initial pose.
struct NoiseModel {
  double sigma_v{0.0};
  double sigma_omega{0.0};
  double sigma_position{0.0};  // [m]
  double sigma_heading{0.0};   // [rad]
  std::uint64_t seed{0};

  bool enabled() const {
    return sigma_v > 0.0 || sigma_omega > 0.0 || sigma_position > 0.0 || sigma_heading > 0.0;
  }
  void validate() const;
};

struct ViolationFlags {
  bool velocity{false};       // v_cmd outside [v_min, v_max]
  bool angular{false};        // omega_cmd outside [omega_min, omega_max]
  bool acceleration{false};   // v_cmd unreachable from v_t within one period
  bool angular_accel{false};  // omega_cmd unreachable from omega_t within one period

  bool any() const { return velocity || angular || acceleration || angular_accel; }
};

struct TrajectorySample {
  double time{0.0};
  RobotState state;           // state at `time`, before the command is applied
  VelocityCommand command;    // controller output
  VelocityCommand executed;   // what the drive actually ran
  ViolationFlags violations;  // of `command` against the limits, given `state`
};

using TrajectoryLog = std::vector<TrajectorySample>;

struct ScenarioResult {
  TrajectoryLog log;
  RobotState final_state;
  bool reached_goal{false};
  double travel_time{0.0};  // step count * dt
};

struct ScenarioOptions {
  double max_time{60.0};
  double goal_tolerance{0.15};
  double obstacle_distance{kNoObstacle};
};

// Absolute tolerance used by the violation flags.
inline constexpr double kViolationTol = 1e-9;

ViolationFlags checkViolations(const VelocityCommand& command, const RobotState& state,
                               const KinodynamicLimits& limits);

// Per-axis projection of `command` onto the dynamic window of `state`.
VelocityCommand clipToFeasible(const VelocityCommand& command, const RobotState& state,
                               const KinodynamicLimits& limits);

// Exact arc integration of the unicycle model over `dt`. The returned state
// carries `executed` as its velocity.
RobotState stepUnicycle(const RobotState& state, const VelocityCommand& executed, double dt);

// Closed-loop run from `initial` until the final waypoint is within
// `goal_tolerance` or `max_time` elapses. Throws SimulationDivergedError if
// the state turns non-finite.
ScenarioResult runScenario(const ReferencePath& path, ControllerKind kind,
                           const ControllerParams& params, const ExecutionModel& execution,
                           const NoiseModel& noise, const RobotState& initial,
                           const ScenarioOptions& options = {});

// Header: t,x,y,theta,v,omega,v_cmd,omega_cmd,v_exec,omega_exec,viol_v,viol_w,viol_a,viol_alpha
void writeTrajectoryCsv(const TrajectoryLog& log, std::ostream& out);
void writeTrajectoryCsv(const TrajectoryLog& log, const std::filesystem::path& file);

}  // namespace dwpp
