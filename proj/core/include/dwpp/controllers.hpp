#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "dwpp/path_geometry.hpp"
#include "dwpp/types.hpp"

namespace dwpp {

// Velocity and acceleration bounds of the drive plus the control period.
// Deceleration bounds are magnitudes.
struct KinodynamicLimits {
  double v_max{0.5};
  double v_min{0.0};
  double omega_max{1.0};
  double omega_min{-1.0};
  double a_acc_max{0.5};
  double a_dcc_max{0.5};
  double alpha_acc_max{1.0};
  double alpha_dcc_max{1.0};
  double dt{0.033};

  // Throws ParameterError naming the first offending field.
  void validate() const;
};

// Axis-aligned rectangle of (v, omega) reachable in the next control period.
struct DynamicWindow {
  double v_lo{0.0};
  double v_hi{0.0};
  double omega_lo{0.0};
  double omega_hi{0.0};

  bool contains(const VelocityCommand& cmd, double tol = 0.0) const {
    return cmd.v >= v_lo - tol && cmd.v <= v_hi + tol && cmd.omega >= omega_lo - tol &&
           cmd.omega <= omega_hi + tol;
  }
};

enum class LookaheadMode { kFixed, kVelocityScaled };

struct LookaheadConfig {
  LookaheadMode mode{LookaheadMode::kVelocityScaled};
  double fixed{0.6};
  double min{0.3};
  double max{0.7};
  double time_gain{1.4};  // l_t [s]

  void validate() const;
};

// How the minimum-velocity parameters combine with the RPP heuristics.
//  kLowerBound:   the minimums act as floors (the behaviour RPP implementations ship).
//  kLiteral:      the minimums enter a plain min() alongside the heuristics.
enum class CombinationMode { kLowerBound, kLiteral };

struct RegulationConfig {
  bool enable_curvature{true};
  double r_min{0.9};
  bool enable_proximity{false};
  double d_prox{1.0};
  double proximity_gain{1.0};  // g_d in (0, 1]
  bool enable_goal{true};
  double d_goal{1.0};
  double v_reg_min{0.25};
  double v_goal_min{0.05};
  CombinationMode combination{CombinationMode::kLowerBound};

  void validate() const;
};

// Steering-lag stability check: L >= V * T * L'_min.
struct StabilityConfig {
  double steering_time_constant{0.4};  // T [s]
  double min_nondim_lookahead{2.0};    // L'_min

  void validate() const;
};

enum class ControllerKind { kPP, kAPP, kRPP, kDWPP };

inline constexpr std::array<ControllerKind, 4> kAllControllers{
    ControllerKind::kPP, ControllerKind::kAPP, ControllerKind::kRPP, ControllerKind::kDWPP};

std::string_view toString(ControllerKind kind);
// Case-insensitive; throws ParameterError on unknown names.
ControllerKind parseControllerKind(std::string_view name);

struct ControllerParams {
  KinodynamicLimits limits;
  LookaheadConfig lookahead;
  RegulationConfig regulation;

  void validate() const;
};

inline constexpr double kNoObstacle = std::numeric_limits<double>::infinity();

// --- lookahead and nominal pure pursuit -----------------------------------

double effectiveLookahead(const LookaheadConfig& cfg, double current_speed);
VelocityCommand ppNominalCommand(double curvature, double v_desired);

// --- regulation heuristics -------------------------------------------------

double curvatureHeuristic(double v, double radius, double r_min);
double proximityHeuristic(double v, double obstacle_distance, double d_prox, double gain);
double goalHeuristic(double v, double goal_distance, double d_goal);

// Regulated linear velocity for a nominal command `v_cmd`. The result never
// exceeds `v_cmd`.
double regulateLinearVelocity(double v_cmd, double curvature, double obstacle_distance,
                              double goal_distance, const RegulationConfig& cfg);

// --- dynamic window ----------------------------------------------------------

DynamicWindow computeDynamicWindow(const RobotState& state, const KinodynamicLimits& limits);

// Intersects the window with v in [0, v_reg]. When the intersection is empty
// the window collapses onto its lowest reachable linear velocity.
DynamicWindow applyRegulationToWindow(const DynamicWindow& window, double v_reg);

// Euclidean distance in the v-omega plane from `point` to the line omega = kappa * v.
double distanceToLine(const VelocityCommand& point, double curvature);

// Point of the window closest to omega = kappa * v, preferring the largest v
// among equally close points.
VelocityCommand optimalVelocityInWindow(const DynamicWindow& window, double curvature);

// Sampled baseline: evaluates an n x n grid over the window and returns the
// grid point closest to the line, largest v first. O(n^2); used by the
// benchmarks and the check-optimal tool for comparison with the closed form.
VelocityCommand sampledVelocityInWindow(const DynamicWindow& window, double curvature,
                                        std::size_t samples_per_axis);

// --- full controller step -----------------------------------------------------

struct ControlOutput {
  VelocityCommand command;
  double curvature{0.0};
  double lookahead{0.0};
  Point2D lookahead_point;
  double v_reg{0.0};
  std::optional<DynamicWindow> window;  // regulated window, DWPP only
};

ControlOutput computeControl(ControllerKind kind, const RobotState& state,
                             const ReferencePath& path, const ControllerParams& params,
                             double obstacle_distance = kNoObstacle);

inline VelocityCommand computeCommand(ControllerKind kind, const RobotState& state,
                                      const ReferencePath& path, const ControllerParams& params,
                                      double obstacle_distance = kNoObstacle) {
  return computeControl(kind, state, path, params, obstacle_distance).command;
}

// --- stability advisory -------------------------------------------------------

double minStableLookahead(double v, const StabilityConfig& cfg);

}  // namespace dwpp
