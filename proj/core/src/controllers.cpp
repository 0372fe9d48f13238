#include "dwpp/controllers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace dwpp {

namespace {

// Closed-boundary membership tolerance for the edge intersection points.
constexpr double kBoundaryTol = 1e-9;
// Distances / velocities closer than this are treated as ties.
constexpr double kTieTol = 1e-12;

void require(bool ok, const char* what) {
  if (!ok) {
    throw ParameterError(what);
  }
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void KinodynamicLimits::validate() const {
  require(finite(v_max) && finite(v_min), "limits.v_max/v_min must be finite");
  require(v_min <= v_max, "limits.v_min must not exceed limits.v_max");
  require(finite(omega_max) && finite(omega_min), "limits.omega_max/omega_min must be finite");
  require(omega_min <= omega_max, "limits.omega_min must not exceed limits.omega_max");
  require(a_acc_max > 0.0 && finite(a_acc_max), "limits.a_acc_max must be positive");
  require(a_dcc_max > 0.0 && finite(a_dcc_max), "limits.a_dcc_max must be positive");
  require(alpha_acc_max > 0.0 && finite(alpha_acc_max), "limits.alpha_acc_max must be positive");
  require(alpha_dcc_max > 0.0 && finite(alpha_dcc_max), "limits.alpha_dcc_max must be positive");
  require(dt > 0.0 && finite(dt), "limits.dt must be positive");
}

void LookaheadConfig::validate() const {
  require(fixed > 0.0 && finite(fixed), "lookahead.fixed must be positive");
  require(min > 0.0 && finite(min), "lookahead.min must be positive");
  require(max >= min && finite(max), "lookahead.max must be >= lookahead.min");
  require(time_gain > 0.0 && finite(time_gain), "lookahead.time_gain must be positive");
}

void RegulationConfig::validate() const {
  require(r_min > 0.0 && finite(r_min), "regulation.r_min must be positive");
  require(d_prox > 0.0 && finite(d_prox), "regulation.d_prox must be positive");
  require(proximity_gain > 0.0 && proximity_gain <= 1.0,
          "regulation.proximity_gain must be in (0, 1]");
  require(d_goal > 0.0 && finite(d_goal), "regulation.d_goal must be positive");
  require(v_reg_min >= 0.0 && finite(v_reg_min), "regulation.v_reg_min must be non-negative");
  require(v_goal_min >= 0.0 && finite(v_goal_min), "regulation.v_goal_min must be non-negative");
}

void StabilityConfig::validate() const {
  require(steering_time_constant > 0.0 && finite(steering_time_constant),
          "stability.steering_time_constant must be positive");
  require(min_nondim_lookahead > 0.0 && finite(min_nondim_lookahead),
          "stability.min_nondim_lookahead must be positive");
}

void ControllerParams::validate() const {
  limits.validate();
  lookahead.validate();
  regulation.validate();
}

std::string_view toString(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kPP:
      return "PP";
    case ControllerKind::kAPP:
      return "APP";
    case ControllerKind::kRPP:
      return "RPP";
    case ControllerKind::kDWPP:
      return "DWPP";
  }
  return "?";
}

ControllerKind parseControllerKind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto kind : kAllControllers) {
    if (upper == toString(kind)) {
      return kind;
    }
  }
  throw ParameterError("unknown controller '" + std::string(name) + "'");
}

double effectiveLookahead(const LookaheadConfig& cfg, double current_speed) {
  if (cfg.mode == LookaheadMode::kFixed) {
    return cfg.fixed;
  }
  return std::clamp(current_speed * cfg.time_gain, cfg.min, cfg.max);
}

VelocityCommand ppNominalCommand(double curvature, double v_desired) {
  return {v_desired, curvature * v_desired};
}

double curvatureHeuristic(double v, double radius, double r_min) {
  if (radius > r_min) {
    return v;
  }
  return v * radius / r_min;
}

double proximityHeuristic(double v, double obstacle_distance, double d_prox, double gain) {
  if (obstacle_distance > d_prox) {
    return v;
  }
  return v * gain * obstacle_distance / d_prox;
}

double goalHeuristic(double v, double goal_distance, double d_goal) {
  if (goal_distance > d_goal) {
    return v;
  }
  return v * goal_distance / d_goal;
}

double regulateLinearVelocity(double v_cmd, double curvature, double obstacle_distance,
                              double goal_distance, const RegulationConfig& cfg) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double radius = curvature == 0.0 ? kInf : 1.0 / std::abs(curvature);
  const bool shape_regulated = cfg.enable_curvature || cfg.enable_proximity;

  double v_curv_prox = v_cmd;
  double v_reg = v_cmd;
  if (cfg.combination == CombinationMode::kLiteral) {
    if (shape_regulated) {
      const double v_curv =
          cfg.enable_curvature ? curvatureHeuristic(v_cmd, radius, cfg.r_min) : kInf;
      const double v_prox = cfg.enable_proximity ? proximityHeuristic(v_cmd, obstacle_distance,
                                                                      cfg.d_prox,
                                                                      cfg.proximity_gain)
                                                 : kInf;
      v_curv_prox = std::min({v_curv, v_prox, cfg.v_reg_min});
    }
    v_reg = v_curv_prox;
    if (cfg.enable_goal) {
      v_reg = std::min(goalHeuristic(v_curv_prox, goal_distance, cfg.d_goal), cfg.v_goal_min);
    }
  } else {
    if (shape_regulated) {
      const double v_curv =
          cfg.enable_curvature ? curvatureHeuristic(v_cmd, radius, cfg.r_min) : v_cmd;
      const double v_prox = cfg.enable_proximity ? proximityHeuristic(v_cmd, obstacle_distance,
                                                                      cfg.d_prox,
                                                                      cfg.proximity_gain)
                                                 : v_cmd;
      v_curv_prox = std::min(std::max(std::min(v_curv, v_prox), cfg.v_reg_min), v_cmd);
    }
    v_reg = v_curv_prox;
    if (cfg.enable_goal) {
      const double v_goal = goalHeuristic(v_curv_prox, goal_distance, cfg.d_goal);
      v_reg = std::min(v_curv_prox, std::max(v_goal, cfg.v_goal_min));
    }
  }
  return std::min(v_cmd, v_reg);
}

DynamicWindow computeDynamicWindow(const RobotState& state, const KinodynamicLimits& limits) {
  const double dt = limits.dt;
  DynamicWindow w;
  w.v_hi = std::min(limits.v_max, state.v + limits.a_acc_max * dt);
  w.v_lo = std::max(limits.v_min, state.v - limits.a_dcc_max * dt);
  w.omega_hi = std::min(limits.omega_max, state.omega + limits.alpha_acc_max * dt);
  w.omega_lo = std::max(limits.omega_min, state.omega - limits.alpha_dcc_max * dt);
  // A state already outside the limits can only move back towards them.
  if (w.v_lo > w.v_hi) {
    w.v_lo = w.v_hi = state.v > limits.v_max ? w.v_hi : w.v_lo;
  }
  if (w.omega_lo > w.omega_hi) {
    w.omega_lo = w.omega_hi = state.omega > limits.omega_max ? w.omega_hi : w.omega_lo;
  }
  return w;
}

DynamicWindow applyRegulationToWindow(const DynamicWindow& window, double v_reg) {
  DynamicWindow w = window;
  w.v_lo = std::max(window.v_lo, 0.0);
  w.v_hi = std::min(window.v_hi, v_reg);
  if (w.v_hi < w.v_lo) {
    w.v_hi = w.v_lo;
  }
  return w;
}

double distanceToLine(const VelocityCommand& point, double curvature) {
  return std::abs(curvature * point.v - point.omega) / std::sqrt(curvature * curvature + 1.0);
}

VelocityCommand optimalVelocityInWindow(const DynamicWindow& window, double curvature) {
  if (curvature == 0.0) {
    return {window.v_hi, std::clamp(0.0, window.omega_lo, window.omega_hi)};
  }

  // Intersections of omega = kappa * v with the four extended window edges,
  // listed so that exact-edge points win ties against recomputed ones.
  const std::array<VelocityCommand, 4> crossings{{
      {window.v_hi, curvature * window.v_hi},
      {window.v_lo, curvature * window.v_lo},
      {window.omega_hi / curvature, window.omega_hi},
      {window.omega_lo / curvature, window.omega_lo},
  }};
  const VelocityCommand* best = nullptr;
  for (const auto& p : crossings) {
    if (window.contains(p, kBoundaryTol) && (best == nullptr || p.v > best->v + kTieTol)) {
      best = &p;
    }
  }
  if (best != nullptr) {
    return *best;
  }

  // No intersection: the optimum is a vertex.
  const std::array<VelocityCommand, 4> vertices{{
      {window.v_lo, window.omega_lo},
      {window.v_lo, window.omega_hi},
      {window.v_hi, window.omega_lo},
      {window.v_hi, window.omega_hi},
  }};
  VelocityCommand choice = vertices[0];
  double choice_dist = distanceToLine(choice, curvature);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto& c = vertices[i];
    const double d = distanceToLine(c, curvature);
    bool better = d < choice_dist - kTieTol;
    if (!better && d <= choice_dist + kTieTol) {
      if (c.v > choice.v + kTieTol) {
        better = true;
      } else if (c.v >= choice.v - kTieTol) {
        better = std::abs(c.omega) > std::abs(choice.omega);
      }
    }
    if (better) {
      choice = c;
      choice_dist = d;
    }
  }
  return choice;
}

VelocityCommand sampledVelocityInWindow(const DynamicWindow& window, double curvature,
                                        std::size_t samples_per_axis) {
  if (samples_per_axis < 2) {
    throw ParameterError("sampledVelocityInWindow: need at least two samples per axis");
  }
  const double steps = static_cast<double>(samples_per_axis - 1);
  const double dv = (window.v_hi - window.v_lo) / steps;
  const double dw = (window.omega_hi - window.omega_lo) / steps;
  VelocityCommand best{window.v_lo, window.omega_lo};
  double best_dist = distanceToLine(best, curvature);
  for (std::size_t i = 0; i < samples_per_axis; ++i) {
    const double v = i + 1 == samples_per_axis ? window.v_hi : window.v_lo + dv * i;
    for (std::size_t j = 0; j < samples_per_axis; ++j) {
      const double w = j + 1 == samples_per_axis ? window.omega_hi : window.omega_lo + dw * j;
      const VelocityCommand c{v, w};
      const double d = distanceToLine(c, curvature);
      if (d < best_dist || (d == best_dist && v > best.v)) {
        best = c;
        best_dist = d;
      }
    }
  }
  return best;
}

ControlOutput computeControl(ControllerKind kind, const RobotState& state,
                             const ReferencePath& path, const ControllerParams& params,
                             double obstacle_distance) {
  const KinodynamicLimits& limits = params.limits;
  ControlOutput out;

  switch (kind) {
    case ControllerKind::kPP:
      out.lookahead = params.lookahead.fixed;
      break;
    case ControllerKind::kAPP: {
      LookaheadConfig scaled = params.lookahead;
      scaled.mode = LookaheadMode::kVelocityScaled;
      out.lookahead = effectiveLookahead(scaled, std::abs(state.v));
      break;
    }
    case ControllerKind::kRPP:
    case ControllerKind::kDWPP:
      out.lookahead = effectiveLookahead(params.lookahead, std::abs(state.v));
      break;
  }

  out.lookahead_point = findLookaheadPoint(path, state.pose, out.lookahead);
  out.curvature = computeCurvature(state.pose, out.lookahead_point);

  const double v_desired = limits.v_max;
  out.v_reg = v_desired;
  if (kind == ControllerKind::kPP || kind == ControllerKind::kAPP) {
    out.command = ppNominalCommand(out.curvature, v_desired);
    return out;
  }

  const double goal_distance = remainingDistanceToGoal(path, state.pose);
  out.v_reg = regulateLinearVelocity(v_desired, out.curvature, obstacle_distance, goal_distance,
                                     params.regulation);
  if (kind == ControllerKind::kRPP) {
    out.command = ppNominalCommand(out.curvature, std::min(v_desired, out.v_reg));
    return out;
  }

  const DynamicWindow window =
      applyRegulationToWindow(computeDynamicWindow(state, limits), out.v_reg);
  out.window = window;
  out.command = optimalVelocityInWindow(window, out.curvature);
  return out;
}

double minStableLookahead(double v, const StabilityConfig& cfg) {
  return v * cfg.steering_time_constant * cfg.min_nondim_lookahead;
}

}  // namespace dwpp
