#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dwpp {

// Raised when an input violates a documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a geometric query has no well-defined answer, e.g. a
// lookahead point that coincides with the robot position.
class DegenerateGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when the simulated state becomes non-finite.
class SimulationDivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2D {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Wraps an angle into (-pi, pi].
inline double wrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) {
    wrapped += 2.0 * kPi;
  }
  return wrapped;
}

struct Pose2D {
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Point2D position() const { return {x, y}; }
};

struct RobotState {
  Pose2D pose;
  double v{0.0};      // current linear velocity [m/s]
  double omega{0.0};  // current angular velocity [rad/s]
};

struct VelocityCommand {
  double v{0.0};
  double omega{0.0};

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

inline double degToRad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double radToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace dwpp
