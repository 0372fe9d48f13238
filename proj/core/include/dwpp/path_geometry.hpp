#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dwpp/types.hpp"

namespace dwpp {

// Ordered polyline of planar waypoints with cumulative arc length.
// Immutable after construction.
class ReferencePath {
 public:
  // Throws ParameterError for fewer than two waypoints, repeated
  // consecutive waypoints or non-finite coordinates.
  explicit ReferencePath(std::vector<Point2D> waypoints);

  std::span<const Point2D> waypoints() const { return waypoints_; }
  std::span<const double> cumulativeArclength() const { return arclength_; }

  std::size_t size() const { return waypoints_.size(); }
  const Point2D& operator[](std::size_t i) const { return waypoints_[i]; }
  const Point2D& front() const { return waypoints_.front(); }
  const Point2D& back() const { return waypoints_.back(); }
  double length() const { return arclength_.back(); }

 private:
  std::vector<Point2D> waypoints_;
  std::vector<double> arclength_;
};

// Two straight legs of equal length joined by a corner. The second leg's
// heading is rotated counter-clockwise from the first by `corner_angle`.
struct CornerPathSpec {
  double segment_length{3.0};
  double corner_angle{0.0};  // [rad], in (0, pi)
  double waypoint_spacing{0.05};
  Pose2D start_pose{};
};

ReferencePath generateCornerPath(const CornerPathSpec& spec);

struct PathProjection {
  Point2D point;            // closest point on the polyline
  std::size_t segment{0};   // segment index i, i.e. between waypoints i and i+1
  double distance{0.0};     // unsigned lateral distance
  double arclength{0.0};    // arc length of `point` from the path start
};

// Closest point on the polyline, including segment interiors. Ties are
// resolved towards the lowest segment index.
PathProjection nearestPointOnPath(const ReferencePath& path, const Pose2D& pose);

// First waypoint p_i after the nearest point p_r with |p_{i-1} - p_r| < L and
// |p_i - p_r| >= L. Falls back to the final waypoint when the path ends
// before reaching L.
Point2D findLookaheadPoint(const ReferencePath& path, const Pose2D& pose, double lookahead);

// Signed curvature of the arc from `pose` through `target`, tangent to the
// heading: kappa = 2 sin(phi) / l. Positive turns counter-clockwise.
double computeCurvature(const Pose2D& pose, const Point2D& target);

double crossTrackError(const ReferencePath& path, const Pose2D& pose);

// Arc length from the projection of `pose` to the final waypoint.
double remainingDistanceToGoal(const ReferencePath& path, const Pose2D& pose);

// CSV with header "x,y", one waypoint per row.
void writePathCsv(const ReferencePath& path, std::ostream& out);
void writePathCsv(const ReferencePath& path, const std::filesystem::path& file);
ReferencePath readPathCsv(std::istream& in);
ReferencePath readPathCsv(const std::filesystem::path& file);

}  // namespace dwpp
