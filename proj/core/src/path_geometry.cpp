#include "dwpp/path_geometry.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace dwpp {

namespace {

// Ties in the nearest-segment scan within this margin go to the lower index.
constexpr double kTieMargin = 1e-12;

struct SegmentFoot {
  Point2D point;
  double t{0.0};  // fraction along the segment, in [0, 1]
};

SegmentFoot projectOntoSegment(const Point2D& a, const Point2D& b, const Point2D& p) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return {{a.x + t * dx, a.y + t * dy}, t};
}

void appendLeg(std::vector<Point2D>& out, const Point2D& origin, double heading, double length,
               double spacing, bool include_origin) {
  const double cx = std::cos(heading);
  const double cy = std::sin(heading);
  const double end_margin = 1e-9;
  for (std::size_t k = include_origin ? 0 : 1;; ++k) {
    const double s = static_cast<double>(k) * spacing;
    if (s >= length - end_margin) {
      break;
    }
    out.push_back({origin.x + s * cx, origin.y + s * cy});
  }
  out.push_back({origin.x + length * cx, origin.y + length * cy});
}

}  // namespace

ReferencePath::ReferencePath(std::vector<Point2D> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw ParameterError("ReferencePath: at least two waypoints are required");
  }
  arclength_.reserve(waypoints_.size());
  arclength_.push_back(0.0);
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    const auto& p = waypoints_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ParameterError("ReferencePath: waypoint " + std::to_string(i) + " is not finite");
    }
    if (i == 0) {
      continue;
    }
    const double step = distance(waypoints_[i - 1], p);
    if (!(step > 0.0)) {
      throw ParameterError("ReferencePath: waypoints " + std::to_string(i - 1) + " and " +
                           std::to_string(i) + " coincide");
    }
    arclength_.push_back(arclength_.back() + step);
  }
}

ReferencePath generateCornerPath(const CornerPathSpec& spec) {
  if (!(spec.segment_length > 0.0) || !std::isfinite(spec.segment_length)) {
    throw ParameterError("corner path: segment_length must be positive");
  }
  if (!(spec.waypoint_spacing > 0.0) || !(spec.waypoint_spacing < spec.segment_length)) {
    throw ParameterError("corner path: waypoint_spacing must be in (0, segment_length)");
  }
  if (!(spec.corner_angle > 0.0) || !(spec.corner_angle < std::numbers::pi)) {
    throw ParameterError("corner path: corner_angle must be in (0, pi)");
  }
  const Pose2D& start = spec.start_pose;
  if (!std::isfinite(start.x) || !std::isfinite(start.y) || !std::isfinite(start.theta)) {
    throw ParameterError("corner path: start pose must be finite");
  }

  std::vector<Point2D> pts;
  appendLeg(pts, start.position(), start.theta, spec.segment_length, spec.waypoint_spacing, true);
  const Point2D corner = pts.back();
  appendLeg(pts, corner, start.theta + spec.corner_angle, spec.segment_length,
            spec.waypoint_spacing, false);
  return ReferencePath(std::move(pts));
}

PathProjection nearestPointOnPath(const ReferencePath& path, const Pose2D& pose) {
  const Point2D p = pose.position();
  const auto pts = path.waypoints();
  const auto s = path.cumulativeArclength();

  PathProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const SegmentFoot foot = projectOntoSegment(pts[i], pts[i + 1], p);
    const double d = distance(foot.point, p);
    if (d < best.distance - kTieMargin) {
      best.point = foot.point;
      best.segment = i;
      best.distance = d;
      best.arclength = s[i] + foot.t * (s[i + 1] - s[i]);
    }
  }
  return best;
}

Point2D findLookaheadPoint(const ReferencePath& path, const Pose2D& pose, double lookahead) {
  if (!(lookahead > 0.0)) {
    throw ParameterError("findLookaheadPoint: lookahead distance must be positive");
  }
  const PathProjection proj = nearestPointOnPath(path, pose);
  const auto pts = path.waypoints();

  // The predecessor of the first candidate is p_r itself.
  double prev_dist = 0.0;
  for (std::size_t i = proj.segment + 1; i < pts.size(); ++i) {
    const double d = distance(pts[i], proj.point);
    if (prev_dist < lookahead && d >= lookahead) {
      return pts[i];
    }
    prev_dist = d;
  }
  return path.back();
}

double computeCurvature(const Pose2D& pose, const Point2D& target) {
  const double dx = target.x - pose.x;
  const double dy = target.y - pose.y;
  const double l = std::hypot(dx, dy);
  if (!(l > 1e-12)) {
    throw DegenerateGeometryError("computeCurvature: target coincides with robot position");
  }
  const double c = std::cos(pose.theta);
  const double sn = std::sin(pose.theta);
  const double forward = c * dx + sn * dy;
  const double lateral = -sn * dx + c * dy;
  const double phi = std::atan2(lateral, forward);
  return 2.0 * std::sin(phi) / l;
}

double crossTrackError(const ReferencePath& path, const Pose2D& pose) {
  return nearestPointOnPath(path, pose).distance;
}

double remainingDistanceToGoal(const ReferencePath& path, const Pose2D& pose) {
  const PathProjection proj = nearestPointOnPath(path, pose);
  return std::max(0.0, path.length() - proj.arclength);
}

void writePathCsv(const ReferencePath& path, std::ostream& out) {
  out << "x,y\n";
  out << std::setprecision(17);
  for (const auto& p : path.waypoints()) {
    out << p.x << ',' << p.y << '\n';
  }
}

void writePathCsv(const ReferencePath& path, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot open " + file.string() + " for writing");
  }
  writePathCsv(path, out);
}

ReferencePath readPathCsv(std::istream& in) {
  std::vector<Point2D> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (lineno == 1 && line == "x,y") {
      continue;
    }
    std::istringstream row(line);
    Point2D p;
    char comma = 0;
    if (!(row >> p.x >> comma >> p.y) || comma != ',') {
      throw ParameterError("path csv: malformed row " + std::to_string(lineno));
    }
    pts.push_back(p);
  }
  return ReferencePath(std::move(pts));
}

ReferencePath readPathCsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }
  return readPathCsv(in);
}

}  // namespace dwpp
