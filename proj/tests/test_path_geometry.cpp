#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dwpp/path_geometry.hpp"
#include "oracles.hpp"

namespace dwpp {
namespace {

CornerPathSpec corner(double deg, double spacing = 0.05) {
  CornerPathSpec s;
  s.segment_length = 3.0;
  s.corner_angle = degToRad(deg);
  s.waypoint_spacing = spacing;
  return s;
}

ReferencePath straight(double length = 6.0, double spacing = 0.1) {
  std::vector<Point2D> pts;
  const int n = static_cast<int>(std::lround(length / spacing));
  for (int i = 0; i <= n; ++i) {
    pts.push_back({i * spacing, 0.0});
  }
  return ReferencePath(std::move(pts));
}

TEST(ReferencePath, RejectsDegenerateInput) {
  EXPECT_THROW(ReferencePath({{0.0, 0.0}}), ParameterError);
  EXPECT_THROW(ReferencePath({{0.0, 0.0}, {0.0, 0.0}}), ParameterError);
  EXPECT_THROW(ReferencePath({{0.0, 0.0}, {NAN, 1.0}}), ParameterError);
}

TEST(ReferencePath, CumulativeArclengthStrictlyIncreasing) {
  const ReferencePath path = generateCornerPath(corner(135.0));
  const auto s = path.cumulativeArclength();
  EXPECT_DOUBLE_EQ(s.front(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_GT(s[i], s[i - 1]);
  }
}

TEST(GenerateCornerPath, RightAngleExample) {
  const ReferencePath path = generateCornerPath(corner(90.0, 0.1));
  ASSERT_EQ(path.size(), 61u);
  EXPECT_NEAR(path[30].x, 3.0, 1e-12);
  EXPECT_NEAR(path[30].y, 0.0, 1e-12);
  EXPECT_NEAR(path.back().x, 3.0, 1e-12);
  EXPECT_NEAR(path.back().y, 3.0, 1e-12);
  EXPECT_NEAR(path.length(), 6.0, 1e-9);
  for (std::size_t i = 0; i <= 30; ++i) {
    EXPECT_NEAR(path[i].y, 0.0, 1e-12);
  }
}

TEST(GenerateCornerPath, PathCSecondLegHeading) {
  const ReferencePath path = generateCornerPath(corner(135.0));
  const Point2D c = path[60];
  const Point2D e = path.back();
  EXPECT_NEAR(c.x, 3.0, 1e-12);
  EXPECT_NEAR(std::atan2(e.y - c.y, e.x - c.x), degToRad(135.0), 1e-12);
  EXPECT_NEAR(distance(c, e), 3.0, 1e-12);
}

TEST(GenerateCornerPath, AnchoredAtStartPose) {
  CornerPathSpec s = corner(45.0);
  s.start_pose = {1.0, -2.0, 0.3};
  const ReferencePath path = generateCornerPath(s);
  EXPECT_NEAR(path.front().x, 1.0, 1e-12);
  EXPECT_NEAR(path.front().y, -2.0, 1e-12);
  EXPECT_NEAR(std::atan2(path[1].y - path[0].y, path[1].x - path[0].x), 0.3, 1e-12);
  EXPECT_NEAR(path.length(), 6.0, 1e-9);
}

TEST(GenerateCornerPath, NonMultipleSpacingStillEndsAtCorner) {
  CornerPathSpec s = corner(90.0, 0.07);
  const ReferencePath path = generateCornerPath(s);
  EXPECT_NEAR(path.length(), 6.0, 1e-9);
  EXPECT_NEAR(path.back().y, 3.0, 1e-12);
}

TEST(GenerateCornerPath, InvalidSpecs) {
  EXPECT_THROW(generateCornerPath(corner(0.0)), ParameterError);
  EXPECT_THROW(generateCornerPath(corner(180.0)), ParameterError);
  EXPECT_THROW(generateCornerPath(corner(90.0, 0.0)), ParameterError);
  EXPECT_THROW(generateCornerPath(corner(90.0, 3.0)), ParameterError);
  CornerPathSpec s = corner(90.0);
  s.segment_length = -1.0;
  EXPECT_THROW(generateCornerPath(s), ParameterError);
}

TEST(NearestPoint, PerpendicularFoot) {
  const ReferencePath path = straight();
  const PathProjection p = nearestPointOnPath(path, {1.0, 0.1, 0.0});
  EXPECT_NEAR(p.point.x, 1.0, 1e-12);
  EXPECT_NEAR(p.point.y, 0.0, 1e-12);
  EXPECT_NEAR(p.distance, 0.1, 1e-12);
  EXPECT_NEAR(crossTrackError(path, {1.0, 0.1, 0.0}), 0.1, 1e-12);
}

TEST(NearestPoint, OnWaypoint) {
  const ReferencePath path = straight();
  const PathProjection p = nearestPointOnPath(path, {2.0, 0.0, 0.0});
  EXPECT_NEAR(p.point.x, 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(p.distance, 0.0);
  EXPECT_DOUBLE_EQ(crossTrackError(path, {2.0, 0.0, 0.0}), 0.0);
}

TEST(NearestPoint, PathBCornerTieGoesToLowerSegment) {
  const ReferencePath path = generateCornerPath(corner(90.0));
  const Pose2D pose{2.9, 0.1, 0.0};
  // Equidistant from both legs: 0.1 m to (2.9, 0) and to (3, 0.1).
  const auto expected = oracle::nearestSegment(path.waypoints(), pose.position());
  const PathProjection p = nearestPointOnPath(path, pose);
  EXPECT_EQ(p.segment, expected.segment);
  EXPECT_LT(p.segment, 60u);  // on the first leg
  EXPECT_NEAR(p.distance, expected.distance, 1e-9);
  EXPECT_NEAR(p.distance, 0.1, 1e-9);
}

TEST(NearestPoint, MatchesExhaustiveOracleAndDominatesWaypoints) {
  const ReferencePath path = generateCornerPath(corner(135.0, 0.1));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1.0, 4.5), uy(-1.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const Pose2D pose{ux(rng), uy(rng), 0.0};
    const PathProjection p = nearestPointOnPath(path, pose);
    const auto o = oracle::nearestSegment(path.waypoints(), pose.position());
    EXPECT_NEAR(p.distance, o.distance, 1e-9);
    for (const auto& w : path.waypoints()) {
      EXPECT_LE(p.distance, distance(w, pose.position()) + 1e-12);
    }
  }
}

TEST(Lookahead, StraightPathExample) {
  const ReferencePath path = straight();
  const Point2D p = findLookaheadPoint(path, {0.0, 0.0, 0.0}, 0.6);
  EXPECT_NEAR(p.x, 0.6, 1e-9);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(Lookahead, FallsBackToFinalWaypoint) {
  const ReferencePath path = straight();
  // Remaining path from x = 5.5 is 0.5 < L.
  const Point2D p = findLookaheadPoint(path, {5.5, 0.0, 0.0}, 0.6);
  EXPECT_EQ(p, path.back());
}

TEST(Lookahead, PathBCornerSwitchesToSecondLeg) {
  const ReferencePath path = generateCornerPath(corner(90.0));
  const Pose2D pose{2.7, 0.0, 0.0};
  const auto proj = nearestPointOnPath(path, pose);
  const auto idx = oracle::lookaheadIndex(path.waypoints(), proj.segment, proj.point, 0.6);
  ASSERT_GE(idx, 0);
  const Point2D p = findLookaheadPoint(path, pose, 0.6);
  EXPECT_EQ(p, path[static_cast<std::size_t>(idx)]);
  // First waypoint (3, y) with 0.3^2 + y^2 >= 0.36 is y = 0.55.
  EXPECT_NEAR(p.x, 3.0, 1e-12);
  EXPECT_NEAR(p.y, 0.55, 1e-9);
}

TEST(Lookahead, RejectsNonPositiveDistance) {
  EXPECT_THROW(findLookaheadPoint(straight(), {0.0, 0.0, 0.0}, 0.0), ParameterError);
}

TEST(Lookahead, BracketingPropertyAgainstLinearScan) {
  const ReferencePath path = generateCornerPath(corner(135.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.5, 3.5), uy(-0.5, 2.5), ul(0.01, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Pose2D pose{ux(rng), uy(rng), 0.0};
    const double l = ul(rng);
    const auto proj = nearestPointOnPath(path, pose);
    const auto idx = oracle::lookaheadIndex(path.waypoints(), proj.segment, proj.point, l);
    const Point2D p = findLookaheadPoint(path, pose, l);
    if (idx >= 0) {
      EXPECT_EQ(p, path[static_cast<std::size_t>(idx)]);
      EXPECT_GE(distance(p, proj.point), l);
    } else {
      EXPECT_EQ(p, path.back());
    }
  }
}

TEST(Curvature, Examples) {
  EXPECT_NEAR(computeCurvature({0.0, 0.0, 0.0}, {1.0, 1.0}), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(computeCurvature({0.0, 0.0, 0.0}, {2.0, 0.0}), 0.0);
  EXPECT_NEAR(computeCurvature({0.0, 0.0, 0.0}, {1.0, -1.0}), -1.0, 1e-12);
}

TEST(Curvature, DegenerateTarget) {
  EXPECT_THROW(computeCurvature({1.0, 1.0, 0.3}, {1.0, 1.0}), DegenerateGeometryError);
}

TEST(Curvature, ReflectionAndBoundProperties) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0), ut(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const Pose2D pose{u(rng), u(rng), ut(rng)};
    const double fwd = u(rng);
    const double lat = u(rng);
    if (std::hypot(fwd, lat) < 1e-3) continue;
    const double c = std::cos(pose.theta), s = std::sin(pose.theta);
    const Point2D left{pose.x + c * fwd - s * lat, pose.y + s * fwd + c * lat};
    const Point2D right{pose.x + c * fwd + s * lat, pose.y + s * fwd - c * lat};
    const double k1 = computeCurvature(pose, left);
    const double k2 = computeCurvature(pose, right);
    EXPECT_NEAR(k1, -k2, 1e-9 * (1.0 + std::abs(k1)));
    EXPECT_LE(std::abs(k1), 2.0 / std::hypot(fwd, lat) + 1e-12);
  }
}

TEST(RemainingDistance, Examples) {
  const ReferencePath path = generateCornerPath(corner(45.0));
  EXPECT_NEAR(remainingDistanceToGoal(path, {0.0, 0.0, 0.0}), 6.0, 1e-9);
  EXPECT_NEAR(remainingDistanceToGoal(path, {path.back().x, path.back().y, 0.0}), 0.0, 1e-9);
  // Projected arc length 1.3 on the first leg: 6.0 - 1.3.
  EXPECT_NEAR(remainingDistanceToGoal(path, {1.3, 0.05, 0.0}), 4.7, 1e-9);
}

TEST(RemainingDistance, NonIncreasingAlongStraightPath) {
  const ReferencePath path = straight();
  double prev = remainingDistanceToGoal(path, {0.0, 0.0, 0.0});
  for (double x = 0.01; x <= 6.0; x += 0.01) {
    const double d = remainingDistanceToGoal(path, {x, 0.02, 0.0});
    EXPECT_LE(d, prev + 1e-12);
    prev = d;
  }
}

TEST(PathCsv, RoundTrip) {
  const ReferencePath path = generateCornerPath(corner(135.0, 0.07));
  std::stringstream ss;
  writePathCsv(path, ss);
  const ReferencePath back = readPathCsv(ss);
  ASSERT_EQ(back.size(), path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    EXPECT_EQ(back[i], path[i]);
  }
}

TEST(PathCsv, MalformedRow) {
  std::stringstream ss("x,y\n0,0\n1;2\n");
  EXPECT_THROW(readPathCsv(ss), ParameterError);
}

}  // namespace
}  // namespace dwpp
