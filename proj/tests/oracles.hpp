#pragma once

// Independent reference computations used only by the tests. None of these
// call into the code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "dwpp/types.hpp"

namespace dwpp::oracle {

// Distance from p to segment ab by dense parameter sampling followed by a
// golden-section refinement; avoids the projection formula.
inline double segmentDistance(const Point2D& a, const Point2D& b, const Point2D& p) {
  auto at = [&](double t) {
    return std::hypot(a.x + t * (b.x - a.x) - p.x, a.y + t * (b.y - a.y) - p.y);
  };
  double lo = 0.0, hi = 1.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (at(m1) < at(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min({at(0.0), at(1.0), at(0.5 * (lo + hi))});
}

struct NearestSegment {
  std::size_t segment;
  double distance;
};

// Exhaustive scan; equal distances (within tol) resolve to the lowest index.
inline NearestSegment nearestSegment(std::span<const Point2D> pts, const Point2D& p,
                                     double tol = 1e-9) {
  std::vector<double> d;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    d.push_back(segmentDistance(pts[i], pts[i + 1], p));
  }
  const double best = *std::min_element(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= best + tol) {
      return {i, best};
    }
  }
  return {0, best};
}

// Bracketing scan over waypoints after `segment`, measured from
// `from`; `from` itself is the predecessor of the first candidate.
inline std::ptrdiff_t lookaheadIndex(std::span<const Point2D> pts, std::size_t segment,
                                     const Point2D& from, double lookahead) {
  double prev = 0.0;
  for (std::size_t i = segment + 1; i < pts.size(); ++i) {
    const double d = std::sqrt((pts[i].x - from.x) * (pts[i].x - from.x) +
                               (pts[i].y - from.y) * (pts[i].y - from.y));
    if (prev < lookahead && d >= lookahead) {
      return static_cast<std::ptrdiff_t>(i);
    }
    prev = d;
  }
  return -1;
}

struct GridBest {
  double min_distance;
  double max_v_near_min;  // largest v among points within `near_tol` of min_distance
  double cell_v;
  double cell_omega;
};

// Brute-force n x n evaluation of the window against omega = kappa * v.
inline GridBest gridSearch(double v_lo, double v_hi, double w_lo, double w_hi, double kappa,
                           std::size_t n, double near_tol) {
  const double dv = (v_hi - v_lo) / static_cast<double>(n - 1);
  const double dw = (w_hi - w_lo) / static_cast<double>(n - 1);
  const double norm = std::sqrt(kappa * kappa + 1.0);
  std::vector<double> dist(n * n);
  std::vector<double> vs(n), ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = (i + 1 == n) ? v_hi : v_lo + dv * static_cast<double>(i);
    ws[i] = (i + 1 == n) ? w_hi : w_lo + dw * static_cast<double>(i);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = std::abs(kappa * vs[i] - ws[j]) / norm;
      best = std::min(best, dist[i * n + j]);
    }
  }
  double max_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i * n + j] <= best + near_tol) {
        max_v = std::max(max_v, vs[i]);
      }
    }
  }
  return {best, max_v, dv, dw};
}

// Forward-Euler unicycle integration with `substeps` substeps.
inline Pose2D eulerUnicycle(const Pose2D& start, double v, double omega, double dt,
                            int substeps) {
  Pose2D p = start;
  const double h = dt / substeps;
  for (int k = 0; k < substeps; ++k) {
    p.x += v * std::cos(p.theta) * h;
    p.y += v * std::sin(p.theta) * h;
    p.theta += omega * h;
  }
  return p;
}

// Midpoint-rule Euler: second order, used where a 1e-6 agreement is needed.
inline Pose2D midpointUnicycle(const Pose2D& start, double v, double omega, double dt,
                               int substeps) {
  Pose2D p = start;
  const double h = dt / substeps;
  for (int k = 0; k < substeps; ++k) {
    const double mid = p.theta + 0.5 * omega * h;
    p.x += v * std::cos(mid) * h;
    p.y += v * std::sin(mid) * h;
    p.theta += omega * h;
  }
  return p;
}

}  // namespace dwpp::oracle
