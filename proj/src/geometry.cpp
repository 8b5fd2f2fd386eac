#include "gngshape/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gngshape {

double orientation(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<Point2> hull;
  hull.reserve(2 * pts.size());
  for (const Point2& p : pts) {
    while (hull.size() >= 2 &&
           orientation(hull[hull.size() - 2], hull.back(), p) <= kOrientationEps)
      hull.pop_back();
    hull.push_back(p);
  }
  const std::size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (hull.size() >= lower &&
           orientation(hull[hull.size() - 2], hull.back(), *it) <= kOrientationEps)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  return hull;
}

bool inside_convex_hull(std::span<const Point2> hull, Point2 p, double eps) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return std::abs(hull[0].x - p.x) <= eps && std::abs(hull[0].y - p.y) <= eps;
  if (hull.size() == 2) {
    const Point2 a = hull[0], b = hull[1];
    if (std::abs(orientation(a, b, p)) > eps) return false;
    const double t = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    return t >= -eps && t <= squared_norm(b - a) + eps;
  }
  for (std::size_t k = 0; k < hull.size(); ++k)
    if (orientation(hull[k], hull[(k + 1) % hull.size()], p) < -eps) return false;
  return true;
}

}  // namespace gngshape
