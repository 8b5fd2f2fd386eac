#pragma once

#include <span>
#include <vector>

#include "gngshape/image.hpp"

namespace gngshape {

/// Tolerance applied to orientation predicates.
inline constexpr double kOrientationEps = 1e-9;

/// Twice the signed area of (o, a, b); positive for a counter-clockwise turn
/// in the coordinates as given.
double orientation(Point2 o, Point2 a, Point2 b);

/// Andrew's monotone chain. Returns the hull counter-clockwise (positive
/// orientation) without repeated or collinear vertices. Collinear input gives
/// its two extreme points, a single distinct point gives one vertex.
std::vector<Point2> convex_hull(std::span<const Point2> points);

/// Boundary-inclusive membership for a hull produced by convex_hull(),
/// including the 1- and 2-vertex degenerate cases.
bool inside_convex_hull(std::span<const Point2> hull, Point2 p, double eps = kOrientationEps);

}  // namespace gngshape
