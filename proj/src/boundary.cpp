#include "gngshape/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gngshape/error.hpp"

namespace gngshape {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point2 y_up(Point2 image_vector) { return {image_vector.x, -image_vector.y}; }

// Clockwise sweep angle from the downward half-line, in (0, 2pi]: a
// neighbor straight below is reached last.
double sweep_angle(Point2 image_vector) {
  const double a = clockwise_angle(Point2{0.0, -1.0}, y_up(image_vector));
  return a == 0.0 ? kTwoPi : a;
}

}  // namespace

std::vector<VertexId> BoundaryCycle::ids(const Graph& g) const {
  std::vector<VertexId> out;
  out.reserve(walk.size());
  for (std::size_t i : walk) out.push_back(g.id(i));
  return out;
}

std::vector<std::size_t> BoundaryCycle::distinct() const {
  std::vector<std::size_t> out = walk;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double clockwise_angle(Point2 a, Point2 b) {
  if ((a.x == 0.0 && a.y == 0.0) || (b.x == 0.0 && b.y == 0.0))
    fail(ErrorCode::ZeroVector, "clockwise angle of a zero vector");
  const double cross = a.x * b.y - a.y * b.x;
  const double dot = a.x * b.x + a.y * b.y;
  double cw = -std::atan2(cross, dot);
  if (cw < 0.0) cw += kTwoPi;
  if (cw >= kTwoPi) cw = std::nextafter(kTwoPi, 0.0);
  return cw == 0.0 ? 0.0 : cw;  // normalizes -0.0
}

BoundaryCycle extract_outer_boundary(const Graph& g) {
  if (g.size() < 2) fail(ErrorCode::DegenerateGraph, "outer boundary needs at least 2 vertices");
  if (!g.connected()) fail(ErrorCode::NotConnected, "outer boundary needs a connected graph");

  std::size_t v = 0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Point2 p = g.position(i), best = g.position(v);
    if (p.x < best.x || (p.x == best.x && p.y < best.y)) v = i;
  }

  // Neighbors of each vertex in clockwise order, equal directions by index.
  // Arriving from `prev`, the walk leaves along the entry after it, which
  // is the smallest clockwise turn from the reversed incoming edge.
  std::vector<std::vector<std::size_t>> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> keyed;
    for (const auto& n : g.neighbors(i)) keyed.emplace_back(sweep_angle(g.position(n.index) - g.position(i)), n.index);
    std::sort(keyed.begin(), keyed.end());
    for (const auto& k : keyed) order[i].push_back(k.second);
  }

  const std::size_t u = order[v].front();
  BoundaryCycle cycle;
  cycle.walk = {v, u};
  const std::size_t limit = 2 * g.edge_count() + 2;
  while (true) {
    const std::size_t i = cycle.walk.back();
    const std::size_t prev = cycle.walk[cycle.walk.size() - 2];
    const auto& ring = order[i];
    const auto at = std::find(ring.begin(), ring.end(), prev);
    const std::size_t next = std::next(at) == ring.end() ? ring.front() : *std::next(at);
    cycle.walk.push_back(next);
    const std::size_t k = cycle.walk.size();
    if (cycle.walk[k - 2] == v && cycle.walk[k - 1] == u) break;
    if (k > limit) fail(ErrorCode::InvariantViolation, "boundary walk failed to close");
  }
  cycle.walk.resize(cycle.walk.size() - 2);
  return cycle;
}

}  // namespace gngshape
