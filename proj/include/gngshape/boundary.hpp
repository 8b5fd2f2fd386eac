#pragma once

#include <cstddef>
#include <vector>

#include "gngshape/graph.hpp"

namespace gngshape {

/// Closed clockwise walk around the exterior face. Entries are graph
/// indices; a vertex may repeat when the graph has cut vertices.
struct BoundaryCycle {
  std::vector<std::size_t> walk;

  std::size_t size() const { return walk.size(); }
  std::vector<VertexId> ids(const Graph& g) const;
  /// Distinct graph indices on the walk, ascending.
  std::vector<std::size_t> distinct() const;
};

/// Clockwise rotation in [0, 2pi) taking direction a onto direction b, with
/// both vectors given in y-up (mathematical) coordinates. Throws ZeroVector.
double clockwise_angle(Point2 a, Point2 b);

/// Traces the outer face starting at the leftmost vertex (ties: smaller
/// image y, then smaller id). At each step the walk turns to the neighbor
/// with the smallest clockwise angle from the edge it arrived on; immediate
/// backtracking is only taken at degree-1 vertices. Stops when the opening
/// (v, u) pair reappears. Throws DegenerateGraph, NotConnected, ZeroVector.
BoundaryCycle extract_outer_boundary(const Graph& g);

}  // namespace gngshape
