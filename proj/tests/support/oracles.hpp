#pragma once

// Brute-force reference implementations used only by tests. They share no
// code path with the library routines they check.

#include <cstdint>
#include <utility>
#include <vector>

#include "gngshape/boundary.hpp"
#include "gngshape/features.hpp"
#include "gngshape/graph.hpp"
#include "gngshape/rng.hpp"

namespace gngshape::testing {

/// All-pairs hop distances from boolean powers of (A + I); -1 if unreachable.
std::vector<std::vector<int>> matrix_power_distances(const Graph& g);

/// Feature blocks recomputed from the distance table. Coordinates are
/// assumed integral so hull membership can be decided exactly.
struct OracleBlocks {
  std::vector<std::vector<double>> perimeter, boundary, hull, center;  // [scale-1][position]
};
OracleBlocks oracle_features(const Graph& g, const BoundaryCycle& cycle, const ScaleConfig& scales);

/// Exact point-in-convex-hull via Caratheodory: p is in conv(S) iff it lies
/// in a point, segment or triangle spanned by members of S.
bool in_hull_bruteforce(const std::vector<std::pair<long long, long long>>& s, std::pair<long long, long long> p);

/// Minimum gap-penalized cost over every order-preserving partial mapping.
double brute_force_match_cost(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                              double gap);

/// Connected graph on n vertices at distinct integer positions in a
/// span x span box: random spanning tree plus extra random edges.
Graph random_connected_graph(Rng& rng, std::size_t n, int span, double extra_edge_prob);

FeatureMatrix matrix_from_columns(const std::vector<std::vector<double>>& columns);

}  // namespace gngshape::testing
