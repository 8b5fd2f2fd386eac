#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gngshape/boundary.hpp"
#include "gngshape/error.hpp"
#include "gngshape/gng.hpp"
#include "oracles.hpp"

using namespace gngshape;

namespace {

std::vector<VertexId> walk_ids(const Graph& g) { return extract_outer_boundary(g).ids(g); }

Graph grid(int n) {
  std::vector<VertexRecord> vs;
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      VertexId id = y * n + x;
      vs.push_back({id, {double(x), double(y)}});
      if (x + 1 < n) es.emplace_back(id, id + 1);
      if (y + 1 < n) es.emplace_back(id, id + n);
    }
  return Graph::from_records(vs, es);
}

bool same_cyclic(std::vector<VertexId> a, const std::vector<VertexId>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a == b) return true;
    std::rotate(a.begin(), a.begin() + 1, a.end());
  }
  return a.empty();
}

ErrorCode code_of(const Graph& g) {
  try {
    extract_outer_boundary(g);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolation;
}

// Straight-line planar graph: thinned lattice edges plus one diagonal per
// cell, restricted to its largest component.
Graph random_planar(Rng& rng, int n) {
  std::vector<VertexRecord> vs;
  std::vector<std::pair<VertexId, VertexId>> es;
  auto keep = [&] { return rng.uniform() < 0.65; };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      VertexId id = y * n + x;
      vs.push_back({id, {double(x), double(y)}});
      if (x + 1 < n && keep()) es.emplace_back(id, id + 1);
      if (y + 1 < n && keep()) es.emplace_back(id, id + n);
      if (x + 1 < n && y + 1 < n && keep()) {
        if (rng.below(2)) es.emplace_back(id, id + n + 1);
        else es.emplace_back(id + 1, id + n);
      }
    }
  return largest_component(Graph::from_records(vs, es));
}

}  // namespace

TEST_CASE("clockwise angle") {
  using std::numbers::pi;
  CHECK(clockwise_angle({1, 0}, {0, -1}) == doctest::Approx(pi / 2));
  CHECK(clockwise_angle({1, 0}, {0, 1}) == doctest::Approx(3 * pi / 2));
  CHECK(clockwise_angle({1, 0}, {-1, 0}) == doctest::Approx(pi));
  CHECK(clockwise_angle({1, 0}, {2, 0}) == 0.0);
  CHECK_THROWS_AS(clockwise_angle({0, 0}, {1, 0}), Error);
}

TEST_CASE("unit square walks clockwise from the top-left corner") {
  auto g = Graph::from_records({{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(walk_ids(g) == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("square with a diagonal keeps the outer face") {
  auto g = Graph::from_records({{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  CHECK(walk_ids(g) == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("cut vertex appears twice") {
  // Two triangles sharing X.
  auto g = Graph::from_records({{0, {0, 0}}, {1, {0, 2}}, {2, {2, 1}}, {3, {4, 0}}, {4, {4, 2}}},
                               {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(walk_ids(g) == std::vector<VertexId>{0, 2, 3, 4, 2, 1});
}

TEST_CASE("path graph walks out and back") {
  auto g = Graph::from_records({{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}}, {{0, 1}, {1, 2}});
  CHECK(walk_ids(g) == std::vector<VertexId>{0, 1, 2, 1});
  auto two = Graph::from_records({{0, {0, 0}}, {1, {0, 3}}}, {{0, 1}});
  CHECK(walk_ids(two) == std::vector<VertexId>{0, 1});
}

TEST_CASE("grid perimeter") {
  auto g = grid(5);
  std::vector<VertexId> expected = {0};
  for (int x = 1; x <= 4; ++x) expected.push_back(x);
  for (int y = 1; y <= 4; ++y) expected.push_back(y * 5 + 4);
  for (int x = 3; x >= 0; --x) expected.push_back(20 + x);
  for (int y = 3; y >= 1; --y) expected.push_back(y * 5);
  CHECK(walk_ids(g) == expected);
  CHECK(extract_outer_boundary(g).distinct().size() == 16);
}

TEST_CASE("overlapping collinear edges still close") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = testing::random_connected_graph(rng, 2 + rng.below(11), 4, 0.3);
    auto c = extract_outer_boundary(g);
    CHECK(c.size() <= 2 * g.edge_count());
  }
}

TEST_CASE("boundary errors") {
  CHECK(code_of(Graph{}) == ErrorCode::DegenerateGraph);
  CHECK(code_of(Graph::from_records({{0, {0, 0}}}, {})) == ErrorCode::DegenerateGraph);
  CHECK(code_of(Graph::from_records({{0, {0, 0}}, {1, {1, 1}}}, {})) == ErrorCode::NotConnected);
  CHECK(code_of(Graph::from_records({{0, {0, 0}}, {1, {0, 0}}}, {{0, 1}})) == ErrorCode::ZeroVector);
}

TEST_CASE("walk is invariant under rotating the embedding") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_planar(rng, 2 + static_cast<int>(rng.below(6)));
    if (g.size() < 2) continue;
    auto c = extract_outer_boundary(g);
    auto ids = c.ids(g);
    // Consecutive walk entries are adjacent, including the closing step.
    for (std::size_t k = 0; k < c.size(); ++k)
      CHECK(g.has_edge(c.walk[k], c.walk[(k + 1) % c.size()]));
    // Leftmost vertices are always on the outer face.
    double minx = g.position(0).x;
    for (const auto& v : g.vertices()) minx = std::min(minx, v.position.x);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.position(i).x == minx) CHECK(std::count(ids.begin(), ids.end(), g.id(i)) >= 1);

    std::vector<VertexRecord> rotated;
    for (const auto& v : g.vertices()) rotated.push_back({v.id, {100.0 - v.position.y, v.position.x}});
    std::vector<std::pair<VertexId, VertexId>> es;
    for (auto [a, b] : g.edges()) es.emplace_back(g.id(a), g.id(b));
    auto r = Graph::from_records(rotated, es);
    CHECK(same_cyclic(ids, walk_ids(r)));

    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    std::vector<VertexRecord> turned;
    for (const auto& v : g.vertices())
      turned.push_back({v.id, {std::cos(theta) * v.position.x - std::sin(theta) * v.position.y,
                               std::sin(theta) * v.position.x + std::cos(theta) * v.position.y}});
    CHECK(same_cyclic(ids, walk_ids(Graph::from_records(turned, es))));
  }
}
