#include "doctest.h"

#include "gngshape/boundary.hpp"
#include "gngshape/error.hpp"
#include "gngshape/features.hpp"
#include "gngshape/geometry.hpp"
#include "oracles.hpp"

using namespace gngshape;

namespace {

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

std::size_t position_of(const BoundaryCycle& c, const Graph& g, VertexId id) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (g.id(c.walk[k]) == id) return k;
  FAIL("vertex not on boundary");
  return 0;
}

}  // namespace

TEST_CASE("convex hull") {
  std::vector<Point2> pts = {{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}};
  auto h = convex_hull(pts);
  CHECK(h.size() == 4);
  CHECK(inside_convex_hull(h, {1, 1}));
  CHECK(inside_convex_hull(h, {2, 1}));
  CHECK_FALSE(inside_convex_hull(h, {2.1, 1}));
  std::vector<Point2> line = {{0, 0}, {1, 1}, {3, 3}};
  auto seg = convex_hull(line);
  CHECK(seg.size() == 2);
  CHECK(inside_convex_hull(seg, {2, 2}));
  CHECK_FALSE(inside_convex_hull(seg, {2, 2.5}));
  CHECK_FALSE(inside_convex_hull(seg, {4, 4}));
  std::vector<Point2> one = {{1, 1}, {1, 1}};
  CHECK(convex_hull(one).size() == 1);
}

TEST_CASE("bfs distances") {
  auto g = Graph::from_records({{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {9, 9}}}, {{0, 1}, {1, 2}});
  CHECK(bfs_distances(g, 0) == std::vector<int>{0, 1, 2, -1});
  CHECK_THROWS_AS(bfs_distances(g, 4), Error);
}

TEST_CASE("center vertex is nearest the centroid") {
  auto g = grid(5);
  CHECK(g.id(center_vertex(g)) == 12);
  auto line = Graph::from_records({{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {3, 0}}}, {{0, 1}, {1, 2}, {2, 3}});
  // Centroid 1.5 is equidistant from ids 1 and 2.
  CHECK(line.id(center_vertex(line)) == 1);
}

TEST_CASE("grid hull counts") {
  auto g = grid(5);
  auto c = extract_outer_boundary(g);
  DiskIndex disks(g, c);
  auto ch = convex_hull_area_profile(g, c, disks, 3);
  CHECK(ch(1, position_of(c, g, 1)) == 5);
  CHECK(ch(2, position_of(c, g, 1)) == 9);
  CHECK(ch(1, position_of(c, g, 2)) == 5);
  CHECK(ch(2, position_of(c, g, 2)) == 10);
  CHECK(ch(1, position_of(c, g, 10)) == 5);
  CHECK(ch(2, position_of(c, g, 10)) == 10);
}

TEST_CASE("grid perimeter and boundary counts") {
  auto g = grid(5);
  auto c = extract_outer_boundary(g);
  DiskIndex disks(g, c);
  auto p = perimeter_profile(g, c, disks, 3);
  auto b = boundary_in_disk_profile(g, c, disks, 3);
  auto d = distance_to_center_profile(g, c, 2);
  auto corner = position_of(c, g, 0);
  CHECK(p(0, corner) == 2);
  CHECK(p(1, corner) == 3);
  CHECK(p(2, corner) == 4);
  CHECK(b(0, corner) == 3);
  CHECK(b(1, corner) == 5);
  CHECK(d(0, corner) == 4);
  CHECK(d(1, corner) == 2);
  auto mid = position_of(c, g, 2);
  CHECK(p(0, mid) == 3);
  CHECK(b(2, mid) == 7);
}

TEST_CASE("feature matrix layout") {
  auto g = grid(4);
  auto c = extract_outer_boundary(g);
  ScaleConfig s{2, 3, 1, 2, 0.5};
  auto f = build_feature_matrix(g, c, s);
  CHECK(f.rows() == 8);
  CHECK(f.cols() == c.size());
  CHECK(f.boundary_ids == c.ids(g));
  DiskIndex disks(g, c);
  auto p = perimeter_profile(g, c, disks, 2);
  auto b = boundary_in_disk_profile(g, c, disks, 3);
  auto ch = convex_hull_area_profile(g, c, disks, 1);
  auto d = distance_to_center_profile(g, c, 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(f.at(0, i) == p(0, i));
    CHECK(f.at(1, i) == p(1, i));
    CHECK(f.at(4, i) == b(2, i));
    CHECK(f.at(5, i) == ch(0, i));
    CHECK(f.at(7, i) == d(1, i));
    CHECK(f.column(i)[6] == d(0, i));
  }
  CHECK_THROWS_AS(build_feature_matrix(g, c, ScaleConfig{0, 1, 1, 1, 0.5}), Error);
}

TEST_CASE("features agree with the distance-matrix oracle") {
  Rng rng(17);
  ScaleConfig s{4, 4, 4, 4, 0.5};
  for (int trial = 0; trial < 60; ++trial) {
    auto g = testing::random_connected_graph(rng, 2 + rng.below(11), 10, 0.25);
    auto c = extract_outer_boundary(g);
    auto f = build_feature_matrix(g, c, s);
    auto o = testing::oracle_features(g, c, s);
    for (int j = 0; j < 4; ++j)
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(f.at(j, i) == o.perimeter[j][i]);
        CHECK(f.at(4 + j, i) == o.boundary[j][i]);
        CHECK(f.at(8 + j, i) == o.hull[j][i]);
        CHECK(f.at(12 + j, i) == doctest::Approx(o.center[j][i]));
      }
  }
}

TEST_CASE("feature invariants on random graphs") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testing::random_connected_graph(rng, 3 + rng.below(20), 15, 0.15);
    auto c = extract_outer_boundary(g);
    DiskIndex disks(g, c);
    const int m = 6;
    auto p = perimeter_profile(g, c, disks, m);
    auto b = boundary_in_disk_profile(g, c, disks, m);
    auto ch = convex_hull_area_profile(g, c, disks, m);
    const double boundary_total = static_cast<double>(c.distinct().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      double disk = 1;
      for (int j = 0; j < m; ++j) {
        disk += p(j, i);
        CHECK(b(j, i) >= 1);
        CHECK(b(j, i) <= boundary_total);
        if (j > 0) CHECK(b(j, i) >= b(j - 1, i));
        CHECK(ch(j, i) >= b(j, i));
        CHECK(ch(j, i) <= disk);
      }
    }
    // Repeated walk positions share a column.
    auto f = build_feature_matrix(g, c, ScaleConfig{3, 3, 3, 3, 0.5});
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t k = i + 1; k < c.size(); ++k)
        if (c.walk[i] == c.walk[k])
          CHECK(std::equal(f.column(i).begin(), f.column(i).end(), f.column(k).begin()));
  }
}

TEST_CASE("scale selection") {
  auto g = grid(3);
  auto c = extract_outer_boundary(g);
  std::vector<ScaleSample> samples = {{&g, &c}};
  // Rows of 10/m: successive differences 5, 1.67, 0.83, 0.5, 0.33.
  ScaleFeature decaying = [](const ScaleSample& s, int m) {
    return std::vector<double>(s.cycle->size(), 10.0 / m);
  };
  auto sel = select_scales(decaying, samples, 0.5, 20);
  CHECK(sel.scale == 5);
  CHECK(sel.converged);
  sel = select_scales(decaying, samples, 0.5, 3);
  CHECK(sel.scale == 3);
  CHECK_FALSE(sel.converged);
  ScaleFeature flat = [](const ScaleSample& s, int) { return std::vector<double>(s.cycle->size(), 1.0); };
  CHECK(select_scales(flat, samples, 0.5).scale == 1);
  CHECK_THROWS_AS(select_scales(flat, std::span<const ScaleSample>{}, 0.5), Error);

  // Every profile is constant beyond the graph diameter (4 hops).
  std::vector<std::string> warnings;
  auto cfg = select_scale_config(samples, 0.5, 10, &warnings);
  CHECK(cfg.perimeter == 5);
  CHECK(cfg.boundary <= 5);
  CHECK(cfg.hull <= 5);
  CHECK(cfg.center <= 5);
  CHECK(warnings.empty());
  select_scale_config(samples, 0.5, 2, &warnings);
  CHECK_FALSE(warnings.empty());
}
